#include "ssr/error.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace ssr {

namespace {

std::size_t read_env_budget() {
    if (const char* env = std::getenv("SSR_MAX_CELLS")) {
        try {
            return static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception&) {
        }
    }
    return 1'000'000;
}

std::atomic<std::size_t>& budget() {
    static std::atomic<std::size_t> value{read_env_budget()};
    return value;
}

}  // namespace

std::size_t max_cells() { return budget().load(); }

void set_max_cells(std::size_t n) { budget().store(n); }

}  // namespace ssr

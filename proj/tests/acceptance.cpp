// Acceptance run: the twelve criteria at the small size, one PASS/FAIL line each,
// with the time budget enforced.

#include <chrono>
#include <cstdio>

#include "ssr/suite.hpp"

int main() {
    ssr::SuiteConfig cfg;
    cfg.seed = 0;
    cfg.small = true;
    int failed = 0;
    for (const auto& p : ssr::properties()) {
        if (p.criterion == 0) continue;
        auto start = std::chrono::steady_clock::now();
        auto c = ssr::run_property(p, cfg);
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = s <= p.budget;
        bool ok = c.pass && in_time;
        failed += !ok;
        std::printf("%s [%02d] %s: %s (%.2f s of %.0f s)\n", ok ? "PASS" : "FAIL", p.criterion, p.name.c_str(), c.detail.c_str(), s,
                    p.budget);
        if (!c.pass) std::printf("       witness: %s\n", c.witness.c_str());
        if (!in_time) std::printf("       over the time budget\n");
        std::fflush(stdout);
    }
    std::printf("%d of 12 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}

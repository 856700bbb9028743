#ifndef SSR_SUITE_HPP
#define SSR_SUITE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ssr/report.hpp"

namespace ssr {

struct SuiteConfig {
    std::uint64_t seed = 0;
    bool small = false;  // full acceptance sizes; tiny otherwise
};

/// A seeded randomized property. `criterion` numbers the acceptance
/// criteria 1..12 (0 for additional invariants), `budget` is in seconds.
struct Property {
    std::string name;
    std::string anchor;
    int criterion = 0;
    double budget = 0;
    std::function<Check(const SuiteConfig&)> run;
};

/// Every property, in a fixed order.
const std::vector<Property>& properties();
/// The deliberately broken compatibility family, run as if it were a
/// property; it must fail with a witness.
Property mutation_control();

/// Runs one property; exceptions become failures with the message as witness.
Check run_property(const Property& p, const SuiteConfig& cfg);

/// Properties whose name contains `filter` (all when empty), plus the
/// mutation control when requested. Each check's detail is deterministic.
Report run_suite(const SuiteConfig& cfg, const std::string& filter, bool mutate);

}  // namespace ssr

#endif

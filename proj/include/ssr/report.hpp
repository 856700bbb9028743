#ifndef SSR_REPORT_HPP
#define SSR_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace ssr {

/// One verdict. A failing check always carries a witness.
struct Check {
    std::string name;
    bool pass = true;
    std::string witness;
    std::string detail;
    std::string anchor;  // suite properties only
};

/// Output of a CLI command. Everything except `seconds` is deterministic
/// for a fixed input and seed.
struct Report {
    std::string command;
    std::string trusted;  // e.g. "levels 0..3"
    std::vector<Check> checks;
    std::vector<std::string> lines;  // human-readable body (dumps, tables)
    nlohmann::json data = nlohmann::json::object();
    double seconds = 0;

    bool pass() const;
    /// 0 when every check passes, 1 otherwise.
    int exit_code() const;
    std::string human(bool timing = true) const;
    std::string json_text(bool timing = true) const;
};

}  // namespace ssr

#endif

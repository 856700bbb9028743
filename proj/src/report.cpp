#include "ssr/report.hpp"

#include <cstdio>
#include <sstream>

namespace ssr {

bool Report::pass() const {
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

int Report::exit_code() const { return pass() ? 0 : 1; }

std::string Report::human(bool timing) const {
    std::ostringstream out;
    out << "command: " << command << "\n";
    if (!trusted.empty()) out << "trusted: " << trusted << "\n";
    for (const auto& l : lines) out << l << "\n";
    for (const auto& c : checks) {
        out << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
        if (!c.anchor.empty()) out << "  [" << c.anchor << "]";
        if (!c.detail.empty()) out << "  " << c.detail;
        out << "\n";
        if (!c.witness.empty()) out << "      witness: " << c.witness << "\n";
    }
    out << "verdict: " << (pass() ? "PASS" : "FAIL") << "\n";
    if (timing) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "time: %.3f s\n", seconds);
        out << buf;
    }
    return out.str();
}

std::string Report::json_text(bool timing) const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["trusted"] = trusted;
    auto& cs = j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["verdict"] = c.pass ? "PASS" : "FAIL";
        if (!c.anchor.empty()) e["anchor"] = c.anchor;
        e["detail"] = c.detail;
        e["witness"] = c.witness;
        cs.push_back(e);
    }
    j["verdict"] = pass() ? "PASS" : "FAIL";
    j["data"] = data;
    if (timing) j["seconds"] = seconds;
    return j.dump(2) + "\n";
}

}  // namespace ssr

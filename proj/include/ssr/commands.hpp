#ifndef SSR_COMMANDS_HPP
#define SSR_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "ssr/instance.hpp"
#include "ssr/report.hpp"

namespace ssr {

struct CommandOptions {
    std::string echo;                   // the command line, for the report
    std::string presentation = "full";  // lambda | sigma | full
    bool verify = false;
    std::string kind = "kan";           // left | kan | trivial
    std::optional<int> max_dim;
};

/// The commands behind the ssr tool. Each returns a report whose checks
/// decide the exit status; ParseError, InvariantError and ResourceError
/// propagate to the caller.
Report cmd_rectify(const Instance& inst, const CommandOptions& opt);
Report cmd_check_fib(const Instance& inst, const CommandOptions& opt);
Report cmd_holim(const Instance& inst, const CommandOptions& opt);
Report cmd_gamma_verify(const Instance& inst, const CommandOptions& opt);
Report cmd_adjunction(const Instance& inst, const CommandOptions& opt);
Report cmd_homology(const Instance& inst, const CommandOptions& opt);

/// Exit status for an exception escaping a command: 2 parse, 3 invariant,
/// 4 resource.
int exit_code_for(const std::exception& e);

}  // namespace ssr

#endif

// ssr: batch interface to the rectification engine.
//
//   ssr rectify FILE [--presentation lambda|sigma|full] [--cap N] [--verify]
//   ssr check-fib FILE [--kind left|kan|trivial] [--max-dim N]
//   ssr holim|gamma-verify|adjunction FILE [--cap N]
//   ssr homology FILE [--max-dim N]
//   ssr suite [--seed S] [--size tiny|small] [--filter P] [--mutate]
//
// Exit codes: 0 pass, 1 property failure, 2 parse, 3 invariant, 4 resource/cap.

#include <CLI11.hpp>

#include <iostream>

#include "ssr/commands.hpp"
#include "ssr/error.hpp"
#include "ssr/suite.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Rectification, fibration checks and homotopy limits of finite diagrams of simplicial sets"};
    app.require_subcommand(1);
    bool as_json = false;
    bool no_timing = false;
    app.add_flag("--json", as_json, "print the report as JSON");
    app.add_flag("--no-timing", no_timing, "omit the timing line");

    std::string file;
    std::optional<int> cap;
    ssr::CommandOptions opt;
    auto instance_cmd = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("instance", file, "instance file (JSON)")->required();
        sub->add_option("--cap", cap, "dimension cap (overrides the file)");
        sub->add_flag("--json", as_json, "print the report as JSON");
        sub->add_flag("--no-timing", no_timing, "omit the timing line");
        return sub;
    };
    auto* rect = instance_cmd("rectify", "dump r*_C F and check it");
    rect->add_option("--presentation", opt.presentation, "lambda | sigma | full")->check(CLI::IsMember({"lambda", "sigma", "full"}));
    rect->add_flag("--verify", opt.verify, "cross-check all three presentations");
    auto* fib = instance_cmd("check-fib", "horn and boundary filling for a map, r*F -> N C or X -> point");
    fib->add_option("--kind", opt.kind, "left | kan | trivial")->check(CLI::IsMember({"left", "kan", "trivial"}));
    fib->add_option("--max-dim", opt.max_dim, "largest horn dimension");
    auto* hol = instance_cmd("holim", "sections of r*F over N C");
    auto* gam = instance_cmd("gamma-verify", "family consistency, strict commutativity and rep_fib round trip");
    auto* adj = instance_cmd("adjunction", "r_! and Kan-extension adjunctions as exact bijections");
    auto* hom = instance_cmd("homology", "integral homology of the simplicial sets in the instance");
    hom->add_option("--max-dim", opt.max_dim, "top degree");

    ssr::SuiteConfig cfg;
    std::string size = "tiny";
    std::string filter;
    bool mutate = false;
    auto* suite = app.add_subcommand("suite", "seeded property suite");
    suite->add_option("--seed", cfg.seed, "random seed");
    suite->add_option("--size", size, "tiny | small")->check(CLI::IsMember({"tiny", "small"}));
    suite->add_option("--filter", filter, "run properties whose name contains this");
    suite->add_flag("--mutate", mutate, "add the broken-family mutation control (must FAIL)");
    suite->add_flag("--json", as_json, "print the report as JSON");
    suite->add_flag("--no-timing", no_timing, "omit the timing line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::string echo = "ssr";
    for (int i = 1; i < argc; ++i) echo += std::string(" ") + argv[i];
    opt.echo = echo;
    try {
        ssr::Report report;
        if (suite->parsed()) {
            cfg.small = size == "small";
            report = ssr::run_suite(cfg, filter, mutate);
            report.command = echo;
        } else {
            auto inst = ssr::load_instance(file, cap);
            if (rect->parsed()) report = ssr::cmd_rectify(inst, opt);
            if (fib->parsed()) report = ssr::cmd_check_fib(inst, opt);
            if (hol->parsed()) report = ssr::cmd_holim(inst, opt);
            if (gam->parsed()) report = ssr::cmd_gamma_verify(inst, opt);
            if (adj->parsed()) report = ssr::cmd_adjunction(inst, opt);
            if (hom->parsed()) report = ssr::cmd_homology(inst, opt);
        }
        std::cout << (as_json ? report.json_text(!no_timing) : report.human(!no_timing));
        return report.exit_code();
    } catch (const std::exception& e) {
        int rc = ssr::exit_code_for(e);
        const char* kind = rc == 2 ? "parse error" : rc == 4 ? "resource limit" : "invariant violation";
        std::cerr << "ssr: " << kind << ": " << e.what() << "\n";
        return rc;
    }
}

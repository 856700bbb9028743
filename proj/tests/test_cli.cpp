#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sys/wait.h>

#include "ssr/commands.hpp"
#include "ssr/error.hpp"
#include "ssr/fibcheck.hpp"
#include "ssr/generators.hpp"
#include "ssr/instance.hpp"
#include "ssr/rectify.hpp"
#include "ssr/suite.hpp"

using namespace ssr;

namespace {

std::string example(const std::string& name) { return std::string(SSR_EXAMPLES) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / ("ssr_test_" + name);
    std::ofstream(p) << text;
    return p.string();
}

// Exit status of the ssr binary with the given arguments; output discarded.
int run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + SSR_BINARY + std::string(" ") + args + " > /dev/null 2>&1";
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

const Check* find_check(const Report& r, const std::string& name) {
    for (const auto& c : r.checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

}  // namespace

// ---- instance files ----------------------------------------------------------------

TEST(Instance, ParsesExplicitCategoryAndAliases) {
    auto inst = load_instance(example("constant_point_span.json"));
    EXPECT_EQ(inst.cap, 3);
    EXPECT_EQ(inst.cat->num_objects(), 3);
    EXPECT_EQ(inst.cat->num_morphisms(), 5);
    for (int c = 0; c < 3; ++c) EXPECT_EQ(inst.diagram->value(c).size(2), 1);
}

TEST(Instance, CapOverride) {
    auto inst = load_instance(example("boundary2.json"), 4);
    EXPECT_EQ(inst.sset->cap(), 4);
    // 3 vertices, 3 edges; degenerate simplices fill the higher levels
    EXPECT_EQ(inst.sset->size(1), 6);
    EXPECT_TRUE(inst.sset->nondegenerate_at(2).empty());
}

TEST(Instance, RoundTripThroughDump) {
    gen::Rng rng(71);
    for (int t = 0; t < 6; ++t) {
        auto C = gen::random_category(rng, 3);
        auto F = gen::random_diagram(rng, C, 2);
        auto doc = diagram_instance_json(F);
        auto back = parse_instance(doc.dump());
        ASSERT_EQ(back.cat->num_morphisms(), C->num_morphisms());
        for (int c = 0; c < C->num_objects(); ++c) {
            for (int n = 0; n <= 2; ++n) EXPECT_EQ(back.diagram->value(c).size(n), F->value(c).size(n));
        }
        // the rectifications agree in size, so the maps were carried over
        auto r0 = rectify(F, 2);
        auto r1 = rectify(back.diagram, 2);
        for (int n = 0; n <= 2; ++n) EXPECT_EQ(r1.total()->size(n), r0.total()->size(n));
        // dumping is idempotent up to names
        auto again = diagram_instance_json(parse_instance(diagram_instance_json(back.diagram).dump()).diagram);
        EXPECT_EQ(again["diagram"]["values"].size(), doc["diagram"]["values"].size());
    }
}

TEST(Instance, MalformedJsonIsAParseError) {
    EXPECT_THROW(parse_instance("{\"cap\": 2, "), ParseError);
    EXPECT_THROW(parse_instance("[1, 2]"), ParseError);
    EXPECT_THROW(parse_instance("{\"cap\": 2}"), ParseError);
}

TEST(Instance, UnknownNamesAreParseErrors) {
    const char* unknown_object = R"({"category": {"objects": ["a"]}, "diagram": {"values": {"b": [{"name": "p", "dim": 0}]}}})";
    EXPECT_THROW(parse_instance(unknown_object), ParseError);
    const char* unknown_face = R"({"sset": [{"name": "e", "dim": 1, "faces": ["x", "y"]}]})";
    EXPECT_THROW(parse_instance(unknown_face), ParseError);
    const char* missing_image = R"({"map": {"source": [{"name": "p", "dim": 0}], "target": [{"name": "q", "dim": 0}], "images": {}}})";
    EXPECT_THROW(parse_instance(missing_image), ParseError);
}

TEST(Instance, MalformedCompositionNamesTheTriple) {
    try {
        load_instance(example("bad_composition.json"));
        FAIL() << "accepted";
    } catch (const InvariantError& e) {
        EXPECT_NE(std::string(e.what()).find("(f, g, h)"), std::string::npos) << e.what();
    }
}

TEST(Instance, LawViolationsAreInvariantErrors) {
    // d0 d1 != d0 d0 on a 2-simplex with inconsistent faces
    const char* bad_faces = R"({"sset": [
        {"name": "a", "dim": 0}, {"name": "b", "dim": 0},
        {"name": "e", "dim": 1, "faces": ["b", "a"]},
        {"name": "t", "dim": 2, "faces": ["e", "e", "e"]}]})";
    EXPECT_THROW(parse_instance(bad_faces), InvariantError);
    // a "map" sending an edge to an edge with the wrong endpoints
    const char* bad_map = R"({"map": {
        "source": [{"name": "a", "dim": 0}, {"name": "b", "dim": 0}, {"name": "e", "dim": 1, "faces": ["b", "a"]}],
        "target": [{"name": "a", "dim": 0}, {"name": "b", "dim": 0}, {"name": "e", "dim": 1, "faces": ["b", "a"]}],
        "images": {"a": "b", "b": "a", "e": "e"}}})";
    EXPECT_THROW(parse_instance(bad_map), InvariantError);
    EXPECT_THROW(load_instance(example("not_natural.json")), InvariantError);
}

TEST(Instance, PresetsMatchTheEngine) {
    auto inst = parse_instance(R"({"cap": 3, "sset": {"preset": "horn", "n": 2, "k": 1}})");
    auto h = horn(2, 1, 3);
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(inst.sset->size(n), h->size(n));
}

// ---- commands ----------------------------------------------------------------------

TEST(Commands, ConstantPointDumpIsTheNerve) {
    auto inst = load_instance(example("constant_point_span.json"));
    auto r = cmd_rectify(inst, {});
    EXPECT_TRUE(r.pass());
    EXPECT_TRUE(r.data["projection_bijective"].get<bool>());
    auto N = nerve(inst.cat, 3);
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(r.data["levels"][static_cast<std::size_t>(n)].size(), static_cast<std::size_t>(N->size(n)));
}

TEST(Commands, TerminalIndexGivesTheValue) {
    auto inst = load_instance(example("terminal_boundary.json"));
    CommandOptions opt;
    opt.verify = true;
    auto r = cmd_rectify(inst, opt);
    EXPECT_TRUE(r.pass()) << r.human();
    ASSERT_NE(find_check(r, "terminal-index"), nullptr);
    ASSERT_NE(find_check(r, "lambda-presentation"), nullptr);
    auto b = boundary(2, 2);
    for (int n = 0; n <= 2; ++n) EXPECT_EQ(r.data["levels"][static_cast<std::size_t>(n)].size(), static_cast<std::size_t>(b->size(n)));
}

TEST(Commands, PresentationsDumpTheSameSizes) {
    auto inst = load_instance(example("point_over_interval.json"));
    CommandOptions a, b;
    a.presentation = "sigma";
    b.presentation = "lambda";
    auto ra = cmd_rectify(inst, a);
    auto rb = cmd_rectify(inst, b);
    for (int n = 0; n <= 3; ++n) {
        // one section per α: [n] -> [1]
        EXPECT_EQ(ra.data["levels"][static_cast<std::size_t>(n)].size(), static_cast<std::size_t>(n + 2));
        EXPECT_EQ(rb.data["levels"][static_cast<std::size_t>(n)].size(), static_cast<std::size_t>(n + 2));
    }
}

TEST(Commands, VertexInclusionIsLeftButNotKan) {
    auto inst = load_instance(example("vertex1_inclusion.json"));
    CommandOptions kan;
    auto r = cmd_check_fib(inst, kan);
    ASSERT_FALSE(r.pass());
    EXPECT_NE(r.checks[0].witness.find("Lambda^1_1"), std::string::npos) << r.checks[0].witness;
    CommandOptions left;
    left.kind = "left";
    EXPECT_TRUE(cmd_check_fib(inst, left).pass());
}

TEST(Commands, IdentityIsKan) {
    CommandOptions opt;
    opt.max_dim = 3;
    EXPECT_TRUE(cmd_check_fib(load_instance(example("identity_simplex.json")), opt).pass());
}

TEST(Commands, WeaklyConstantFixtureIsKan) {
    CommandOptions opt;
    opt.max_dim = 2;
    EXPECT_TRUE(cmd_check_fib(load_instance(example("weakly_constant_j2_to_point.json")), opt).pass());
    auto control = cmd_check_fib(load_instance(example("control_two_points_to_point.json")), opt);
    EXPECT_FALSE(control.pass());
    EXPECT_FALSE(control.checks[0].witness.empty());
}

TEST(Commands, HomologyOfBoundary) {
    auto r = cmd_homology(load_instance(example("boundary2.json")), {});
    ASSERT_EQ(r.lines.size(), 1u);
    EXPECT_EQ(r.lines[0], "X: H0=Z, H1=Z");
}

TEST(Commands, HolimOfDiscreteIsProduct) {
    auto inst = load_instance(example("discrete_two.json"));
    auto r = cmd_holim(inst, {});
    EXPECT_TRUE(r.pass());
    int want = inst.diagram->value(0).size(0) * inst.diagram->value(1).size(0);
    EXPECT_EQ(r.data["sizes"][0].get<int>(), want);
    EXPECT_EQ(want, 6);
}

TEST(Commands, GammaVerifyOnPointOverInterval) {
    auto r = cmd_gamma_verify(load_instance(example("point_over_interval.json")), {});
    EXPECT_TRUE(r.pass()) << r.human();
    EXPECT_EQ(r.checks.size(), 3u);
    // rep_fib is Δ¹
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(r.data["rep_fib_sizes"][static_cast<std::size_t>(n)].get<int>(), n + 2);
}

TEST(Commands, GammaVerifyRejectsNonKanValues) {
    // Δ¹ has every 1-horn filled; Λ²_0 needs cap 3 to be seen
    auto inst = parse_instance(R"({"cap": 3, "category": {"preset": "terminal"}, "diagram": {"values": {"*": {"preset": "simplex", "n": 1}}}})");
    EXPECT_THROW(cmd_gamma_verify(inst, {}), InvariantError);
}

TEST(Commands, AdjunctionWithKanExtensions) {
    auto r = cmd_adjunction(load_instance(example("swap_with_extension.json")), {});
    EXPECT_TRUE(r.pass()) << r.human();
    EXPECT_NE(find_check(r, "lan-adjunction"), nullptr);
    EXPECT_NE(find_check(r, "ran-adjunction"), nullptr);
}

TEST(Commands, MaxDimBeyondCapIsAResourceError) {
    CommandOptions opt;
    opt.max_dim = 5;
    EXPECT_THROW(cmd_check_fib(load_instance(example("identity_simplex.json")), opt), ResourceError);
    EXPECT_THROW(cmd_homology(load_instance(example("boundary2.json")), opt), ResourceError);
}

TEST(Commands, ReportsAreDeterministic) {
    auto inst = load_instance(example("weakly_constant_j2_to_point.json"));
    CommandOptions opt;
    opt.echo = "ssr rectify";
    opt.verify = true;
    auto a = cmd_rectify(inst, opt);
    auto b = cmd_rectify(load_instance(example("weakly_constant_j2_to_point.json")), opt);
    EXPECT_EQ(a.human(false), b.human(false));
    EXPECT_EQ(a.json_text(false), b.json_text(false));
}

// ---- suite -------------------------------------------------------------------------

TEST(Suite, TinyRunPasses) {
    auto r = run_suite({0, false}, "", false);
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
    EXPECT_EQ(r.checks.size(), properties().size());
}

TEST(Suite, EveryCriterionIsCovered) {
    std::vector<int> seen(13, 0);
    for (const auto& p : properties()) {
        if (p.criterion > 0) ++seen[static_cast<std::size_t>(p.criterion)];
        EXPECT_FALSE(p.anchor.empty()) << p.name;
    }
    for (int k = 1; k <= 12; ++k) EXPECT_EQ(seen[static_cast<std::size_t>(k)], 1) << k;
}

TEST(Suite, FilterSelectsChangeOfIndex) {
    auto r = run_suite({0, false}, "pullback", false);
    ASSERT_EQ(r.checks.size(), 1u);
    EXPECT_EQ(r.checks[0].name, "change-of-index-pullback");
}

TEST(Suite, MutationFailsWithWitness) {
    auto r = run_suite({0, false}, "no-such-property", true);
    ASSERT_EQ(r.checks.size(), 1u);
    EXPECT_FALSE(r.checks[0].pass);
    EXPECT_NE(r.checks[0].witness.find("A("), std::string::npos) << r.checks[0].witness;
    EXPECT_EQ(r.exit_code(), 1);
}

TEST(Suite, SameSeedSameReport) {
    auto a = run_suite({7, false}, "presentations", false);
    auto b = run_suite({7, false}, "presentations", false);
    EXPECT_EQ(a.json_text(false), b.json_text(false));
}

// ---- the binary ----------------------------------------------------------------------

TEST(Binary, ExitCodes) {
    EXPECT_EQ(run("rectify " + example("constant_point_span.json")), 0);
    EXPECT_EQ(run("check-fib " + example("vertex1_inclusion.json") + " --kind kan"), 1);
    EXPECT_EQ(run("rectify /nonexistent/instance.json"), 2);
    EXPECT_EQ(run("rectify " + temp_file("broken.json", "{\"cap\": ")), 2);
    EXPECT_EQ(run("frobnicate"), 2);
    EXPECT_EQ(run("rectify " + example("bad_composition.json")), 3);
    EXPECT_EQ(run("check-fib " + example("identity_simplex.json") + " --max-dim 9"), 4);
    EXPECT_EQ(run("rectify " + example("weakly_constant_j2_to_point.json"), "SSR_MAX_CELLS=20"), 4);
    EXPECT_EQ(run("suite --filter pullback"), 0);
    EXPECT_EQ(run("suite --filter pullback --mutate"), 1);
}

TEST(Binary, OutputIsDeterministic) {
    auto out1 = std::filesystem::temp_directory_path() / "ssr_test_out1.json";
    auto out2 = std::filesystem::temp_directory_path() / "ssr_test_out2.json";
    std::string args = std::string(SSR_BINARY) + " rectify " + example("point_over_interval.json") + " --verify --json --no-timing";
    ASSERT_EQ(std::system((args + " > " + out1.string()).c_str()), 0);
    ASSERT_EQ(std::system((args + " > " + out2.string()).c_str()), 0);
    std::ifstream a(out1), b(out2);
    std::string sa((std::istreambuf_iterator<char>(a)), {}), sb((std::istreambuf_iterator<char>(b)), {});
    EXPECT_FALSE(sa.empty());
    EXPECT_EQ(sa, sb);
    auto j = nlohmann::json::parse(sa);
    EXPECT_EQ(j["verdict"], "PASS");
    EXPECT_FALSE(j.contains("seconds"));
}

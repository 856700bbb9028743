#include "ssr/suite.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "ssr/classify.hpp"
#include "ssr/error.hpp"
#include "ssr/fibcheck.hpp"
#include "ssr/generators.hpp"
#include "ssr/hoalg.hpp"
#include "ssr/rectify.hpp"

namespace ssr {

namespace {

std::size_t Z(int x) { return static_cast<std::size_t>(x); }

// Collects the first failure as witness and counts the rest.
struct Tally {
    Check c;
    int failures = 0;
    void fail(const std::string& w) {
        if (c.pass) c.witness = w;
        c.pass = false;
        ++failures;
    }
    void expect(bool ok, const std::function<std::string()>& w) {
        if (!ok) fail(w());
    }
    void expect_none(const std::optional<std::string>& e, const std::string& where) {
        if (e) fail(where + ": " + *e);
    }
    Check done(std::string detail) {
        if (failures > 1) detail += " (" + std::to_string(failures) + " failures)";
        c.detail = std::move(detail);
        return c;
    }
};

// Independent streams per property so filtering does not change outcomes.
gen::Rng rng_for(const SuiteConfig& cfg, const std::string& name) {
    std::uint64_t h = 1469598103934665603ull;
    for (char ch : name) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ull;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    return gen::Rng(seq);
}

int count(const SuiteConfig& cfg, int small, int tiny) { return cfg.small ? small : tiny; }

std::string inst(int t, const CatPtr& c) { return "instance " + std::to_string(t) + " on " + c->name(); }

// A category with at most 3 objects and 8 morphisms.
CatPtr bounded_category(gen::Rng& rng) {
    for (;;) {
        auto c = gen::random_category(rng, 3);
        if (c->num_morphisms() <= 8) return c;
    }
}

int nondegenerate_count(const SSet& x) {
    int k = 0;
    for (int n = 0; n <= x.cap(); ++n) k += static_cast<int>(x.nondegenerate_at(n).size());
    return k;
}

// Values with at most three nondegenerate simplices.
DiagramPtr small_diagram(gen::Rng& rng, const CatPtr& c, int cap) {
    if (gen::is_poset(*c)) return gen::random_interval_diagram(rng, c, cap);
    for (int tries = 0; tries < 64; ++tries) {
        auto f = gen::random_diagram(rng, c, cap);
        bool ok = true;
        for (const auto& x : f->at) ok = ok && nondegenerate_count(*x) <= 3;
        if (ok) return f;
    }
    return constant_diagram(c, point(cap));
}

// ---- oracles ------------------------------------------------------------------------

// |(QF)_n(c)| as the number of chains c0 -> ... -> c(n+1) = c weighted by |F_n(c0)|.
long long chain_count(const DiagramPtr& f, int c, int n) {
    const auto& C = *f->cat;
    std::function<long long(int, int)> go = [&](int obj, int left) -> long long {
        if (left == 0) return f->value(obj).size(n);
        long long s = 0;
        for (int m = 0; m < C.num_morphisms(); ++m) {
            if (C.tgt(m) == obj) s += go(C.src(m), left - 1);
        }
        return s;
    };
    return go(c, n + 1);
}

// ---- acceptance criteria ------------------------------------------------------------

Check three_presentations(const SuiteConfig& cfg) {
    auto rng = rng_for(cfg, "three-presentations");
    Tally t;
    const int N = count(cfg, 20, 4);
    long long simplices = 0;
    for (int i = 0; i < N; ++i) {
        auto C = bounded_category(rng);
        auto F = small_diagram(rng, C, 3);
        auto r = rectify(F, 3);
        for (int n = 0; n <= 3; ++n) simplices += r.total()->size(n);
        auto check = [&](const Presentation& p, const std::string& which) {
            std::string w = inst(i, C) + ", " + which;
            t.expect_none(check_presheaf_laws(*p.slice.total), w);
            t.expect_none(p.to_minimal.check(), w + " -> minimal");
            t.expect_none(p.from_minimal.check(), w + " <- minimal");
            t.expect(p.to_minimal.bijective(), [&] { return w + ": comparison is not bijective"; });
            t.expect(p.from_minimal.then(p.to_minimal) == SimplicialMap::identity(r.total()),
                     [&] { return w + ": comparisons are not inverse"; });
            t.expect(p.to_minimal.then(r.slice.proj) == p.slice.proj, [&] { return w + ": comparison is not over N C"; });
        };
        check(rectify_sigma(r), "sigma");
        check(rectify_lambda(r), "lambda");
    }
    return t.done(std::to_string(N) + " diagrams, cap 3, " + std::to_string(simplices) + " simplices matched twice");
}

Check change_of_index_pullback(const SuiteConfig& cfg) {
    auto rng = rng_for(cfg, "change-of-index-pullback");
    Tally t;
    const int N = count(cfg, 10, 3);
    long long simplices = 0;
    for (int i = 0; i < N; ++i) {
        auto C = bounded_category(rng);
        auto F = small_diagram(rng, C, 3);
        auto psi = i % 2 == 0 ? gen::random_arrow(rng, C) : gen::random_functor(rng, gen::random_category(rng, 2), C);
        auto c = change_of_index(psi, rectify(F, 3));
        t.expect_none(c.verify(), inst(i, C) + " along " + psi.src->name() + " -> " + C->name());
        for (int n = 0; n <= 3; ++n) simplices += c.pullback.object->size(n);
    }
    return t.done(std::to_string(N) + " squares, cap 3, " + std::to_string(simplices) + " pullback simplices");
}

Check rshriek_adjunction(const SuiteConfig& cfg) {
    auto rng = rng_for(cfg, "rshriek-adjunction");
    Tally t;
    const int N = count(cfg, 10, 3);
    std::size_t maps = 0;
    for (int i = 0; i < N; ++i) {
        auto C = gen::random_category(rng, 2);
        auto Nc = nerve(C, 2);
        auto A = gen::random_subobject(rng, Nc, 2, 3);
        auto F = gen::random_diagram(rng, C, 2);
        auto rf = rectify(F, 2, Nc);
        auto rs = r_shriek(A, C, 2);
        auto left = all_slice_maps(A.proj, rf.slice.proj);
        auto right = all_nat_trans(rs.diagram, F);
        std::string w = inst(i, C);
        t.expect(left.size() == right.size(), [&] {
            return w + ": " + std::to_string(left.size()) + " maps over N C but " + std::to_string(right.size()) + " out of r_!A";
        });
        maps += left.size();
        for (std::size_t k = 0; k < left.size(); ++k) {
            auto flat = adjunct_flat(rs, rf, left[k]);
            t.expect_none(flat.check(), w + ", adjunct of map " + std::to_string(k));
            t.expect(adjunct_sharp(rs, rf, flat) == left[k], [&] { return w + ": sharp(flat(phi)) != phi for map " + std::to_string(k); });
        }
        for (std::size_t k = 0; k < right.size(); ++k) {
            t.expect(adjunct_flat(rs, rf, adjunct_sharp(rs, rf, right[k])) == right[k],
                     [&] { return w + ": flat(sharp(psi)) != psi for transformation " + std::to_string(k); });
        }
        // naturality in A along the inclusion of the subobject generated by a vertex
        auto A2 = gen::generated_subobject(Nc, {{0, A.proj(0, 0)}});
        auto k = SimplicialMap::from_fn(A2.total, A.total, [&](int n, int s) { return A.total->index_of(n, A2.total->key(n, s)); });
        auto rs2 = r_shriek(A2, C, 2);
        auto rk = r_shriek_map(k, rs2, rs);
        t.expect_none(rk.check(), w + ", r_!(k)");
        // naturality in F along automorphisms of F
        auto autos = all_nat_trans(F, F, 4);
        for (const auto& phi : left) {
            auto flat = adjunct_flat(rs, rf, phi);
            t.expect(adjunct_flat(rs2, rf, k.then(phi)) == rk.then(flat), [&] { return w + ": adjunction not natural in A"; });
            for (const auto& g : autos) {
                auto gs = rectify_map(g, rf, rf);
                t.expect(adjunct_flat(rs, rf, phi.then(gs)) == flat.then(g), [&] { return w + ": adjunction not natural in F"; });
            }
        }
    }
    return t.done(std::to_string(N) + " instances, cap 2, " + std::to_string(maps) + " maps in bijection, naturality in A and F");
}

Check weakly_constant_kan(const SuiteConfig&) {
    Tally t;
    int wc = 0;
    int controls = 0;
    std::string control_witness;
    for (const auto& fx : gen::kan_fixtures(3)) {
        auto r = rectify(fx.diagram, 3);
        auto v = is_kan_fibration(r.slice.proj, 2);
        if (fx.weakly_constant) {
            ++wc;
            t.expect(v.ok, [&] { return fx.name + ": " + (v.witness ? v.witness->describe(*r.total(), *r.nerve) : "no witness"); });
        } else {
            ++controls;
            t.expect(!v.ok && v.witness.has_value(), [&] { return fx.name + ": control passed"; });
            if (v.witness) control_witness = v.witness->describe(*r.total(), *r.nerve);
        }
    }
    t.expect(wc == 5 && controls == 1, [&] { return "expected 5 fixtures and 1 control"; });
    return t.done(std::to_string(wc) + " fixtures Kan at N=2; control rejected by " + control_witness);
}

Check classification(const SuiteConfig& cfg) {
    auto rng = rng_for(cfg, "classification");
    Tally t;
    const int N = count(cfg, 10, 3);
    long long simplices = 0;
    for (int i = 0; i < N; ++i) {
        auto C = gen::random_category(rng, 2);
        auto cl = classify_rectification(gen::random_diagram(rng, C, 3), 3);
        t.expect_none(cl.verify(), inst(i, C));
        for (int n = 0; n <= 3; ++n) simplices += cl.rep.total->size(n);
    }
    return t.done(std::to_string(N) + " instances, cap 3, " + std::to_string(simplices) + " sections matched");
}

Check strict_commutativity(const SuiteConfig& cfg) {
    auto rng = rng_for(cfg, "strict-commutativity");
    Tally t;
    const int N = count(cfg, 10, 3);
    for (int i = 0; i < N; ++i) {
        auto P = product_category(linear_order(i % 2), gen::random_index(rng, 2));
        auto F = gen::random_kan_diagram(rng, P, 2);
        auto G = gamma_C(F, 2);
        t.expect_none(G.family.check_consistency(), inst(i, P) + ", consistency");
        t.expect_none(compare_families(G.family, gamma_after_nerve(F, 2)), inst(i, P));
    }
    return t.done(std::to_string(N) + " instances on [n] x C, cap 2, families equal literally");
}

Check lift_phi(const SuiteConfig& cfg) {
    auto rng = rng_for(cfg, "lift-phi");
    Tally t;
    const int N = count(cfg, 10, 4);
    auto T = terminal_category();
    auto d0 = standard_simplex(0, 3);
    auto d1 = standard_simplex(1, 3);
    {
        auto F = constant_diagram(T, d0);
        auto phi = construct_lift_phi(NatTrans::identity(F), 3);
        t.expect_none(phi.verify(), "identity on a point");
        t.expect(phi.phi1 == SimplicialMap::identity(phi.source.total()), [] { return "identity on a point: phi1 is not the identity"; });
    }
    {
        NatTrans f{constant_diagram(T, d0), constant_diagram(T, d1), {yoneda(d1, 0, 1, d0)}};
        auto phi = construct_lift_phi(f, 3);
        t.expect_none(phi.verify(), "vertex into the interval");
        t.expect(phi.fibre1.decode(0, phi.phi1(0, 0)).z[0] == 1, [] { return "vertex into the interval: wrong image vertex"; });
    }
    for (int i = 2; i < N; ++i) {
        auto C = gen::random_index(rng, 2);
        std::uniform_int_distribution<int> g(1, 3);
        auto q = gen::random_quotients(rng, C, g(rng));
        auto coarse = gen::random_coarsening(rng, C, q);
        auto F = gen::quotient_diagram(C, q, 3);
        auto G = gen::quotient_diagram(C, coarse, 3);
        auto phi = construct_lift_phi(gen::quotient_map(F, q, G, coarse), 3);
        t.expect_none(phi.verify(), inst(i, C));
    }
    return t.done(std::to_string(N) + " transformations (2 trivial), cap 3, phi1 = r*(f)");
}

Check cofinality(const SuiteConfig&) {
    Tally t;
    int commas = 0;
    for (int n = 0; n <= 3; ++n) {
        auto L = lambda_category(n);
        for (int j = 0; j <= n; ++j) {
            for (int i = 0; i <= j; ++i) {
                auto comma = slice_over(L.inclusion, sigma_object(n, i, j));
                auto h = homology(*nerve(comma.cat, 3), 2);
                ++commas;
                t.expect(h.is_point(), [&] {
                    return "n=" + std::to_string(n) + " [" + std::to_string(i) + "," + std::to_string(j) + "]: " + h.str();
                });
            }
        }
    }
    return t.done(std::to_string(commas) + " comma nerves, H0..H2 of a point");
}

Check holim_section_space(const SuiteConfig& cfg) {
    auto rng = rng_for(cfg, "holim-section-space");
    Tally t;
    {
        auto C = discrete_category(2);
        auto X = gen::codiscrete_nerve(2, 3);
        auto Y = from_generators("Y", 3, {{"a", 0, {}}, {"b", 0, {}}, {"e", 1, {{0, DeltaMap(0, {0})}, {1, DeltaMap(0, {0})}}}});
        auto F = make_diagram(C, {X, Y}, {SimplicialMap::identity(X), SimplicialMap::identity(Y)});
        auto h = holim(F, 3);
        auto P = product(X, Y);
        for (int n = 0; n <= 3; ++n) {
            t.expect(h.space->size(n) == P->size(n), [&] {
                return "discrete: level " + std::to_string(n) + " has " + std::to_string(h.space->size(n)) + ", product has " +
                       std::to_string(P->size(n));
            });
        }
        t.expect(h.space->size(0) == X->size(0) * Y->size(0), [] { return "discrete: level 0 is not |X0|.|Y0|"; });
    }
    const int N = count(cfg, 4, 2);
    for (int i = 0; i < N; ++i) {
        auto C = gen::random_category(rng, 2);
        auto h = holim(constant_diagram(C, point(2)), 2);
        for (int n = 0; n <= 2; ++n) {
            t.expect(h.space->size(n) == 1, [&] { return "constant point on " + C->name() + ": level " + std::to_string(n) + " is not a point"; });
        }
    }
    int pb_count = 0;
    {
        auto C = cospan_category();
        auto X = gen::discrete_set(3, 2);
        auto Y = gen::discrete_set(2, 2);
        auto W = gen::discrete_set(2, 2);
        auto f = gen::object_function(X, Y, {0, 0, 1});
        auto g = gen::object_function(W, Y, {0, 1});
        std::vector<SSetPtr> at{X, Y, W};
        std::vector<SimplicialMap> along;
        for (int m = 0; m < C->num_morphisms(); ++m) {
            if (C->is_identity(m)) {
                along.push_back(SimplicialMap::identity(at[Z(C->src(m))]));
            } else {
                along.push_back(C->src(m) == 0 ? f : g);
            }
        }
        auto F = make_diagram(C, at, along);
        auto pb = pullback(f, g);
        pb_count = pb.object->size(0);
        int h0 = holim(F, 1).space->size(0);
        t.expect(h0 == pb_count, [&] { return "strict pullback: " + std::to_string(h0) + " sections vs " + std::to_string(pb_count); });
    }
    return t.done("discrete = product at cap 3; " + std::to_string(N) + " constant points; pullback level 0 = " + std::to_string(pb_count));
}

Check dugger_formula(const SuiteConfig& cfg) {
    auto rng = rng_for(cfg, "dugger-formula");
    Tally t;
    const int N = count(cfg, 10, 3);
    for (int i = 0; i < N; ++i) {
        auto C = gen::random_category(rng, 2);
        auto F = gen::random_diagram(rng, C, 2);
        auto q = dugger_Q(F);
        t.expect_none(q.q.check(), inst(i, C) + ", q");
        for (int c = 0; c < C->num_objects(); ++c) {
            for (int n = 0; n <= 2; ++n) {
                long long want = chain_count(F, c, n);
                t.expect(q.qf->value(c).size(n) == want, [&] {
                    return inst(i, C) + ": |(QF)_" + std::to_string(n) + "(" + C->object_name(c) + ")| = " +
                           std::to_string(q.qf->value(c).size(n)) + ", chains give " + std::to_string(want);
                });
            }
            t.expect(q.q.comp[Z(c)].surjective(), [&] { return inst(i, C) + ": q not surjective at " + C->object_name(c); });
        }
    }
    int fixtures = 0;
    for (const auto& fx : gen::kan_fixtures(2)) {
        auto q = dugger_Q(fx.diagram);
        for (int c = 0; c < fx.diagram->cat->num_objects(); ++c) {
            auto w = weq_evidence(q.q.comp[Z(c)], 1);
            t.expect(w.verdict == WeqVerdict::Consistent, [&] { return fx.name + ": q refuted: " + w.reason; });
        }
        ++fixtures;
    }
    return t.done(std::to_string(N) + " instances counted exactly; q consistent with a weq on " + std::to_string(fixtures) + " fixtures");
}

Check kan_extension_adjunctions(const SuiteConfig& cfg) {
    auto rng = rng_for(cfg, "kan-extension-adjunctions");
    Tally t;
    const int N = count(cfg, 10, 3);
    std::size_t maps = 0;
    for (int i = 0; i < N; ++i) {
        auto C = gen::random_category(rng, 2);
        auto D = gen::random_category(rng, 2);
        auto pi = gen::random_functor(rng, C, D);
        auto F = gen::random_diagram(rng, C, 2);
        auto Y = gen::random_diagram(rng, D, 2);
        auto l = check_lan_adjunction(pi, lan(pi, F), Y);
        auto r = check_ran_adjunction(pi, ran(pi, F), Y);
        std::string w = inst(i, C) + " -> " + D->name();
        t.expect(l.bijective, [&] { return w + ", Lan: " + l.witness; });
        t.expect(r.bijective, [&] { return w + ", Ran: " + r.witness; });
        maps += l.left + r.left;
    }
    return t.done(std::to_string(N) + " functors, cap 2, " + std::to_string(maps) + " maps in bijection");
}

// The family of r*F over [1] with A(e; d0) replaced by A(e; d1) on the edge.
ClassifyingFamily broken_family() {
    auto F = gen::kan_fixtures(2)[1].diagram;
    auto r = rectify(F, 2);
    auto fam = family_from_fibration(r.slice, canonical_chooser(r.slice));
    auto& A = fam.at[1][Z(r.nerve->nondegenerate_at(1)[0])];
    A.chosen.at(DeltaMap::coface(1, 0)) = A.chosen.at(DeltaMap::coface(1, 1));
    return fam;
}

Check negative_controls(const SuiteConfig&) {
    Tally t;
    std::vector<std::string> seen;
    // broken compatibility family
    {
        auto e = broken_family().check_consistency();
        t.expect(e.has_value() && e->find("A(") != std::string::npos, [] { return "broken family accepted"; });
        if (e) seen.push_back("family: " + *e);
    }
    // non-cartesian chosen square: doubled over the vertex 1
    {
        auto F = constant_diagram(linear_order(1), standard_simplex(0, 2));
        auto r = rectify(F, 2);
        auto canonical = canonical_chooser(r.slice);
        auto chooser = [&](int n, int a) {
            auto sq = canonical(n, a);
            if (n != 0 || a != 1) return sq;
            auto twice = coproduct(sq.object, sq.object);
            auto fold = [&](const SimplicialMap& m) {
                return SimplicialMap::from_fn(twice, m.target(), [&](int k, int y) { return m(k, twice->key(k, y)[1]); });
            };
            return Square{twice, fold(sq.fib), fold(sq.top)};
        };
        std::string msg;
        try {
            family_from_fibration(r.slice, chooser);
        } catch (const InvariantError& e) {
            msg = e.what();
        }
        t.expect(msg.find("not cartesian") != std::string::npos && msg.find(r.nerve->describe(0, 1)) != std::string::npos,
                 [&] { return "non-cartesian square: " + (msg.empty() ? std::string("accepted") : msg); });
        if (!msg.empty()) seen.push_back("square: " + msg);
    }
    // non-natural f
    {
        auto C = linear_order(1);
        auto two = gen::discrete_set(2, 2);
        auto F = constant_diagram(C, two);
        NatTrans f{F, F, {SimplicialMap::identity(two), gen::object_function(two, two, {1, 0})}};
        std::string msg;
        try {
            construct_lift_phi(f, 2);
        } catch (const InvariantError& e) {
            msg = e.what();
        }
        t.expect(msg.find("not natural") != std::string::npos, [&] { return "non-natural f: " + (msg.empty() ? std::string("accepted") : msg); });
        if (!msg.empty()) seen.push_back("f: " + msg);
    }
    std::string detail = "3 mutations rejected";
    for (const auto& s : seen) detail += "; " + s;
    return t.done(detail);
}

// ---- further invariants ---------------------------------------------------------------

Check monomorphisms(const SuiteConfig& cfg) {
    auto rng = rng_for(cfg, "rectify-monomorphisms");
    Tally t;
    const int N = count(cfg, 10, 3);
    for (int i = 0; i < N; ++i) {
        auto inj = gen::random_injection(rng, gen::random_index(rng, 3), 3);
        auto rs = rectify(inj.source, 3);
        auto rt = rectify(inj.target, 3, rs.nerve);
        auto m = rectify_map(inj.map, rs, rt);
        t.expect_none(m.check(), inst(i, inj.source->cat));
        t.expect(m.injective(), [&] { return inst(i, inj.source->cat) + ": r*(f) not injective"; });
    }
    return t.done(std::to_string(N) + " objectwise injections stay injective");
}

Check constant_point(const SuiteConfig& cfg) {
    auto rng = rng_for(cfg, "rectify-constant-point");
    Tally t;
    const int N = count(cfg, 6, 3);
    for (int i = 0; i < N; ++i) {
        auto C = gen::random_category(rng, 3);
        auto r = rectify(constant_diagram(C, point(3)), 3);
        t.expect(r.slice.proj.bijective(), [&] { return inst(i, C) + ": r*(point) -> N C not bijective"; });
    }
    return t.done(std::to_string(N) + " categories, r*(point) = N C");
}

Check matching(const SuiteConfig& cfg) {
    auto rng = rng_for(cfg, "rectify-matching");
    Tally t;
    const int N = count(cfg, 10, 3);
    for (int i = 0; i < N; ++i) {
        auto C = bounded_category(rng);
        auto r = rectify(small_diagram(rng, C, 3), 3);
        t.expect_none(check_matching(r), inst(i, C));
        t.expect_none(check_presheaf_laws(*r.total()), inst(i, C));
        t.expect_none(r.slice.proj.check(), inst(i, C));
    }
    return t.done(std::to_string(N) + " rectifications satisfy matching and presheaf laws");
}

Check gamma_simplicial(const SuiteConfig& cfg) {
    auto rng = rng_for(cfg, "gamma-simplicial-map");
    Tally t;
    const int N = count(cfg, 5, 2);
    for (int i = 0; i < N; ++i) {
        auto C = linear_order(1 + i % 2);
        t.expect_none(check_gamma_simplicial(gen::random_kan_diagram(rng, C, 2), 2), inst(i, C));
    }
    return t.done(std::to_string(N) + " chains, gamma(u*X) = chosen pullback");
}

Check family_restriction(const SuiteConfig& cfg) {
    auto rng = rng_for(cfg, "family-restriction");
    Tally t;
    auto F = gen::random_kan_diagram(rng, linear_order(2), 2);
    auto G = gamma_C(on_point_times(F), 2);
    const auto& L = G.family.base;
    t.expect_none(compare_families(family_pullback(SimplicialMap::identity(L), G.family), G.family), "identity");
    const int N = count(cfg, 6, 2);
    auto d2 = standard_simplex(2, 2);
    auto d1 = standard_simplex(1, 2);
    for (int i = 0; i < N; ++i) {
        auto g = yoneda(L, 2, std::uniform_int_distribution<int>(0, L->size(2) - 1)(rng), d2);
        auto f = yoneda(d2, 1, d2->face(2, std::uniform_int_distribution<int>(0, 2)(rng), d2->size(2) - 1), d1);
        t.expect_none(compare_families(family_pullback(f.then(g), G.family), family_pullback(f, family_pullback(g, G.family))),
                      "composite " + std::to_string(i));
    }
    return t.done("identity and " + std::to_string(N) + " composites restrict strictly");
}

Check weakly_constant_rep_fib(const SuiteConfig&) {
    Tally t;
    int k = 0;
    for (const auto& fx : gen::kan_fixtures(3)) {
        if (!fx.weakly_constant) continue;
        auto cl = classify_rectification(fx.diagram, 3);
        auto v = is_kan_fibration(cl.rep.proj, 2);
        t.expect(v.ok, [&] { return fx.name + ": " + (v.witness ? v.witness->describe(*cl.rep.total, *cl.rep.base()) : ""); });
        ++k;
    }
    return t.done(std::to_string(k) + " fixtures, rep_fib Kan at N=2");
}

Check currying(const SuiteConfig& cfg) {
    auto rng = rng_for(cfg, "currying");
    Tally t;
    const int N = count(cfg, 6, 2);
    for (int i = 0; i < N; ++i) {
        auto C = gen::random_category(rng, 2);
        auto E = gen::random_diagram(rng, C, 1);
        auto F = gen::random_diagram(rng, C, 1);
        auto G = gen::random_diagram(rng, C, 1);
        auto rep = check_currying(E, internal_hom(F, G, 1));
        t.expect(rep.bijective, [&] { return inst(i, C) + ": " + rep.witness; });
    }
    return t.done(std::to_string(N) + " instances, Hom(E, G^F) = Hom(E x F, G)");
}

Check mapping_space(const SuiteConfig& cfg) {
    auto rng = rng_for(cfg, "mapping-space-step");
    Tally t;
    const int N = count(cfg, 4, 2);
    for (int i = 0; i < N; ++i) {
        auto C = gen::random_category(rng, 2);
        auto F = gen::random_diagram(rng, C, 2);
        auto G = gen::random_diagram(rng, C, 2);
        auto rep = mapping_space_steps(F, G, 2);
        t.expect(rep.adjunction_bijective && rep.slice_maps == rep.shriek_maps, [&] {
            return inst(i, C) + ": " + std::to_string(rep.slice_maps) + " slice maps vs " + std::to_string(rep.shriek_maps);
        });
    }
    return t.done(std::to_string(N) + " instances, Hom(r*F, r*G) = Hom(r_! r*F, G)");
}

Check homology_sanity(const SuiteConfig&) {
    Tally t;
    auto b = homology(*boundary(2, 3), 2);
    t.expect(b.str() == "H0=Z, H1=Z, H2=0", [&] { return "boundary of the 2-simplex: " + b.str(); });
    auto s = homology(*standard_simplex(2, 3), 2);
    t.expect(s.is_point(), [&] { return "2-simplex: " + s.str(); });
    auto hl = ho_lan(CatFunctor{linear_order(1), terminal_category(), {0, 0}, {0, 0, 0}}, constant_diagram(linear_order(1), point(2)));
    auto h = homology(hl.value->value(0), 1);
    t.expect(h.is_point(), [&] { return "hocolim of a point over [1]: " + h.str(); });
    return t.done("boundary: " + b.str() + "; simplex and hocolim contractible");
}

}  // namespace

const std::vector<Property>& properties() {
    static const std::vector<Property> all{
        {"three-presentations", "r*_C F via minimal, sigma and lambda presentations", 1, 60, three_presentations},
        {"change-of-index-pullback", "r*_D(psi*F) is the pullback of r*_C F along N psi", 2, 30, change_of_index_pullback},
        {"rshriek-adjunction", "Hom over N C (A, r*F) = Hom(r_! A, F), natural", 3, 60, rshriek_adjunction},
        {"weakly-constant-kan-fibration", "weakly constant Kan-valued F gives a Kan fibration r*F", 4, 60, weakly_constant_kan},
        {"classification", "rep_fib(gamma_C F) = r*_C F", 5, 60, classification},
        {"strict-commutativity", "gamma_C F = gamma after N F literally", 6, 30, strict_commutativity},
        {"lift-phi", "the lift phi restricts to r*_C(f) over vertex 1", 7, 30, lift_phi},
        {"cofinality-homology", "comma nerves of Lambda^n in Sigma^n are acyclic", 8, 10, cofinality},
        {"holim-section-space", "holim as sections of r*F over N C", 9, 30, holim_section_space},
        {"dugger-formula", "QF is a coproduct over chains", 10, 30, dugger_formula},
        {"kan-extension-adjunctions", "Lan and Ran are adjoint to restriction", 11, 60, kan_extension_adjunctions},
        {"negative-controls", "broken family, non-cartesian square, non-natural f are rejected", 12, 10, negative_controls},
        {"rectify-monomorphisms", "r* preserves monomorphisms", 0, 0, monomorphisms},
        {"rectify-constant-point", "r*(point) = N C", 0, 0, constant_point},
        {"rectify-matching", "rectified simplices satisfy the matching condition", 0, 0, matching},
        {"gamma-simplicial-map", "gamma is a simplicial map", 0, 0, gamma_simplicial},
        {"family-restriction", "restriction of classifying families is strictly functorial", 0, 0, family_restriction},
        {"rep-fib-weakly-constant", "weakly constant F gives a Kan rep_fib", 0, 0, weakly_constant_rep_fib},
        {"currying", "G^F is an internal hom", 0, 0, currying},
        {"mapping-space-step", "the r_! adjunction step of the mapping-space chain", 0, 0, mapping_space},
        {"homology-sanity", "homology of boundary, simplex and a hocolim", 0, 0, homology_sanity},
    };
    return all;
}

Property mutation_control() {
    return {"mutation-broken-family", "a broken compatibility family must be consistent", 0, 0, [](const SuiteConfig&) {
                Tally t;
                t.expect_none(broken_family().check_consistency(), "injected mutation");
                return t.done("consistency of a deliberately broken family");
            }};
}

Check run_property(const Property& p, const SuiteConfig& cfg) {
    Check c;
    try {
        c = p.run(cfg);
    } catch (const std::exception& e) {
        c.pass = false;
        c.witness = std::string("exception: ") + e.what();
    }
    c.name = p.name;
    c.anchor = p.anchor;
    return c;
}

Report run_suite(const SuiteConfig& cfg, const std::string& filter, bool mutate) {
    auto start = std::chrono::steady_clock::now();
    Report r;
    r.trusted = cfg.small ? "acceptance sizes, caps 2..3" : "tiny sizes, caps 2..3";
    std::vector<Property> chosen;
    for (const auto& p : properties()) {
        if (filter.empty() || p.name.find(filter) != std::string::npos) chosen.push_back(p);
    }
    if (mutate) chosen.push_back(mutation_control());
    // cases run one after another; the order is that of properties()
    for (const auto& p : chosen) r.checks.push_back(run_property(p, cfg));
    r.data["seed"] = cfg.seed;
    r.data["size"] = cfg.small ? "small" : "tiny";
    r.data["properties"] = chosen.size();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace ssr

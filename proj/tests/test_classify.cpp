#include <gtest/gtest.h>

#include <random>

#include "ssr/classify.hpp"
#include "ssr/error.hpp"
#include "ssr/fibcheck.hpp"
#include "ssr/generators.hpp"

using namespace ssr;

namespace {

bool throws_with(const std::function<void()>& f, const std::string& needle, std::string* msg = nullptr) {
    try {
        f();
    } catch (const InvariantError& e) {
        if (msg) *msg = e.what();
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

// A Kan-valued diagram on [n] × P for a random poset P.
DiagramPtr random_kan_on_product(gen::Rng& rng, int n, int max_objects, int cap) {
    auto P = product_category(linear_order(n), gen::random_index(rng, max_objects));
    return gen::random_kan_diagram(rng, P, cap);
}

NatTrans random_quotient_map(gen::Rng& rng, const CatPtr& C, int cap) {
    std::uniform_int_distribution<int> g(1, 3);
    auto q = gen::random_quotients(rng, C, g(rng));
    auto coarse = gen::random_coarsening(rng, C, q);
    auto F = gen::quotient_diagram(C, q, cap);
    auto G = gen::quotient_diagram(C, coarse, cap);
    return gen::quotient_map(F, q, G, coarse);
}

}  // namespace

// ---- family_from_fibration ----------------------------------------------------

TEST(Family, IdentityFibrationGivesSimplices) {
    auto L = standard_simplex(2, 3);
    SliceObject p{L, SimplicialMap::identity(L)};
    auto fam = family_from_fibration(p, canonical_chooser(p));
    for (int n = 0; n <= 3; ++n) {
        for (int a = 0; a < L->size(n); ++a) {
            const auto& A = fam.at[static_cast<std::size_t>(n)][static_cast<std::size_t>(a)];
            EXPECT_TRUE(A.fib.bijective());
            EXPECT_EQ(A.verify(), std::nullopt);
        }
    }
}

TEST(Family, TwoPointsOverPoint) {
    auto pt = point(2);
    auto two = coproduct(pt, pt);
    SliceObject p{two, SimplicialMap::from_fn(two, pt, [](int, int) { return 0; })};
    auto fam = family_from_fibration(p, canonical_chooser(p));
    ASSERT_EQ(fam.at[0].size(), 1u);
    EXPECT_EQ(fam.at[0][0].total()->size(0), 2);
    EXPECT_EQ(fam.at[0][0].total()->size(2), 2);
}

TEST(Family, CanonicalChooserIsConsistent) {
    gen::Rng rng(31);
    for (int t = 0; t < 4; ++t) {
        auto F = gen::random_kan_diagram(rng, gen::random_index(rng, 2), 3);
        auto r = rectify(F, 3);
        auto fam = family_from_fibration(r.slice, canonical_chooser(r.slice));
        EXPECT_EQ(fam.check_consistency(), std::nullopt);
        EXPECT_EQ(fam.at[2][0].verify(), std::nullopt);
    }
}

TEST(Family, NonCartesianSquareIsRejected) {
    auto F = constant_diagram(linear_order(1), standard_simplex(0, 2));
    auto r = rectify(F, 2);
    auto canonical = canonical_chooser(r.slice);
    // over the vertex 1 the square is doubled: still commutes, no longer a pullback
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
    EXPECT_TRUE(throws_with([&] { family_from_fibration(r.slice, chooser); }, "not cartesian", &msg)) << msg;
    EXPECT_NE(msg.find(r.nerve->describe(0, 1)), std::string::npos) << msg;
}

TEST(Family, BrokenCompatibilityIsRejected) {
    gen::Rng rng(32);
    auto F = gen::random_kan_diagram(rng, linear_order(1), 2);
    auto r = rectify(F, 2);
    auto fam = family_from_fibration(r.slice, canonical_chooser(r.slice));
    // A(a; d0) replaced by A(a; d1) on the nondegenerate edge
    auto& A = fam.at[1][static_cast<std::size_t>(r.nerve->nondegenerate_at(1)[0])];
    A.chosen.at(DeltaMap::coface(1, 0)) = A.chosen.at(DeltaMap::coface(1, 1));
    auto e = fam.check_consistency();
    ASSERT_TRUE(e.has_value());
    EXPECT_NE(e->find("A("), std::string::npos) << *e;
    EXPECT_THROW(rep_fib(fam), InvariantError);
}

// ---- γ ----------------------------------------------------------------------------

TEST(Gamma, PointOverZero) {
    auto G = gamma(constant_diagram(linear_order(0), standard_simplex(0, 3)), 3);
    EXPECT_TRUE(G.fib.bijective());
    EXPECT_EQ(G.verify(), std::nullopt);
}

TEST(Gamma, IdentityOnPointOverOne) {
    auto G = gamma(constant_diagram(linear_order(1), standard_simplex(0, 3)), 3);
    EXPECT_TRUE(G.fib.bijective());
    for (int v = 0; v <= 1; ++v) {
        const auto& sq = G.chosen.at(DeltaMap::constant(0, 1, v));
        for (int n = 0; n <= 3; ++n) EXPECT_EQ(sq.object->size(n), 1);
    }
    EXPECT_EQ(G.verify(), std::nullopt);
}

TEST(Gamma, NonKanValueIsRejected) {
    auto F = constant_diagram(linear_order(0), standard_simplex(1, 3));
    std::string msg;
    EXPECT_TRUE(throws_with([&] { gamma(F, 3); }, "Lambda^", &msg)) << msg;
}

TEST(Gamma, SimplicialMapProperty) {
    gen::Rng rng(33);
    for (int t = 0; t < 5; ++t) {
        auto F = gen::random_kan_diagram(rng, linear_order(1 + t % 2), 2);
        EXPECT_EQ(check_gamma_simplicial(F, 2), std::nullopt);
        EXPECT_EQ(gamma(F, 2).verify(), std::nullopt);
    }
}

TEST(GammaC, ReducesToGammaOverPoint) {
    auto x = gen::codiscrete_nerve(2, 3);
    auto F = constant_diagram(product_category(linear_order(0), terminal_category()), x);
    auto G = gamma_C(F, 3);
    auto H = gamma(constant_diagram(linear_order(0), x), 3);
    EXPECT_TRUE(G.family.at[0][0].total()->same_as(*H.total()));
    EXPECT_TRUE(G.family.at[0][0].fib == H.fib);
}

TEST(GammaC, StrictlyCommutes) {
    gen::Rng rng(34);
    for (int t = 0; t < 4; ++t) {
        auto F = random_kan_on_product(rng, t % 2, 2, 2);
        auto G = gamma_C(F, 2);
        EXPECT_EQ(compare_families(G.family, gamma_after_nerve(F, 2)), std::nullopt);
    }
}

TEST(GammaC, NaturalInIndex) {
    gen::Rng rng(35);
    for (int t = 0; t < 4; ++t) {
        auto C = gen::random_index(rng, 2);
        auto one = linear_order(1);
        auto P = product_category(one, C);
        auto F = gen::random_kan_diagram(rng, P, 2);
        auto psi = gen::random_arrow(rng, C);
        auto D = psi.src;
        auto Q = product_category(one, D);
        auto idxpsi = pair_functor(P, product_projection_functor(Q, one, D, 0), product_projection_functor(Q, one, D, 1).then(psi));
        auto G = gamma_C(F, 2);
        auto H = gamma_C(restrict_diagram(idxpsi, F), 2);
        auto pulled = family_pullback(nerve_map(idxpsi, H.family.base, G.family.base), G.family);
        EXPECT_EQ(compare_families(pulled, H.family), std::nullopt);
    }
}

TEST(FamilyPullback, IdentityAndComposites) {
    gen::Rng rng(36);
    auto F = gen::random_kan_diagram(rng, linear_order(2), 2);
    auto G = gamma_C(on_point_times(F), 2);
    const auto& L = G.family.base;
    EXPECT_EQ(compare_families(family_pullback(SimplicialMap::identity(L), G.family), G.family), std::nullopt);
    for (int t = 0; t < 6; ++t) {
        std::uniform_int_distribution<int> pick(0, L->size(2) - 1);
        auto d2 = standard_simplex(2, 2);
        auto g = yoneda(L, 2, pick(rng), d2);
        auto d1 = standard_simplex(1, 2);
        std::uniform_int_distribution<int> face(0, 2);
        auto f = yoneda(d2, 1, d2->face(2, face(rng), d2->size(2) - 1), d1);
        EXPECT_EQ(compare_families(family_pullback(f.then(g), G.family), family_pullback(f, family_pullback(g, G.family))),
                  std::nullopt);
    }
}

TEST(FamilyPullback, VertexGivesValue) {
    gen::Rng rng(37);
    auto C = gen::random_index(rng, 3);
    auto F = gen::random_kan_diagram(rng, C, 2);
    auto G = gamma_C(on_point_times(F), 2);
    for (int c = 0; c < C->num_objects(); ++c) {
        auto v = yoneda(G.family.base, 0, c, standard_simplex(0, 2));
        auto fam = family_pullback(v, G.family);
        auto H = gamma(constant_diagram(linear_order(0), F->at[static_cast<std::size_t>(c)]), 2);
        EXPECT_TRUE(fam.at[0][0].total()->same_as(*H.total()));
        EXPECT_EQ(fam.check_consistency(), std::nullopt);
    }
}

// ---- rep_fib and classification ---------------------------------------------------------

TEST(RepFib, IdentityFamily) {
    auto L = standard_simplex(1, 3);
    SliceObject p{L, SimplicialMap::identity(L)};
    auto rep = rep_fib(family_from_fibration(p, canonical_chooser(p)));
    EXPECT_TRUE(rep.proj.bijective());
}

TEST(RepFib, PointOverIntervalIsDelta1) {
    auto F = constant_diagram(linear_order(1), standard_simplex(0, 3));
    auto cl = classify_rectification(F, 3);
    EXPECT_EQ(cl.verify(), std::nullopt);
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(cl.rep.total->size(n), n + 2);
    EXPECT_TRUE(cl.rep.proj.bijective());
}

TEST(RepFib, RoundTripOnRectifications) {
    gen::Rng rng(38);
    for (int t = 0; t < 4; ++t) {
        auto C = gen::random_category(rng, 2);
        auto r = rectify(gen::random_diagram(rng, C, 3), 3);
        auto fam = family_from_fibration(r.slice, canonical_chooser(r.slice));
        auto rep = rep_fib(fam);
        auto there = simplex_to_section(r.slice, fam, rep);
        auto back = section_to_simplex(r.slice, fam, rep);
        EXPECT_EQ(there.check(), std::nullopt);
        EXPECT_TRUE(there.then(back) == SimplicialMap::identity(r.total()));
        EXPECT_TRUE(back.then(there) == SimplicialMap::identity(rep.total));
        EXPECT_TRUE(there.then(rep.proj) == r.slice.proj);
    }
}

TEST(RepFib, ClassifiesRectification) {
    gen::Rng rng(39);
    for (int t = 0; t < 4; ++t) {
        auto C = gen::random_category(rng, 2);
        auto cl = classify_rectification(gen::random_diagram(rng, C, 3), 3);
        EXPECT_EQ(cl.verify(), std::nullopt);
    }
}

TEST(RepFib, WeaklyConstantGivesKanFibration) {
    for (const auto& fx : gen::kan_fixtures(3)) {
        if (!fx.weakly_constant) continue;
        auto cl = classify_rectification(fx.diagram, 3);
        auto v = is_kan_fibration(cl.rep.proj, 2);
        EXPECT_TRUE(v.ok) << fx.name;
    }
}

// ---- the lift φ ---------------------------------------------------------------------------

TEST(Lift, IdentityOnPoint) {
    auto F = constant_diagram(terminal_category(), standard_simplex(0, 3));
    auto phi = construct_lift_phi(NatTrans::identity(F), 3);
    EXPECT_EQ(phi.verify(), std::nullopt);
    EXPECT_TRUE(phi.phi1 == SimplicialMap::identity(phi.source.total()));
}

TEST(Lift, VertexIntoInterval) {
    auto T = terminal_category();
    auto d0 = standard_simplex(0, 3);
    auto d1 = standard_simplex(1, 3);
    for (int v = 0; v <= 1; ++v) {
        NatTrans f{constant_diagram(T, d0), constant_diagram(T, d1), {yoneda(d1, 0, v, d0)}};
        auto phi = construct_lift_phi(f, 3);
        EXPECT_EQ(phi.verify(), std::nullopt);
        EXPECT_EQ(phi.fibre1.decode(0, phi.phi1(0, 0)).z[0], v);
    }
}

TEST(Lift, MatchesRectifiedMap) {
    gen::Rng rng(40);
    for (int t = 0; t < 4; ++t) {
        auto f = random_quotient_map(rng, gen::random_index(rng, 2), 3);
        auto phi = construct_lift_phi(f, 3);
        EXPECT_EQ(phi.verify(), std::nullopt);
    }
}

TEST(Lift, SearchFindsALiftToo) {
    gen::Rng rng(41);
    auto f = random_quotient_map(rng, linear_order(1), 1);
    auto phi = construct_lift_phi(f, 1);
    auto lp = phi_lifting_problem(phi);
    EXPECT_TRUE(find_lift(lp).has_value());
}

TEST(Lift, NonNaturalIsRejected) {
    auto C = linear_order(1);
    auto two = gen::discrete_set(2, 2);
    auto F = constant_diagram(C, two);
    auto swap = gen::object_function(two, two, {1, 0});
    NatTrans f{F, F, {SimplicialMap::identity(two), swap}};
    std::string msg;
    EXPECT_TRUE(throws_with([&] { construct_lift_phi(f, 2); }, "not natural", &msg)) << msg;
}

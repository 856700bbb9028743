#include <gtest/gtest.h>

#include <random>

#include "ssr/diagram.hpp"
#include "ssr/error.hpp"
#include "ssr/fibcheck.hpp"
#include "ssr/generators.hpp"

using namespace ssr;

namespace {

SimplicialMap to_point(const SSetPtr& x) {
    return SimplicialMap::from_fn(x, standard_simplex(0, x->cap()), [](int, int) { return 0; });
}

SimplicialMap by_keys(const SSetPtr& a, const SSetPtr& b) {
    return SimplicialMap::from_keys(a, b, [](int, const Key& k) { return k; });
}

// The vertex v of Y as a map Δ⁰ -> Y.
SimplicialMap vertex_map(const SSetPtr& y, int v) {
    auto pt = standard_simplex(0, y->cap());
    return SimplicialMap::from_fn(pt, y, [&](int n, int) { return y->act(DeltaMap::constant(n, 0, 0), v); });
}

// Brute force: does some map L -> X restrict to top and lie over bottom?
bool brute_lift_exists(const LiftingProblem& lp) {
    for (const auto& h : all_maps(lp.inclusion.target(), lp.p.source())) {
        if (lp.inclusion.then(h) == lp.top && h.then(lp.p) == lp.bottom) return true;
    }
    return false;
}

}  // namespace

TEST(Lift, AgainstIdentity) {
    auto D = standard_simplex(2, 2);
    auto H = horn(2, 1, 2);
    auto inc = simplex_inclusion(H, 2);
    auto bottom = SimplicialMap::identity(D);
    auto l = find_lift({inc, inc, bottom, SimplicialMap::identity(D)});
    ASSERT_TRUE(l.has_value());
    EXPECT_TRUE(*l == bottom);
}

TEST(Lift, HornOneZeroOverPoint) {
    auto H = horn(1, 0, 2);
    auto D = standard_simplex(1, 2);
    auto P = standard_simplex(0, 2);
    LiftingProblem lp{simplex_inclusion(H, 1), to_point(H), to_point(D), SimplicialMap::identity(P)};
    EXPECT_TRUE(find_lift(lp).has_value());
    int count = 0;
    for (const auto& h : all_maps(D, P)) count += lp.inclusion.then(h) == lp.top ? 1 : 0;
    EXPECT_EQ(count, 1);
}

TEST(Lift, HornIntoBoundaryHasNoFiller) {
    auto H = horn(2, 1, 2);
    auto B = boundary(2, 2);
    auto D = standard_simplex(2, 2);
    LiftingProblem lp{simplex_inclusion(H, 2), by_keys(H, B), to_point(D), to_point(B)};
    EXPECT_FALSE(find_lift(lp).has_value());
    EXPECT_FALSE(brute_lift_exists(lp));
}

TEST(Lift, NonCommutingSquareIsRejected) {
    auto D = standard_simplex(1, 2);
    auto H = horn(1, 0, 2);
    auto inc = simplex_inclusion(H, 1);
    auto top = by_keys(H, D);                    // vertex 0
    auto bottom = SimplicialMap::from_fn(D, D, [&](int n, int) { return D->act(DeltaMap::constant(n, 1, 1), 2); });
    EXPECT_THROW(find_lift({inc, top, bottom, SimplicialMap::identity(D)}), InvariantError);
}

TEST(Lift, NoneIsSound) {
    // every horn problem into small nerves, cross-checked by brute force
    std::vector<SSetPtr> targets{boundary(2, 2), horn(2, 0, 2), nerve(cospan_category(), 2), nerve(cyclic_group(2), 2),
                                 standard_simplex(1, 2)};
    int none = 0;
    int some = 0;
    for (const auto& X : targets) {
        auto p = to_point(X);
        for (int k = 0; k <= 2; ++k) {
            auto H = horn(2, k, 2);
            auto inc = simplex_inclusion(H, 2);
            auto D = standard_simplex(2, 2);
            for (const auto& top : all_maps(H, X)) {
                LiftingProblem lp{inc, top, to_point(D), p};
                bool found = find_lift(lp).has_value();
                EXPECT_EQ(found, brute_lift_exists(lp));
                (found ? some : none)++;
            }
        }
    }
    EXPECT_GT(none, 0);
    EXPECT_GT(some, 0);
}

TEST(Fibration, IdentityIsKan) {
    auto X = nerve(span_category(), 4);
    EXPECT_TRUE(is_kan_fibration(SimplicialMap::identity(X), 3).ok);
    EXPECT_TRUE(is_trivial_fibration(SimplicialMap::identity(X), 3).ok);
}

TEST(Fibration, VertexOneIsLeftNotKan) {
    auto D = standard_simplex(1, 3);
    auto v = vertex_map(D, 1);
    EXPECT_TRUE(is_left_fibration(v, 2).ok);
    auto kan = is_kan_fibration(v, 2);
    ASSERT_FALSE(kan.ok);
    EXPECT_EQ(kan.witness->n, 1);
    EXPECT_EQ(kan.witness->k, 1);
}

TEST(Fibration, VertexZeroIsNotLeft) {
    auto D = standard_simplex(1, 3);
    auto v = vertex_map(D, 0);
    auto left = is_left_fibration(v, 2);
    ASSERT_FALSE(left.ok);
    EXPECT_EQ(left.witness->n, 1);
    EXPECT_EQ(left.witness->k, 0);
}

TEST(Fibration, CapTooSmall) {
    auto D = standard_simplex(1, 2);
    EXPECT_THROW(is_kan_fibration(SimplicialMap::identity(D), 2), ResourceError);
}

TEST(Fibration, KanComplexes) {
    EXPECT_TRUE(is_kan_complex(nerve(cyclic_group(3), 3), 2).ok);
    EXPECT_TRUE(is_kan_complex(gen::codiscrete_nerve(3, 3), 2).ok);
    EXPECT_FALSE(is_kan_complex(standard_simplex(1, 3), 2).ok);
    EXPECT_FALSE(is_kan_complex(horn(2, 1, 3), 2).ok);
}

TEST(Fibration, BoundaryIntoSimplexIsNotTrivial) {
    auto B = boundary(2, 3);
    auto v = is_trivial_fibration(simplex_inclusion(B, 2), 2);
    ASSERT_FALSE(v.ok);
    EXPECT_EQ(v.witness->n, 2);
    EXPECT_EQ(v.witness->k, -1);
}

TEST(Fibration, LeftFibrationsPullBack) {
    gen::Rng rng(31);
    auto D = standard_simplex(1, 3);
    auto p = vertex_map(D, 1);
    for (int t = 0; t < 5; ++t) {
        auto C = gen::random_index(rng, 3);
        auto N = nerve(C, 3);
        auto maps = all_maps(N, D);
        const auto& g = maps[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, static_cast<int>(maps.size()) - 1)(rng))];
        auto pb = pullback(g, p);
        EXPECT_TRUE(is_left_fibration(pb.to_left, 2).ok);
    }
}

TEST(Homology, SimplexIsPoint) {
    for (int n = 0; n <= 3; ++n) EXPECT_TRUE(homology(*standard_simplex(n, 4), 3).is_point());
}

TEST(Homology, BoundaryOfTriangle) {
    auto h = homology(*boundary(2, 3), 2);
    EXPECT_EQ(h.rank, (std::vector<int>{1, 1, 0}));
    EXPECT_EQ(h.str(), "H0=Z, H1=Z, H2=0");
}

TEST(Homology, LambdaNervesArePoints) {
    for (int m = 0; m <= 3; ++m) EXPECT_TRUE(homology(*nerve(lambda_category(m).lambda, 3), 2).is_point()) << m;
}

TEST(Homology, CyclicGroupTorsion) {
    auto h = homology(*nerve(cyclic_group(2), 4), 3);
    EXPECT_EQ(h.str(), "H0=Z, H1=Z/2, H2=0, H3=Z/2");
}

TEST(Homology, CoproductIsSum) {
    auto X = boundary(2, 3);
    auto Y = nerve(cyclic_group(3), 3);
    auto hx = homology(*X, 2);
    auto hy = homology(*Y, 2);
    auto hs = homology(*coproduct(X, Y), 2);
    for (int n = 0; n <= 2; ++n) {
        EXPECT_EQ(hs.rank[static_cast<std::size_t>(n)], hx.rank[static_cast<std::size_t>(n)] + hy.rank[static_cast<std::size_t>(n)]);
        auto tor = hx.torsion[static_cast<std::size_t>(n)];
        tor.insert(tor.end(), hy.torsion[static_cast<std::size_t>(n)].begin(), hy.torsion[static_cast<std::size_t>(n)].end());
        std::sort(tor.begin(), tor.end());
        auto ts = hs.torsion[static_cast<std::size_t>(n)];
        std::sort(ts.begin(), ts.end());
        EXPECT_EQ(ts, tor);
    }
    EXPECT_EQ(hs.pi0, 2);
}

TEST(Homology, SmithNormalForm) {
    EXPECT_EQ(smith_invariants({{2, 4}, {6, 8}}), (std::vector<long long>{2, 4}));
    EXPECT_EQ(smith_invariants({{0, 0}, {0, 0}}), (std::vector<long long>{}));
    EXPECT_EQ(smith_invariants({{2, 0}, {0, 3}}), (std::vector<long long>{1, 6}));
}

TEST(Weq, Examples) {
    auto P = standard_simplex(0, 3);
    EXPECT_EQ(weq_evidence(SimplicialMap::identity(P), 2).verdict, WeqVerdict::Consistent);
    auto two = coproduct(P, P);
    EXPECT_EQ(weq_evidence(to_point(two), 2).verdict, WeqVerdict::Refuted);
    auto D = standard_simplex(1, 3);
    EXPECT_EQ(weq_evidence(vertex_map(D, 0), 2).verdict, WeqVerdict::Consistent);
    auto B = boundary(2, 3);
    auto r = weq_evidence(simplex_inclusion(B, 2), 2);
    EXPECT_EQ(r.verdict, WeqVerdict::Refuted);
    EXPECT_TRUE(r.pi0_bijective);
    EXPECT_EQ(weq_evidence(SimplicialMap::identity(P), 0).verdict, WeqVerdict::Inconclusive);
}

TEST(Ex, PointAndInterval) {
    auto P = standard_simplex(0, 2);
    auto e = ex(P, 2);
    for (int n = 0; n <= 2; ++n) EXPECT_EQ(e.ex->size(n), 1);
    EXPECT_EQ(subdivision(1, 1)->size(0), 3);
    auto D = standard_simplex(1, 2);
    auto ed = ex(D, 2);
    // vertices of Ex X are the vertices of X
    EXPECT_EQ(ed.ex->size(0), 2);
    EXPECT_EQ(ed.unit.check(), std::nullopt);
    EXPECT_TRUE(ed.unit.injective());
    EXPECT_EQ(check_presheaf_laws(*ed.ex), std::nullopt);
}

TEST(Ex, FillingImprovesUnderIteration) {
    // X = Λ²₁ (edges 0 -> 1 -> 2): no edge from 2 to 0 in X or Ex X, one in Ex² X
    auto X = horn(2, 1, 1);
    auto D1 = standard_simplex(1, 1);
    auto dD1 = boundary(1, 1);
    auto solvable = [&](const ExResult& r) {
        auto Y = r.ex;
        int v2 = r.unit(0, X->index_of(0, {2}));
        int v0 = r.unit(0, X->index_of(0, {0}));
        // ∂Δ¹ has vertices [0] and [1]: send 0 ↦ vertex 2, 1 ↦ vertex 0
        auto top = SimplicialMap::from_fn(dD1, Y, [&](int n, int s) {
            int v = dD1->key(n, s)[0] == 0 ? v2 : v0;
            return Y->act(DeltaMap::constant(n, 0, 0), v);
        });
        auto pt = standard_simplex(0, 1);
        LiftingProblem lp{simplex_inclusion(dD1, 1), top, to_point(D1), SimplicialMap::from_fn(Y, pt, [](int, int) { return 0; })};
        bool f = find_lift(lp).has_value();
        EXPECT_EQ(f, brute_lift_exists(lp));
        return f;
    };
    EXPECT_FALSE(solvable(ex_iterate(X, 0, 1)));
    EXPECT_FALSE(solvable(ex_iterate(X, 1, 1)));
    EXPECT_TRUE(solvable(ex_iterate(X, 2, 1)));
}

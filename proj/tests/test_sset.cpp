#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ssr/error.hpp"
#include "ssr/sset.hpp"

using namespace ssr;

TEST(SSet, StandardSimplexLevels) {
    auto d2 = standard_simplex(2, 3);
    EXPECT_EQ(d2->size(0), 3);
    EXPECT_EQ(d2->size(1), 6);
    EXPECT_EQ(d2->size(3), 15);  // C(6,4)
    EXPECT_EQ(d2->nondegenerate_at(2).size(), 1u);
    EXPECT_EQ(d2->nondegenerate_at(3).size(), 0u);
}

TEST(SSet, PresheafLawsAndIdentities) {
    for (auto x : {standard_simplex(2, 3), boundary(2, 3), horn(3, 1, 3), product(standard_simplex(1, 3), standard_simplex(1, 3))}) {
        EXPECT_EQ(check_presheaf_laws(*x), std::nullopt) << x->name();
        EXPECT_EQ(x->check_identities(), std::nullopt) << x->name();
    }
}

TEST(SSet, HornAndBoundaryNondegenerateCounts) {
    for (int n = 1; n <= 3; ++n) {
        auto b = boundary(n, n);
        EXPECT_EQ(static_cast<int>(b->nondegenerate_at(n - 1).size()), n + 1);
        for (int k = 0; k <= n; ++k) {
            auto h = horn(n, k, n);
            EXPECT_EQ(static_cast<int>(h->nondegenerate_at(n - 1).size()), n);
        }
    }
}

TEST(SSet, ProductOfIntervalsHasTwoTriangles) {
    // nondegenerate 2-simplices of Δ¹×Δ¹ are the monotone lattice paths of length 2 in the grid
    auto p = product(standard_simplex(1, 3), standard_simplex(1, 3));
    EXPECT_EQ(p->nondegenerate_at(2).size(), 2u);
    EXPECT_EQ(p->nondegenerate_at(3).size(), 0u);
    EXPECT_EQ(p->nondegenerate_at(1).size(), 5u);
}

TEST(SSet, CoproductOfPoints) {
    auto c = coproduct(point(3), point(3));
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(c->size(n), 2);
}

TEST(SSet, PullbackOverPointIsProduct) {
    auto x = standard_simplex(1, 2);
    auto y = boundary(2, 2);
    auto pt = point(2);
    auto f = SimplicialMap::from_fn(x, pt, [](int, int) { return 0; });
    auto g = SimplicialMap::from_fn(y, pt, [](int, int) { return 0; });
    auto pb = pullback(f, g);
    auto prod = product(x, y);
    for (int n = 0; n <= 2; ++n) EXPECT_EQ(pb.object->size(n), prod->size(n));
}

TEST(SSet, PullbackUniversalPropertyOnRandomCones) {
    // cones W -> X, W -> Y into Δ¹ <- Δ¹ ← two vertex maps; check factorisation
    std::mt19937_64 rng(7);
    auto s = standard_simplex(1, 2);
    auto x = standard_simplex(2, 2);
    auto y = standard_simplex(1, 2);
    auto f = SimplicialMap::from_keys(x, s, [](int, const Key& k) {
        Key o;
        for (int v : k) o.push_back(v >= 1 ? 1 : 0);
        return o;
    });
    auto g = SimplicialMap::identity(y);
    auto pb = pullback(f, g);
    auto w = standard_simplex(1, 2);
    for (int trial = 0; trial < 20; ++trial) {
        // a random edge of X and its image give a commuting cone
        int e = static_cast<int>(rng() % static_cast<unsigned>(x->size(1)));
        auto a = SimplicialMap::from_fn(w, x, [&](int n, int s0) { return x->act(DeltaMap(1, w->key(n, s0)), e); });
        auto b = a.then(f);
        auto h = pullback_universal(pb, a, b);
        EXPECT_EQ(h.check(), std::nullopt);
        EXPECT_EQ(h.then(pb.to_left), a);
        EXPECT_EQ(h.then(pb.to_right), b);
    }
}

TEST(SSet, NormalizeExamples) {
    auto pt = point(2);
    auto nf = pt->normalize(1, 0);
    EXPECT_EQ(nf.level, 0);
    EXPECT_EQ(nf.surj, DeltaMap(0, {0, 0}));
    auto d1 = standard_simplex(1, 3);
    for (int s : d1->nondegenerate_at(1)) EXPECT_TRUE(d1->normalize(1, s).surj.is_identity());
}

TEST(SSet, NormalizeRecomposesExhaustively) {
    auto p = product(standard_simplex(1, 3), standard_simplex(1, 3));
    for (int n = 0; n <= 3; ++n) {
        for (int s = 0; s < p->size(n); ++s) {
            auto nf = p->normalize(n, s);
            EXPECT_TRUE(p->nondegenerate(nf.level, nf.index));
            EXPECT_TRUE(nf.surj.surjective());
            EXPECT_EQ(p->act(nf.surj, nf.index), s);
        }
    }
    // the diagonal edge ((0,1),(0,1)) has exactly 3 degenerate 2-simplices over it
    int diag = p->index_of(1, {standard_simplex(1, 3)->index_of(1, {0, 1}), standard_simplex(1, 3)->index_of(1, {0, 1})});
    std::set<int> degs;
    for (int s = 0; s < p->size(2); ++s) {
        auto nf = p->normalize(2, s);
        if (nf.level == 1 && nf.index == diag) degs.insert(s);
    }
    EXPECT_EQ(degs.size(), 2u);  // s0 and s1 of the diagonal
}

TEST(SSet, GeneratorsPresentBoundaryOfTriangle) {
    std::vector<Generator> g = {
        {"a", 0, {}}, {"b", 0, {}}, {"c", 0, {}},
        {"ab", 1, {{1, DeltaMap::identity(0)}, {0, DeltaMap::identity(0)}}},
        {"bc", 1, {{2, DeltaMap::identity(0)}, {1, DeltaMap::identity(0)}}},
        {"ac", 1, {{2, DeltaMap::identity(0)}, {0, DeltaMap::identity(0)}}},
    };
    auto x = from_generators("bd", 3, g);
    EXPECT_EQ(x->nondegenerate_at(1).size(), 3u);
    EXPECT_EQ(check_presheaf_laws(*x), std::nullopt);
    auto bd = boundary(2, 3);
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(x->size(n), bd->size(n));
}

TEST(SSet, GeneratorsRejectBadFaces) {
    std::vector<Generator> g = {
        {"a", 0, {}}, {"b", 0, {}},
        {"ab", 1, {{1, DeltaMap::identity(0)}, {0, DeltaMap::identity(0)}}},
        {"ba", 1, {{0, DeltaMap::identity(0)}, {1, DeltaMap::identity(0)}}},
        // faces d0 = ab, d1 = ab, d2 = ab violate d0 d2 = d1 d0 style identities
        {"t", 2, {{2, DeltaMap::identity(1)}, {2, DeltaMap::identity(1)}, {2, DeltaMap::identity(1)}}},
    };
    EXPECT_THROW(from_generators("bad", 2, g), InvariantError);
}

TEST(SSet, MapCheckDetectsNonSimplicial) {
    auto d1 = standard_simplex(1, 2);
    auto m = SimplicialMap::identity(d1);
    auto comps = m.components();
    std::swap(comps[0][0], comps[0][1]);
    SimplicialMap bad(d1, d1, comps);
    EXPECT_NE(bad.check(), std::nullopt);
}

TEST(SSet, BudgetIsEnforced) {
    set_max_cells(50);
    EXPECT_THROW(standard_simplex(3, 3), ResourceError);
    set_max_cells(1000000);
}

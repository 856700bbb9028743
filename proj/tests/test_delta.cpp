#include <gtest/gtest.h>

#include "ssr/delta.hpp"
#include "ssr/error.hpp"

using namespace ssr;

namespace {

// independent count of monotone maps [k] -> [n]: C(n + k + 1, k + 1)
long binom(int a, int b) {
    long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

}  // namespace

TEST(Delta, IdentityComposesToIdentity) {
    auto id2 = DeltaMap::identity(2);
    EXPECT_EQ(compose(id2, id2), id2);
}

TEST(Delta, ConstantCompositionForced) {
    DeltaMap u(2, {0, 2});
    DeltaMap w(1, {0, 0});
    EXPECT_EQ(compose(u, w), DeltaMap(2, {0, 0}));
}

TEST(Delta, MapsIntoOneCountNPlusTwo) {
    for (int n = 0; n <= 4; ++n) {
        // monotone 0/1 sequences of length n+1: the position of the first 1
        EXPECT_EQ(static_cast<int>(DeltaMap::all(n, 1).size()), n + 2);
    }
}

TEST(Delta, EnumerationMatchesBinomial) {
    for (int k = 0; k <= 4; ++k) {
        for (int n = 0; n <= 4; ++n) EXPECT_EQ(static_cast<long>(DeltaMap::all(k, n).size()), binom(n + k + 1, k + 1));
    }
}

TEST(Delta, RejectsMismatchAndNonMonotone) {
    EXPECT_THROW(DeltaMap(2, {1, 0}), InvariantError);
    EXPECT_THROW(DeltaMap(1, {0, 2}), InvariantError);
    EXPECT_THROW(compose(DeltaMap::identity(2), DeltaMap::identity(1)), InvariantError);
}

TEST(Delta, AssociativeWithUnits) {
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
            for (int c = 0; c <= 2; ++c)
                for (int d = 0; d <= 2; ++d)
                    for (auto& u : DeltaMap::all(c, d))
                        for (auto& v : DeltaMap::all(b, c))
                            for (auto& w : DeltaMap::all(a, b)) {
                                EXPECT_EQ(compose(compose(u, v), w), compose(u, compose(v, w)));
                                EXPECT_EQ(compose(DeltaMap::identity(d), u), u);
                                EXPECT_EQ(compose(u, DeltaMap::identity(c)), u);
                            }
}

TEST(Delta, ImageFactorizationOfOneOneThree) {
    DeltaMap u(3, {1, 1, 3});
    auto f = image_factorization(u);
    EXPECT_EQ(f.lo, 1);
    EXPECT_EQ(f.hi, 3);
    EXPECT_EQ(f.surj.cod(), 1);  // image {1, 3}
    EXPECT_EQ(compose(f.incl, compose(f.mid, f.surj)), u);
}

TEST(Delta, ImageFactorizationOfIdentityAndConstant) {
    auto f = image_factorization(DeltaMap::identity(3));
    EXPECT_EQ(f.lo, 0);
    EXPECT_EQ(f.hi, 3);
    EXPECT_TRUE(f.surj.is_identity() && f.mid.is_identity());
    auto g = image_factorization(DeltaMap::constant(3, 4, 2));
    EXPECT_EQ(g.lo, 2);
    EXPECT_EQ(g.hi, 2);
    EXPECT_EQ(g.incl, DeltaMap(4, {2}));
}

TEST(Delta, FactorizationsRecomposeExhaustively) {
    for (int k = 0; k <= 3; ++k)
        for (int n = 0; n <= 3; ++n)
            for (auto& u : DeltaMap::all(k, n)) {
                auto em = epi_mono(u);
                EXPECT_TRUE(em.epi.surjective());
                EXPECT_TRUE(em.mono.injective());
                EXPECT_EQ(compose(em.mono, em.epi), u);
                auto f = image_factorization(u);
                EXPECT_EQ(f.lo, u(0));
                EXPECT_EQ(f.hi, u(k));
                EXPECT_TRUE(f.surj.surjective());
                EXPECT_TRUE(f.mid.injective());
                EXPECT_EQ(compose(f.incl, compose(f.mid, f.surj)), u);
            }
}

TEST(Delta, FrontRestriction) {
    DeltaMap w(3, {0, 2, 2, 3});
    EXPECT_EQ(w.front(1), DeltaMap(2, {0, 2}));
    EXPECT_EQ(w.front(0), DeltaMap(0, {0}));
}

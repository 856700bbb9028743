#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "ssr/error.hpp"
#include "ssr/generators.hpp"
#include "ssr/hoalg.hpp"

using namespace ssr;

namespace {

std::size_t Z(int x) { return static_cast<std::size_t>(x); }

// |lim| of the level-n sets by brute force over all tuples.
long long limit_count(const DiagramPtr& f, int n) {
    const auto& C = *f->cat;
    std::vector<int> t(Z(C.num_objects()), 0);
    long long count = 0;
    std::function<void(int)> go = [&](int c) {
        if (c == C.num_objects()) {
            for (int m = 0; m < C.num_morphisms(); ++m) {
                if (f->apply(m, n, t[Z(C.src(m))]) != t[Z(C.tgt(m))]) return;
            }
            ++count;
            return;
        }
        for (int x = 0; x < f->value(c).size(n); ++x) {
            t[Z(c)] = x;
            go(c + 1);
        }
    };
    go(0);
    return count;
}

// |colim| of the level-n sets by union-find over all (object, element).
int colimit_count(const DiagramPtr& f, int n) {
    const auto& C = *f->cat;
    std::vector<int> offset{0};
    for (int c = 0; c < C.num_objects(); ++c) offset.push_back(offset.back() + f->value(c).size(n));
    std::vector<int> parent(Z(offset.back()));
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> root = [&](int x) { return parent[Z(x)] == x ? x : parent[Z(x)] = root(parent[Z(x)]); };
    for (int m = 0; m < C.num_morphisms(); ++m) {
        for (int x = 0; x < f->value(C.src(m)).size(n); ++x) {
            parent[Z(root(offset[Z(C.src(m))] + x))] = root(offset[Z(C.tgt(m))] + f->apply(m, n, x));
        }
    }
    int classes = 0;
    for (std::size_t i = 0; i < parent.size(); ++i) classes += root(static_cast<int>(i)) == static_cast<int>(i);
    return classes;
}

// Number of chains c0 -> ... -> c(n+1) = c weighted by |F_n(c0)|, by recursion on morphisms.
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

}  // namespace

TEST(DiagramHom, PointGivesLimit) {
    gen::Rng rng(51);
    for (int t = 0; t < 5; ++t) {
        auto C = gen::random_category(rng, 2);
        auto G = gen::random_diagram(rng, C, 2);
        auto h = diagram_hom(constant_diagram(C, point(2)), G, 2);
        for (int n = 0; n <= 2; ++n) EXPECT_EQ(h.space->size(n), limit_count(G, n));
        EXPECT_EQ(check_presheaf_laws(*h.space), std::nullopt);
    }
}

TEST(DiagramHom, LevelZeroIsHomSet) {
    gen::Rng rng(52);
    for (int t = 0; t < 5; ++t) {
        auto C = gen::random_category(rng, 2);
        auto F = gen::random_diagram(rng, C, 2);
        auto G = gen::random_diagram(rng, C, 2);
        auto h = diagram_hom(F, G, 1);
        EXPECT_EQ(static_cast<std::size_t>(h.space->size(0)), all_nat_trans(F, G).size());
        EXPECT_EQ(h.space->check_identities(), std::nullopt);
        // decode / encode round trip
        for (int s = 0; s < h.space->size(1); ++s) EXPECT_EQ(h.encode(1, h.decode(1, s)), s);
    }
}

TEST(SliceHom, IdentityIsPoint) {
    auto N = nerve(cospan_category(), 2);
    SliceObject id{N, SimplicialMap::identity(N)};
    auto h = slice_hom(id, id, 2);
    for (int n = 0; n <= 2; ++n) EXPECT_EQ(h.space->size(n), 1);
}

TEST(Holim, DiscreteIsProduct) {
    auto C = discrete_category(2);
    auto X = gen::codiscrete_nerve(2, 3);
    auto Y = from_generators("Y", 3, {{"a", 0, {}}, {"b", 0, {}}, {"e", 1, {{0, DeltaMap(0, {0})}, {1, DeltaMap(0, {0})}}}});
    auto F = make_diagram(C, {X, Y}, {SimplicialMap::identity(X), SimplicialMap::identity(Y)});
    auto h = holim(F, 3);
    auto P = product(X, Y);
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(h.space->size(n), P->size(n));
}

TEST(Holim, ConstantPointIsPoint) {
    gen::Rng rng(53);
    for (int t = 0; t < 4; ++t) {
        auto C = gen::random_category(rng, 2);
        auto h = holim(constant_diagram(C, point(2)), 2);
        for (int n = 0; n <= 2; ++n) EXPECT_EQ(h.space->size(n), 1);
    }
}

TEST(Holim, TerminalIsValue) {
    auto X = gen::codiscrete_nerve(2, 2);
    auto h = holim(constant_diagram(terminal_category(), X), 2);
    for (int n = 0; n <= 2; ++n) EXPECT_EQ(h.space->size(n), X->size(n));
}

TEST(Holim, StrictPullbackAtLevelZero) {
    // X -> Y <- Z with discrete values; the left leg is a Kan fibration
    auto C = cospan_category();
    auto X = gen::discrete_set(3, 2);
    auto Y = gen::discrete_set(2, 2);
    auto Zs = gen::discrete_set(2, 2);
    auto f = gen::object_function(X, Y, {0, 0, 1});
    auto g = gen::object_function(Zs, Y, {0, 1});
    std::vector<SimplicialMap> along(Z(C->num_morphisms()));
    for (int m = 0; m < C->num_morphisms(); ++m) {
        if (C->is_identity(m)) {
            along[Z(m)] = SimplicialMap::identity(std::vector<SSetPtr>{X, Y, Zs}[Z(C->src(m))]);
        } else {
            along[Z(m)] = C->src(m) == 0 ? f : g;
        }
    }
    auto F = make_diagram(C, {X, Y, Zs}, along);
    auto pb = pullback(f, g);
    EXPECT_EQ(holim(F, 1).space->size(0), pb.object->size(0));
    EXPECT_EQ(pb.object->size(0), 3);
}

TEST(Dugger, TerminalIsIdentity) {
    auto X = gen::codiscrete_nerve(2, 2);
    auto q = dugger_Q(constant_diagram(terminal_category(), X));
    EXPECT_TRUE(q.q.comp[0].bijective());
}

TEST(Dugger, PointOverInterval) {
    auto q = dugger_Q(constant_diagram(linear_order(1), point(3)));
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(q.qf->value(1).size(n), n + 2);
}

TEST(Dugger, ChainCountFormula) {
    gen::Rng rng(54);
    for (int t = 0; t < 10; ++t) {
        auto C = gen::random_category(rng, 2);
        auto F = gen::random_diagram(rng, C, 2);
        auto q = dugger_Q(F);
        for (int c = 0; c < C->num_objects(); ++c) {
            for (int n = 0; n <= 2; ++n) EXPECT_EQ(q.qf->value(c).size(n), chain_count(F, c, n));
            EXPECT_TRUE(q.q.comp[Z(c)].surjective());
            EXPECT_EQ(check_presheaf_laws(q.qf->value(c)), std::nullopt);
        }
    }
}

TEST(Dugger, QIsConsistentWithWeq) {
    for (const auto& fx : gen::kan_fixtures(2)) {
        auto q = dugger_Q(fx.diagram);
        for (int c = 0; c < fx.diagram->cat->num_objects(); ++c) {
            auto w = weq_evidence(q.q.comp[Z(c)], 1);
            EXPECT_EQ(w.verdict, WeqVerdict::Consistent) << fx.name << ": " << w.reason;
        }
    }
}

TEST(Dugger, ProductComparison) {
    gen::Rng rng(55);
    for (int t = 0; t < 3; ++t) {
        auto C = gen::random_index(rng, 2);
        auto A = gen::quotient_diagram(C, gen::random_quotients(rng, C, 2), 2);
        auto F = gen::quotient_diagram(C, gen::random_quotients(rng, C, 2), 2);
        auto cmp = dugger_product_comparison(A, F);
        EXPECT_EQ(cmp.check(), std::nullopt);
        for (int c = 0; c < C->num_objects(); ++c) {
            auto w = weq_evidence(cmp.comp[Z(c)], 1);
            EXPECT_EQ(w.verdict, WeqVerdict::Consistent) << w.reason;
        }
    }
}

TEST(InternalHom, PointExponents) {
    gen::Rng rng(56);
    auto C = gen::random_category(rng, 2);
    auto G = gen::random_diagram(rng, C, 2);
    auto pt = constant_diagram(C, point(2));
    auto gp = internal_hom(pt, G, 2);
    auto pf = internal_hom(G, pt, 2);
    for (int c = 0; c < C->num_objects(); ++c) {
        for (int n = 0; n <= 2; ++n) {
            EXPECT_EQ(gp.hom->value(c).size(n), G->value(c).size(n));
            EXPECT_EQ(pf.hom->value(c).size(n), 1);
        }
    }
}

TEST(InternalHom, Currying) {
    gen::Rng rng(57);
    int nontrivial = 0;
    for (int t = 0; t < 6; ++t) {
        auto C = gen::random_category(rng, 2);
        auto E = gen::random_diagram(rng, C, 1);
        auto F = gen::random_diagram(rng, C, 1);
        auto G = gen::random_diagram(rng, C, 1);
        auto gf = internal_hom(F, G, 1);
        auto rep = check_currying(E, gf);
        EXPECT_TRUE(rep.bijective) << rep.witness;
        nontrivial += rep.left > 1;
    }
    EXPECT_GE(nontrivial, 2);
}

TEST(KanExtension, AlongIdentity) {
    gen::Rng rng(58);
    auto C = gen::random_category(rng, 2);
    auto F = gen::random_diagram(rng, C, 2);
    auto id = CatFunctor::identity(C);
    auto l = lan(id, F);
    auto r = ran(id, F);
    for (int c = 0; c < C->num_objects(); ++c) {
        EXPECT_TRUE(l.unit.comp[Z(c)].bijective());
        EXPECT_TRUE(r.unit.comp[Z(c)].bijective());
    }
}

TEST(KanExtension, ToTerminalIsColimitAndLimit) {
    gen::Rng rng(59);
    for (int t = 0; t < 5; ++t) {
        auto C = gen::random_category(rng, 2);
        auto F = gen::random_diagram(rng, C, 2);
        auto T = terminal_category();
        CatFunctor pi{C, T, std::vector<int>(Z(C->num_objects()), 0), std::vector<int>(Z(C->num_morphisms()), 0)};
        auto l = lan(pi, F);
        auto r = ran(pi, F);
        for (int n = 0; n <= 2; ++n) {
            EXPECT_EQ(l.value->value(0).size(n), colimit_count(F, n));
            EXPECT_EQ(r.value->value(0).size(n), limit_count(F, n));
        }
    }
}

TEST(KanExtension, AdjunctionBijections) {
    gen::Rng rng(60);
    int nontrivial = 0;
    for (int t = 0; t < 8; ++t) {
        auto C = gen::random_category(rng, 2);
        auto D = gen::random_category(rng, 2);
        auto pi = gen::random_functor(rng, C, D);
        auto F = gen::random_diagram(rng, C, 2);
        auto Y = gen::random_diagram(rng, D, 2);
        auto l = check_lan_adjunction(pi, lan(pi, F), Y);
        auto r = check_ran_adjunction(pi, ran(pi, F), Y);
        EXPECT_TRUE(l.bijective) << l.witness;
        EXPECT_TRUE(r.bijective) << r.witness;
        nontrivial += (l.left > 1) + (r.left > 1);
    }
    EXPECT_GE(nontrivial, 4);
}

TEST(KanExtension, HomotopyLeftKanExtension) {
    auto C = linear_order(1);
    auto F = constant_diagram(C, point(2));
    CatFunctor pi{C, terminal_category(), {0, 0}, {0, 0, 0}};
    auto h = ho_lan(pi, F);
    // hocolim of a point over [1] is contractible
    auto rep = homology(h.value->value(0), 1);
    EXPECT_TRUE(rep.is_point()) << rep.str();
}

TEST(MappingSpace, AdjunctionStep) {
    gen::Rng rng(61);
    for (int t = 0; t < 4; ++t) {
        auto C = gen::random_category(rng, 2);
        auto F = gen::random_diagram(rng, C, 2);
        auto G = gen::random_diagram(rng, C, 2);
        auto rep = mapping_space_steps(F, G, 2);
        EXPECT_TRUE(rep.adjunction_bijective);
        EXPECT_EQ(rep.slice_maps, rep.shriek_maps);
    }
}

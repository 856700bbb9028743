#include <gtest/gtest.h>

#include <map>
#include <random>

#include "ssr/error.hpp"
#include "ssr/generators.hpp"
#include "ssr/rectify.hpp"

using namespace ssr;

namespace {

// The composite z_n read off a rectified simplex, as a map to the value.
SimplicialMap last_entry(const Rectified& r, const SSetPtr& x) {
    return SimplicialMap::from_fn(r.total(), x, [&](int n, int s) { return r.decode(n, s).z.back(); });
}

void expect_bijection_over(const Presentation& p, const Rectified& m) {
    EXPECT_EQ(p.to_minimal.check(), std::nullopt);
    EXPECT_EQ(p.from_minimal.check(), std::nullopt);
    EXPECT_TRUE(p.to_minimal.bijective());
    EXPECT_TRUE(p.from_minimal.then(p.to_minimal) == SimplicialMap::identity(m.total()));
    EXPECT_TRUE(p.to_minimal.then(m.slice.proj) == p.slice.proj);
    for (int n = 0; n <= m.total()->cap(); ++n) EXPECT_EQ(p.slice.total->size(n), m.total()->size(n));
}

}  // namespace

TEST(Rectify, TerminalIndexRecoversValue) {
    auto x = standard_simplex(2, 3);
    auto F = constant_diagram(terminal_category(), x);
    auto r = rectify(F, 3);
    auto m = last_entry(r, x);
    EXPECT_EQ(m.check(), std::nullopt);
    EXPECT_TRUE(m.bijective());
}

TEST(Rectify, ConstantPointGivesNerve) {
    gen::Rng rng(11);
    for (int t = 0; t < 5; ++t) {
        auto C = gen::random_index(rng, 3);
        auto r = rectify(constant_diagram(C, standard_simplex(0, 3)), 3);
        EXPECT_TRUE(r.slice.proj.bijective());
    }
}

TEST(Rectify, IdentityOnPointOverIntervalIsDelta1) {
    auto r = rectify(constant_diagram(linear_order(1), standard_simplex(0, 3)), 3);
    // one section per α: [n] -> [1]
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(r.total()->size(n), n + 2);
}

TEST(Rectify, MatchingAndPresheafLaws) {
    gen::Rng rng(12);
    for (int t = 0; t < 10; ++t) {
        auto F = gen::random_interval_diagram(rng, gen::random_index(rng, 3), 3);
        auto r = rectify(F, 3);
        EXPECT_EQ(check_matching(r), std::nullopt);
        EXPECT_EQ(check_presheaf_laws(*r.total()), std::nullopt);
        EXPECT_EQ(r.slice.proj.check(), std::nullopt);
    }
}

TEST(Rectify, ProjectionFormula) {
    gen::Rng rng(13);
    auto F = gen::random_interval_diagram(rng, gen::random_index(rng, 3), 3);
    auto r = rectify(F, 3);
    for (int n = 0; n <= 3; ++n) {
        for (int s = 0; s < r.total()->size(n); ++s) {
            for (int k = 0; k <= 3; ++k) {
                for (const auto& w : DeltaMap::all(k, n)) {
                    EXPECT_EQ(r.slice.proj(k, r.total()->act(w, s)), r.nerve->act(w, r.slice.proj(n, s)));
                }
            }
        }
    }
}

TEST(Rectify, FullFamilyRoundTrip) {
    gen::Rng rng(14);
    int checked = 0;
    while (checked < 100) {
        auto F = gen::random_interval_diagram(rng, gen::random_index(rng, 3), 3);
        auto r = rectify(F, 3);
        for (int k = 0; k < 5 && checked < 100; ++k) {
            int n = std::uniform_int_distribution<int>(0, 3)(rng);
            if (r.total()->size(n) == 0) continue;
            int s = std::uniform_int_distribution<int>(0, r.total()->size(n) - 1)(rng);
            auto x = to_full_family(r, n, s);
            EXPECT_EQ(check_full_family(r, n, r.decode(n, s).alpha, x), std::nullopt);
            EXPECT_EQ(from_full_family(r, n, r.decode(n, s).alpha, x), s);
            ++checked;
        }
    }
}

TEST(Rectify, FullFamilyAtZeroAndAtConstants) {
    gen::Rng rng(15);
    auto F = gen::random_interval_diagram(rng, linear_order(2), 3, false);
    auto r = rectify(F, 3);
    for (int s = 0; s < r.total()->size(0); ++s) {
        auto x = to_full_family(r, 0, s);
        EXPECT_EQ(x.at(DeltaMap::identity(0)), r.decode(0, s).z[0]);
    }
    // x_u for u constant at j: the last vertex of z_j, totally degenerated
    for (int s = 0; s < r.total()->size(2); ++s) {
        auto d = r.decode(2, s);
        auto x = to_full_family(r, 2, s);
        for (int j = 0; j <= 2; ++j) {
            const auto& X = F->value(d.chain.obj[static_cast<std::size_t>(j)]);
            int v = X.vertex(j, d.z[static_cast<std::size_t>(j)], j);
            for (int k = 0; k <= 3; ++k) EXPECT_EQ(x.at(DeltaMap::constant(k, 2, j)), X.act(DeltaMap::constant(k, 0, 0), v));
        }
    }
}

TEST(Rectify, BrokenFamilyIsRejected) {
    auto F = constant_diagram(linear_order(1), standard_simplex(1, 3));
    auto r = rectify(F, 3);
    int s = -1;
    for (int t = 0; t < r.total()->size(1); ++t) {
        if (r.total()->nondegenerate(1, t)) s = t;
    }
    ASSERT_GE(s, 0);
    auto x = to_full_family(r, 1, s);
    auto u = DeltaMap::constant(0, 1, 0);
    x[u] = 1 - x[u];
    EXPECT_NE(check_full_family(r, 1, r.decode(1, s).alpha, x), std::nullopt);
    EXPECT_THROW(from_full_family(r, 1, r.decode(1, s).alpha, x), InvariantError);
}

TEST(Rectify, SigmaSectionAtLevelOne) {
    auto F = constant_diagram(linear_order(1), standard_simplex(1, 2));
    auto r = rectify(F, 2);
    auto sig = rectify_sigma(r);
    // keys carry α and the three entries y_[0,0], y_[1,1], y_[0,1]
    for (const auto& k : sig.slice.total->keys(1)) EXPECT_EQ(k.size(), 4u);
    expect_bijection_over(sig, r);
}

TEST(Rectify, ConstantPointOneSectionPerChain) {
    auto C = span_category();
    auto r = rectify(constant_diagram(C, standard_simplex(0, 3)), 3);
    auto sig = rectify_sigma(r);
    auto lam = rectify_lambda(r);
    for (int n = 0; n <= 3; ++n) {
        EXPECT_EQ(sig.slice.total->size(n), r.nerve->size(n));
        EXPECT_EQ(lam.slice.total->size(n), r.nerve->size(n));
    }
}

TEST(Rectify, ThreePresentationsAgree) {
    gen::Rng rng(16);
    for (int t = 0; t < 20; ++t) {
        auto F = gen::random_interval_diagram(rng, gen::random_index(rng, 3), 3);
        auto r = rectify(F, 3);
        auto sig = rectify_sigma(r);
        auto lam = rectify_lambda(r);
        EXPECT_EQ(check_presheaf_laws(*sig.slice.total), std::nullopt);
        EXPECT_EQ(check_presheaf_laws(*lam.slice.total), std::nullopt);
        expect_bijection_over(sig, r);
        expect_bijection_over(lam, r);
    }
}

TEST(Rectify, MonomorphismsArePreserved) {
    gen::Rng rng(17);
    for (int t = 0; t < 10; ++t) {
        auto inj = gen::random_injection(rng, gen::random_index(rng, 3), 3);
        ASSERT_TRUE(inj.map.objectwise_injective());
        auto rs = rectify(inj.source, 3);
        auto rt = rectify(inj.target, 3, rs.nerve);
        auto m = rectify_map(inj.map, rs, rt);
        EXPECT_EQ(m.check(), std::nullopt);
        EXPECT_TRUE(m.injective());
        EXPECT_TRUE(m.then(rt.slice.proj) == rs.slice.proj);
    }
}

TEST(Rectify, MapsCompose) {
    gen::Rng rng(18);
    auto C = gen::random_index(rng, 3);
    auto q = gen::random_quotients(rng, C, 3);
    auto q2 = gen::random_coarsening(rng, C, q);
    auto q3 = gen::random_coarsening(rng, C, q2);
    auto F = gen::quotient_diagram(C, q, 3);
    auto G = gen::quotient_diagram(C, q2, 3);
    auto H = gen::quotient_diagram(C, q3, 3);
    auto f = gen::quotient_map(F, q, G, q2);
    auto g = gen::quotient_map(G, q2, H, q3);
    auto rF = rectify(F, 3);
    auto rG = rectify(G, 3, rF.nerve);
    auto rH = rectify(H, 3, rF.nerve);
    EXPECT_TRUE(rectify_map(f.then(g), rF, rH) == rectify_map(f, rF, rG).then(rectify_map(g, rG, rH)));
    EXPECT_TRUE(rectify_map(NatTrans::identity(F), rF, rF) == SimplicialMap::identity(rF.total()));
}

TEST(Rectify, PsiRoundTrip) {
    gen::Rng rng(19);
    for (int t = 0; t < 20; ++t) {
        auto C = gen::random_index(rng, 3);
        auto N = nerve(C, 2);
        auto A = gen::random_subobject(rng, N, 2, 3);
        auto P = psi_inverse(A);
        auto B = psi(P);
        EXPECT_EQ(B.proj.check(), std::nullopt);
        // [b, x] ↦ the x-th simplex of A over b
        auto back = SimplicialMap::from_fn(B.total, A.total, [&](int n, int s) {
            const auto& k = B.total->key(n, s);
            int seen = 0;
            for (int a = 0; a < A.total->size(n); ++a) {
                if (A.proj(n, a) == k[0] && seen++ == k[1]) return a;
            }
            return -1;
        });
        EXPECT_EQ(back.check(), std::nullopt);
        EXPECT_TRUE(back.bijective());
        EXPECT_TRUE(back.then(A.proj) == B.proj);
    }
}

TEST(Rectify, PsiOfSingletonIsIdentity) {
    auto N = nerve(cospan_category(), 3);
    SlicePresheaf P{N, {}, [](const DeltaMap&, int, int) { return 0; }};
    for (int n = 0; n <= 3; ++n) P.size.emplace_back(static_cast<std::size_t>(N->size(n)), 1);
    auto A = psi(P);
    EXPECT_TRUE(A.proj.bijective());
    auto Q = psi_inverse({N, SimplicialMap::identity(N)});
    for (int n = 0; n <= 3; ++n) {
        for (int b = 0; b < N->size(n); ++b) EXPECT_EQ(Q.size[static_cast<std::size_t>(n)][static_cast<std::size_t>(b)], 1);
    }
}

TEST(Rectify, ChangeOfIndexAlongIdentity) {
    gen::Rng rng(20);
    auto F = gen::random_interval_diagram(rng, gen::random_index(rng, 3), 3);
    auto r = rectify(F, 3);
    auto c = change_of_index(CatFunctor::identity(F->cat), r, r.nerve);
    EXPECT_EQ(c.verify(), std::nullopt);
    EXPECT_TRUE(c.top == SimplicialMap::identity(r.total()));
}

TEST(Rectify, FibreOverVertexOne) {
    // F = (Δ⁰ -> Δ¹ at vertex 1) on [1]; the fibre over vertex 1 is Δ¹
    auto one = linear_order(1);
    auto X = standard_simplex(0, 3);
    auto Y = standard_simplex(1, 3);
    std::vector<SimplicialMap> along;
    for (int m = 0; m < one->num_morphisms(); ++m) {
        if (one->is_identity(m)) {
            along.push_back(SimplicialMap::identity(one->src(m) == 0 ? X : Y));
        } else {
            along.push_back(SimplicialMap::from_keys(X, Y, [](int n, const Key&) { return Key(static_cast<std::size_t>(n) + 1, 1); }));
        }
    }
    auto F = make_diagram(one, {X, Y}, along);
    auto r = rectify(F, 3);
    auto psi_f = CatFunctor::between_posets(linear_order(0), one, {1});
    auto c = change_of_index(psi_f, r);
    EXPECT_EQ(c.verify(), std::nullopt);
    auto m = last_entry(c.pulled, Y);
    EXPECT_TRUE(m.bijective());
    EXPECT_EQ(m.check(), std::nullopt);
}

TEST(Rectify, ChangeOfIndexAlongRandomArrows) {
    gen::Rng rng(21);
    for (int t = 0; t < 10; ++t) {
        auto F = gen::random_interval_diagram(rng, gen::random_index(rng, 3), 3);
        auto r = rectify(F, 3);
        auto c = change_of_index(gen::random_arrow(rng, F->cat), r);
        EXPECT_EQ(c.verify(), std::nullopt);
    }
}

TEST(Rectify, ChangeOfIndexPastes) {
    gen::Rng rng(22);
    for (int t = 0; t < 5; ++t) {
        auto F = gen::random_interval_diagram(rng, gen::random_index(rng, 3), 3);
        auto r = rectify(F, 3);
        auto psi1 = gen::random_arrow(rng, F->cat);
        // [0] -> [1] at a random vertex, then the arrow
        auto vtx = CatFunctor::between_posets(linear_order(0), linear_order(1), {t % 2});
        auto outer = change_of_index(psi1, r);
        auto inner = change_of_index(vtx, outer.pulled);
        auto whole = change_of_index(vtx.then(psi1), r);
        EXPECT_TRUE(whole.pulled.total()->same_as(*inner.pulled.total()));
        EXPECT_TRUE(whole.top == inner.top.then(outer.top));
    }
}

TEST(RShriek, VertexGivesRepresentable) {
    auto C = span_category();
    auto N = nerve(C, 2);
    for (int c = 0; c < C->num_objects(); ++c) {
        auto A = gen::generated_subobject(N, {{0, c}});
        auto r = r_shriek(A, C, 2);
        for (int c2 = 0; c2 < C->num_objects(); ++c2) {
            for (int m = 0; m <= 2; ++m) EXPECT_EQ(r.diagram->value(c2).size(m), static_cast<int>(C->hom(c, c2).size()));
            EXPECT_TRUE(r.diagram->value(c2).nondegenerate_at(1).empty());
        }
    }
}

TEST(RShriek, TerminalIndexRecoversSource) {
    auto C = terminal_category();
    auto N = nerve(C, 2);
    auto X = horn(2, 1, 2);
    auto A = SliceObject{X, SimplicialMap::from_fn(X, N, [](int, int) { return 0; })};
    auto r = r_shriek(A, C, 2);
    for (int m = 0; m <= 2; ++m) EXPECT_EQ(r.diagram->value(0).size(m), X->size(m));
    EXPECT_EQ(r.diagram->value(0).check_identities(), std::nullopt);
}

TEST(RShriek, AdjunctionBijection) {
    gen::Rng rng(23);
    std::size_t nontrivial = 0;
    for (int t = 0; t < 10; ++t) {
        auto C = gen::random_category(rng, 2);
        auto N = nerve(C, 2);
        auto A = gen::random_subobject(rng, N, 2, 3);
        auto F = gen::random_diagram(rng, C, 2);
        auto rf = rectify(F, 2, N);
        auto rs = r_shriek(A, C, 2);
        auto left = all_slice_maps(A.proj, rf.slice.proj);
        auto right = all_nat_trans(rs.diagram, F);
        EXPECT_EQ(left.size(), right.size()) << C->name();
        if (left.size() > 1) ++nontrivial;
        for (const auto& phi : left) {
            auto flat = adjunct_flat(rs, rf, phi);
            EXPECT_EQ(flat.check(), std::nullopt);
            EXPECT_TRUE(adjunct_sharp(rs, rf, flat) == phi);
        }
        for (const auto& psi_t : right) EXPECT_TRUE(adjunct_flat(rs, rf, adjunct_sharp(rs, rf, psi_t)) == psi_t);
    }
    EXPECT_GE(nontrivial, 3u);
}

TEST(RShriek, AdjunctionIsNatural) {
    gen::Rng rng(24);
    for (int t = 0; t < 5; ++t) {
        auto C = gen::random_index(rng, 2);
        auto N = nerve(C, 2);
        auto A = gen::random_subobject(rng, N, 2, 2);
        auto A2 = gen::generated_subobject(N, {{0, 0}});
        // A2 ⊆ A ∪ A2; use the union as the ambient object
        std::vector<std::pair<int, int>> gens{{0, 0}};
        for (int n = 0; n <= 2; ++n) {
            for (int s = 0; s < A.total->size(n); ++s) gens.emplace_back(n, A.proj(n, s));
        }
        auto big = gen::generated_subobject(N, gens);
        auto k = SimplicialMap::from_fn(A2.total, big.total, [&](int n, int s) { return big.total->index_of(n, A2.total->key(n, s)); });
        auto inj = gen::random_injection(rng, C, 2);
        auto rF = rectify(inj.source, 2, N);
        auto rG = rectify(inj.target, 2, N);
        auto rs_big = r_shriek(big, C, 2);
        auto rs_small = r_shriek(A2, C, 2);
        auto rk = r_shriek_map(k, rs_small, rs_big);
        EXPECT_EQ(rk.check(), std::nullopt);
        auto fstar = rectify_map(inj.map, rF, rG);
        for (const auto& phi : all_slice_maps(big.proj, rF.slice.proj)) {
            auto flat = adjunct_flat(rs_big, rF, phi);
            EXPECT_TRUE(adjunct_flat(rs_small, rF, k.then(phi)) == rk.then(flat));
            EXPECT_TRUE(adjunct_flat(rs_big, rG, phi.then(fstar)) == flat.then(inj.map));
        }
    }
}

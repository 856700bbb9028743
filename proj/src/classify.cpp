#include "ssr/classify.hpp"

#include <memory>
#include <sstream>
#include <unordered_map>

#include "ssr/error.hpp"

namespace ssr {

namespace {

inline std::size_t Z(int x) { return static_cast<std::size_t>(x); }

std::vector<int> iota_values(int n) {
    std::vector<int> v(Z(n) + 1);
    for (int i = 0; i <= n; ++i) v[Z(i)] = i;
    return v;
}

int top_simplex(const SSet& simplex, int n) { return simplex.index_of(n, iota_values(n)); }

bool same_set(const SSetPtr& a, const SSetPtr& b) { return a == b || a->same_as(*b); }

std::vector<DeltaMap> maps_into(int n, int cap) {
    std::vector<DeltaMap> out;
    for (int m = 0; m <= cap; ++m) {
        for (auto& v : DeltaMap::all(m, n)) out.push_back(std::move(v));
    }
    return out;
}

/// Δᵐ -> Δⁿ, δ ↦ u ∘ δ.
SimplicialMap delta_map(const DeltaMap& u, const SSetPtr& dm, const SSetPtr& dn) {
    return SimplicialMap::from_fn(dm, dn, [&](int k, int d) {
        return dn->index_of(k, compose(u, DeltaMap(u.dom(), dm->key(k, d))).values());
    });
}

// Small caches so repeated constructions share objects.
struct Shapes {
    int cap;
    std::vector<SSetPtr> simplex;
    std::vector<CatPtr> order;
    std::vector<SSetPtr> order_nerve;
    explicit Shapes(int c, int maxk = 0) : cap(c) {
        for (int k = 0; k <= std::max(c, maxk); ++k) {
            simplex.push_back(standard_simplex(k, c));
            order.push_back(linear_order(k));
            order_nerve.push_back(nerve(order.back(), c));
        }
    }
};

std::optional<std::string> check_over(const SimplicialMap& p, const SimplicialMap& bottom, const Square& sq) {
    const auto& X = *p.source();
    const auto& B = *bottom.source();
    const auto& P = *sq.object;
    const int cap = std::min({p.cap(), bottom.cap(), sq.top.cap(), sq.fib.cap()});
    for (int k = 0; k <= cap; ++k) {
        std::unordered_map<int, std::vector<int>> over;  // simplex of the base -> simplices of B over it
        for (int d = 0; d < B.size(k); ++d) over[bottom(k, d)].push_back(d);
        std::size_t expected = 0;
        for (int x = 0; x < X.size(k); ++x) {
            auto it = over.find(p(k, x));
            if (it != over.end()) expected += it->second.size();
        }
        std::unordered_map<long long, int> seen;
        for (int y = 0; y < P.size(k); ++y) {
            const int b = sq.fib(k, y);
            const int x = sq.top(k, y);
            if (p(k, x) != bottom(k, b)) return "square does not commute at " + P.describe(k, y);
            auto [it, fresh] = seen.emplace(static_cast<long long>(b) * X.size(k) + x, y);
            if (!fresh) {
                return "not a pullback: " + P.describe(k, it->second) + " and " + P.describe(k, y) + " have the same image";
            }
        }
        if (seen.size() != expected) {
            return "not a pullback at level " + std::to_string(k) + ": " + std::to_string(seen.size()) + " simplices, pullback set has " +
                   std::to_string(expected);
        }
    }
    return std::nullopt;
}

}  // namespace

// ---- SSimplex -----------------------------------------------------------------

std::optional<std::string> check_cartesian(const SimplicialMap& fib, const DeltaMap& u, const Square& sq) {
    if (sq.fib.target()->cap() < 0) return "empty square";
    const auto dm = sq.fib.target();
    return check_over(fib, delta_map(u, dm, fib.target()), sq);
}

std::optional<std::string> SSimplex::verify() const {
    if (auto e = fib.check()) return "fibration map: " + *e;
    const auto id = DeltaMap::identity(n);
    auto it = chosen.find(id);
    if (it == chosen.end()) return "no square at the identity";
    if (it->second.object != total() && !it->second.object->same_as(*total())) return "square at the identity is not on X";
    if (!(it->second.top == SimplicialMap::identity(total()))) return "square at the identity is not the identity";
    for (const auto& [u, sq] : chosen) {
        if (auto e = sq.top.check()) return "top map over " + u.str() + ": " + *e;
        if (auto e = check_cartesian(fib, u, sq)) return "square over " + u.str() + ": " + *e;
    }
    return std::nullopt;
}

// ---- families -------------------------------------------------------------------

std::optional<std::string> ClassifyingFamily::check_consistency() const {
    const auto& L = *base;
    for (int n = 0; n <= cap(); ++n) {
        for (int a = 0; a < L.size(n); ++a) {
            const auto& A = at[Z(n)][Z(a)];
            auto where = [&](const DeltaMap& v) { return "A(" + L.describe(n, a) + "; " + v.str() + ")"; };
            for (const auto& [v, sq] : A.chosen) {
                const int m = v.dom();
                const int b = L.act(v, a);
                const auto& B = at[Z(m)][Z(b)];
                if (!same_set(sq.object, B.total())) return where(v) + " differs from A(" + L.describe(m, b) + ")";
                if (!(sq.fib == B.fib)) return where(v) + " has a different projection from A(" + L.describe(m, b) + ")";
                for (const auto& [w, sq2] : B.chosen) {
                    auto vw = compose(v, w);
                    auto it = A.chosen.find(vw);
                    if (it == A.chosen.end()) return where(vw) + " is missing";
                    const auto& outer = it->second.top;
                    for (int k = 0; k <= outer.cap(); ++k) {
                        for (int y = 0; y < sq2.object->size(k); ++y) {
                            if (outer(k, y) != sq.top(k, sq2.top(k, y))) {
                                return "chosen squares do not paste: " + where(vw) + " vs " + where(v) + " after " + w.str() + " at " +
                                       sq2.object->describe(k, y);
                            }
                        }
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> compare_families(const ClassifyingFamily& x, const ClassifyingFamily& y) {
    if (!same_set(x.base, y.base)) return "different bases";
    if (x.cap() != y.cap()) return "different caps";
    const auto& L = *x.base;
    for (int n = 0; n <= x.cap(); ++n) {
        for (int a = 0; a < L.size(n); ++a) {
            const auto& A = x.at[Z(n)][Z(a)];
            const auto& B = y.at[Z(n)][Z(a)];
            const std::string at = " at " + L.describe(n, a);
            if (!same_set(A.total(), B.total())) return "total spaces differ" + at;
            if (!(A.fib == B.fib)) return "projections differ" + at;
            if (A.chosen.size() != B.chosen.size()) return "different numbers of chosen squares" + at;
            for (const auto& [v, sq] : A.chosen) {
                auto it = B.chosen.find(v);
                if (it == B.chosen.end()) return "no square over " + v.str() + at;
                if (!same_set(sq.object, it->second.object)) return "square objects over " + v.str() + " differ" + at;
                if (!(sq.fib == it->second.fib)) return "square projections over " + v.str() + " differ" + at;
                if (!(sq.top == it->second.top)) return "square top maps over " + v.str() + " differ" + at;
            }
        }
    }
    return std::nullopt;
}

SimplicialMap yoneda(const SSetPtr& x, int n, int s, const SSetPtr& simplex) {
    return SimplicialMap::from_fn(simplex, x, [&](int k, int d) { return x->act(DeltaMap(n, simplex->key(k, d)), s); });
}

SimplicialMap nerve_to_simplex(const SSetPtr& nerve_n, const SSetPtr& simplex) {
    return SimplicialMap::from_fn(nerve_n, simplex, [&](int k, int c) {
        std::vector<int> v(Z(k) + 1);
        for (int i = 0; i <= k; ++i) v[Z(i)] = nerve_n->key(0, nerve_n->vertex(k, c, i))[0];
        return simplex->index_of(k, v);
    });
}

CatFunctor chain_functor(const CatPtr& c, const Chain& chain) {
    auto src = linear_order(chain.dim());
    CatFunctor f{src, c, chain.obj, {}};
    for (int m = 0; m < src->num_morphisms(); ++m) f.mor.push_back(chain.between(*c, src->src(m), src->tgt(m)));
    return f;
}

PullbackChooser canonical_chooser(const SliceObject& p) {
    const int cap = std::min(p.total->cap(), p.base()->cap());
    auto shapes = std::make_shared<Shapes>(cap);
    return [p, shapes](int n, int a) {
        auto pb = pullback(yoneda(p.base(), n, a, shapes->simplex[Z(n)]), p.proj);
        return Square{pb.object, pb.to_left, pb.to_right};
    };
}

ClassifyingFamily family_from_fibration(const SliceObject& p, const PullbackChooser& chooser) {
    const auto& L = *p.base();
    const int cap = std::min(p.total->cap(), L.cap());
    Shapes shapes(cap);
    ClassifyingFamily fam;
    fam.base = p.base();
    std::vector<std::vector<Square>> sq(Z(cap) + 1);
    for (int n = 0; n <= cap; ++n) {
        for (int a = 0; a < L.size(n); ++a) {
            auto s = chooser(n, a);
            if (s.fib.target()->cap() < cap || s.fib.target()->size(0) != n + 1) {
                throw InvariantError("family_from_fibration: square at " + L.describe(n, a) + " is not over the " + std::to_string(n) +
                                     "-simplex");
            }
            if (auto e = check_over(p.proj, yoneda(p.base(), n, a, s.fib.target()), s)) {
                throw InvariantError("family_from_fibration: chosen square at " + L.describe(n, a) + " is not cartesian: " + *e);
            }
            sq[Z(n)].push_back(std::move(s));
        }
    }
    fam.at.resize(Z(cap) + 1);
    fam.to_total.resize(Z(cap) + 1);
    for (int n = 0; n <= cap; ++n) {
        for (int a = 0; a < L.size(n); ++a) {
            const auto& S = sq[Z(n)][Z(a)];
            const auto& X = *S.object;
            // (simplex of Δⁿ, simplex of A) -> simplex of A(a), per level
            std::vector<std::unordered_map<long long, int>> lookup(Z(cap) + 1);
            for (int k = 0; k <= cap; ++k) {
                for (int x = 0; x < X.size(k); ++x) {
                    lookup[Z(k)][static_cast<long long>(S.fib(k, x)) * p.total->size(k) + S.top(k, x)] = x;
                }
            }
            SSimplex A{n, S.fib, {}};
            for (const auto& v : maps_into(n, cap)) {
                const int m = v.dom();
                const int b = L.act(v, a);
                const auto& T = sq[Z(m)][Z(b)];
                if (v.is_identity()) {
                    A.chosen.emplace(v, Square{S.object, S.fib, SimplicialMap::identity(S.object)});
                    continue;
                }
                auto V = delta_map(v, shapes.simplex[Z(m)], S.fib.target());
                auto top = SimplicialMap::from_fn(T.object, S.object, [&](int k, int y) {
                    auto it = lookup[Z(k)].find(static_cast<long long>(V(k, T.fib(k, y))) * p.total->size(k) + T.top(k, y));
                    if (it == lookup[Z(k)].end()) {
                        throw InvariantError("family_from_fibration: no induced map for " + T.object->describe(k, y));
                    }
                    return it->second;
                });
                A.chosen.emplace(v, Square{T.object, T.fib, std::move(top)});
            }
            fam.at[Z(n)].push_back(std::move(A));
            fam.to_total[Z(n)].push_back(S.top);
        }
    }
    if (auto e = fam.check_consistency()) throw InvariantError("family_from_fibration: " + *e);
    return fam;
}

// ---- γ ----------------------------------------------------------------------------

namespace {

void require_kan(const DiagramPtr& x, int cap, const char* who) {
    if (cap < 1) return;
    for (int c = 0; c < x->cat->num_objects(); ++c) {
        auto v = is_kan_complex(x->at[Z(c)], cap - 1);
        if (!v.ok) {
            auto pt = point(x->at[Z(c)]->cap());
            throw InvariantError(std::string(who) + ": value at " + x->cat->object_name(c) + " is not Kan: " +
                                 v.witness->describe(x->value(c), *pt));
        }
    }
}

SSimplex gamma_impl(const DiagramPtr& x, const Shapes& shapes) {
    const int n = x->cat->num_objects() - 1;
    const int cap = shapes.cap;
    auto R = rectify(x, cap, shapes.order_nerve[Z(n)]);
    SSimplex out{n, R.slice.proj.then(nerve_to_simplex(R.nerve, shapes.simplex[Z(n)])), {}};
    for (const auto& u : maps_into(n, cap)) {
        if (u.is_identity()) {
            out.chosen.emplace(u, Square{R.total(), out.fib, SimplicialMap::identity(R.total())});
            continue;
        }
        const int m = u.dom();
        CatFunctor uf{shapes.order[Z(m)], x->cat, u.values(), {}};
        for (int e = 0; e < uf.src->num_morphisms(); ++e) {
            uf.mor.push_back(x->cat->hom(u(uf.src->src(e)), u(uf.src->tgt(e)))[0]);
        }
        auto coi = change_of_index(uf, R, shapes.order_nerve[Z(m)]);
        auto fib = coi.pulled.slice.proj.then(nerve_to_simplex(coi.pulled.nerve, shapes.simplex[Z(m)]));
        out.chosen.emplace(u, Square{coi.pulled.total(), std::move(fib), coi.top});
    }
    return out;
}

}  // namespace

SSimplex gamma(const DiagramPtr& x, int cap, bool check_kan) {
    const int n = x->cat->num_objects() - 1;
    for (int i = 0; i <= n; ++i) {
        const auto& h = x->cat->hom(i, i + 1 <= n ? i + 1 : i);
        if (h.size() != 1) throw InvariantError("gamma: index is not a linear order");
    }
    if (check_kan) require_kan(x, cap, "gamma");
    return gamma_impl(x, Shapes(cap, n));
}

std::optional<std::string> check_gamma_simplicial(const DiagramPtr& x, int cap) {
    const int n = x->cat->num_objects() - 1;
    auto G = gamma(x, cap, false);
    for (const auto& u : maps_into(n, cap)) {
        auto uf = CatFunctor::between_posets(linear_order(u.dom()), x->cat, u.values());
        auto H = gamma(restrict_diagram(uf, x), cap, false);
        const auto& sq = G.chosen.at(u);
        if (!same_set(H.total(), sq.object)) return "gamma(u^*X) is not the chosen pullback along " + u.str();
        if (!(H.fib == sq.fib)) return "projections differ along " + u.str();
        for (const auto& [w, sq2] : H.chosen) {
            const auto& outer = G.chosen.at(compose(u, w));
            if (!same_set(outer.object, sq2.object) || !(outer.fib == sq2.fib)) {
                return "squares over " + u.str() + " after " + w.str() + " differ";
            }
            if (!(outer.top == sq2.top.then(sq.top))) return "top maps over " + u.str() + " after " + w.str() + " do not paste";
        }
    }
    return std::nullopt;
}

GammaC gamma_C(const DiagramPtr& f, int cap, bool check_kan) {
    if (check_kan) require_kan(f, cap, "gamma_C");
    GammaC out{f->cat, rectify(f, cap), {}};
    auto shapes = std::make_shared<Shapes>(cap);
    const auto& R = out.rect;
    auto chooser = [&](int k, int a) {
        auto chain = chain_of(*f->cat, R.nerve->key(k, a));
        auto cf = chain_functor(f->cat, chain);
        cf.src = shapes->order[Z(k)];
        auto coi = change_of_index(cf, R, shapes->order_nerve[Z(k)]);
        auto fib = coi.pulled.slice.proj.then(nerve_to_simplex(coi.pulled.nerve, shapes->simplex[Z(k)]));
        return Square{coi.pulled.total(), std::move(fib), coi.top};
    };
    out.family = family_from_fibration(R.slice, chooser);
    return out;
}

ClassifyingFamily gamma_after_nerve(const DiagramPtr& f, int cap) {
    ClassifyingFamily fam;
    fam.base = nerve(f->cat, cap);
    Shapes shapes(cap);
    fam.at.resize(Z(cap) + 1);
    for (int k = 0; k <= cap; ++k) {
        for (int a = 0; a < fam.base->size(k); ++a) {
            auto cf = chain_functor(f->cat, chain_of(*f->cat, fam.base->key(k, a)));
            cf.src = shapes.order[Z(k)];
            fam.at[Z(k)].push_back(gamma_impl(restrict_diagram(cf, f), shapes));
        }
    }
    return fam;
}

ClassifyingFamily family_pullback(const SimplicialMap& f, const ClassifyingFamily& fam) {
    if (!same_set(f.target(), fam.base)) throw InvariantError("family_pullback: map does not land in the base");
    ClassifyingFamily out;
    out.base = f.source();
    const int cap = std::min(f.cap(), fam.cap());
    out.at.resize(Z(cap) + 1);
    for (int n = 0; n <= cap; ++n) {
        for (int b = 0; b < out.base->size(n); ++b) out.at[Z(n)].push_back(fam.at[Z(n)][Z(f(n, b))]);
    }
    return out;
}

// ---- rep_fib ------------------------------------------------------------------------

SliceObject rep_fib(const ClassifyingFamily& fam) {
    if (auto e = fam.check_consistency()) throw InvariantError("rep_fib: inconsistent family: " + *e);
    auto L = fam.base;
    auto at = std::make_shared<std::vector<std::vector<SSimplex>>>(fam.at);
    // (n, a, u) -> (top image in A(a) -> simplex of A(a∘u) over the top simplex)
    using Inverse = std::unordered_map<int, int>;
    auto cache = std::make_shared<std::map<std::tuple<int, int, DeltaMap>, Inverse>>();
    auto total = SSet::build(
        "RepFib", fam.cap(),
        [L, at](int n) {
            std::vector<Key> out;
            for (int a = 0; a < L->size(n); ++a) {
                const auto& A = (*at)[Z(n)][Z(a)];
                const int t = top_simplex(*A.fib.target(), n);
                for (int x = 0; x < A.total()->size(n); ++x) {
                    if (A.fib(n, x) == t) out.push_back({a, x});
                }
            }
            return out;
        },
        [L, at, cache](const DeltaMap& u, const Key& k) {
            const int n = u.cod();
            const int m = u.dom();
            const auto& A = (*at)[Z(n)][Z(k[0])];
            const int b = L->act(u, k[0]);
            auto it = cache->find({n, k[0], u});
            if (it == cache->end()) {
                const auto& sq = A.chosen.at(u);
                const auto& B = (*at)[Z(m)][Z(b)];
                const int t = top_simplex(*B.fib.target(), m);
                Inverse inv;
                for (int y = 0; y < B.total()->size(m); ++y) {
                    if (B.fib(m, y) == t) inv[sq.top(m, y)] = y;
                }
                it = cache->emplace(std::make_tuple(n, k[0], u), std::move(inv)).first;
            }
            auto jt = it->second.find(A.total()->act(u, k[1]));
            if (jt == it->second.end()) throw InvariantError("rep_fib: restriction has no lift in the chosen pullback");
            return Key{b, jt->second};
        });
    auto proj = SimplicialMap::from_fn(total, L, [&](int n, int s) { return total->key(n, s)[0]; });
    return {total, proj};
}

SimplicialMap simplex_to_section(const SliceObject& p, const ClassifyingFamily& fam, const SliceObject& rep) {
    if (fam.to_total.empty()) throw InvariantError("simplex_to_section: family does not come from a fibration");
    return SimplicialMap::from_fn(p.total, rep.total, [&](int n, int y) {
        const int a = p.proj(n, y);
        const auto& A = fam.at[Z(n)][Z(a)];
        const auto& to = fam.to_total[Z(n)][Z(a)];
        const int t = top_simplex(*A.fib.target(), n);
        for (int x = 0; x < A.total()->size(n); ++x) {
            if (A.fib(n, x) == t && to(n, x) == y) return rep.total->index_of(n, {a, x});
        }
        throw InvariantError("simplex_to_section: no section for " + p.total->describe(n, y));
    });
}

SimplicialMap section_to_simplex(const SliceObject& p, const ClassifyingFamily& fam, const SliceObject& rep) {
    if (fam.to_total.empty()) throw InvariantError("section_to_simplex: family does not come from a fibration");
    return SimplicialMap::from_fn(rep.total, p.total, [&](int n, int s) {
        const auto& k = rep.total->key(n, s);
        return fam.to_total[Z(n)][Z(k[0])](n, k[1]);
    });
}

DiagramPtr on_point_times(const DiagramPtr& f) {
    auto pt = linear_order(0);
    auto prod = product_category(pt, f->cat);
    return restrict_diagram(product_projection_functor(prod, pt, f->cat, 1), f);
}

Classification classify_rectification(const DiagramPtr& f, int cap) {
    Classification out{gamma_C(on_point_times(f), cap, false), {}, rectify(f, cap), {}};
    out.rep = rep_fib(out.gamma.family);
    const auto& L = *out.gamma.family.base;
    const auto& rect = out.rect;
    const auto& fam = out.gamma.family;
    out.section_to_simplex = SimplicialMap::from_fn(out.rep.total, rect.total(), [&](int n, int s) {
        const auto& k = out.rep.total->key(n, s);
        // a chain in [0] × C has the same key as its projection to C
        const int alpha = rect.nerve->index_of(n, L.key(n, k[0]));
        const auto& x = fam.at[Z(n)][Z(k[0])].total()->key(n, k[1]);
        std::vector<int> z(x.begin() + 1, x.end());
        auto e = rect.encode(n, alpha, z);
        if (!e) throw InvariantError("classify: section data is not a simplex of the rectification");
        return *e;
    });
    return out;
}

std::optional<std::string> Classification::verify() const {
    if (auto e = gamma.family.check_consistency()) return "family: " + *e;
    if (auto e = section_to_simplex.check()) return "section map: " + *e;
    if (!section_to_simplex.bijective()) return "section map is not a bijection";
    for (int n = 0; n <= section_to_simplex.cap(); ++n) {
        for (int s = 0; s < rep.total->size(n); ++s) {
            const auto& want = gamma.family.base->key(n, rep.proj(n, s));
            if (rect.nerve->key(n, rect.slice.proj(n, section_to_simplex(n, s))) != want) {
                return "section map is not over N C at " + rep.total->describe(n, s);
            }
        }
    }
    // the generic round trip through the rectification over [0] × C
    auto there = simplex_to_section(gamma.rect.slice, gamma.family, rep);
    auto back = ssr::section_to_simplex(gamma.rect.slice, gamma.family, rep);
    if (!(there.then(back) == SimplicialMap::identity(gamma.rect.total()))) return "section maps are not inverse on the total space";
    if (!(back.then(there) == SimplicialMap::identity(rep.total))) return "section maps are not inverse on RepFib";
    return std::nullopt;
}

// ---- the lift φ ---------------------------------------------------------------------------

DiagramPtr mapping_diagram(const NatTrans& f) {
    if (auto e = f.check()) throw InvariantError("mapping_diagram: f is not natural: " + *e);
    const auto& C = f.source->cat;
    auto one = linear_order(1);
    auto P = product_category(one, C);
    const int MB = C->num_morphisms();
    std::vector<SSetPtr> at;
    for (int i = 0; i <= 1; ++i) {
        for (int c = 0; c < C->num_objects(); ++c) at.push_back(i == 0 ? f.source->at[Z(c)] : f.target->at[Z(c)]);
    }
    std::vector<SimplicialMap> along;
    for (int m = 0; m < P->num_morphisms(); ++m) {
        const int e = m / MB;
        const int g = m % MB;
        if (one->tgt(e) == 0) {
            along.push_back(f.source->along[Z(g)]);
        } else if (one->src(e) == 1) {
            along.push_back(f.target->along[Z(g)]);
        } else {
            along.push_back(f.source->along[Z(g)].then(f.comp[Z(C->tgt(g))]));
        }
    }
    return make_diagram(P, std::move(at), std::move(along));
}

LiftPhi construct_lift_phi(const NatTrans& f, int cap) {
    LiftPhi out;
    out.f = f;
    out.xf = mapping_diagram(f);
    const auto& C = f.source->cat;
    const auto& P = out.xf->cat;
    const int OB = C->num_objects();
    const int MB = C->num_morphisms();
    // morphism index of i -> j in [1]; product morphisms are e * MB + g
    auto edge = [&](int i, int j) { return P->hom(i * OB, j * OB)[0] / MB; };
    out.at0 = CatFunctor{C, P, {}, {}};
    out.at1 = CatFunctor{C, P, {}, {}};
    for (int c = 0; c < OB; ++c) {
        out.at0.obj.push_back(c);
        out.at1.obj.push_back(OB + c);
    }
    for (int g = 0; g < MB; ++g) {
        out.at0.mor.push_back(edge(0, 0) * MB + g);
        out.at1.mor.push_back(edge(1, 1) * MB + g);
    }
    out.source = rectify(f.source, cap);
    out.fibre1 = rectify(f.target, cap, out.source.nerve);
    out.target = rectify(out.xf, cap);
    auto d1 = standard_simplex(1, cap);
    out.domain = product(d1, out.source.total());
    const auto& X0 = *f.source;
    const auto& XF = *out.xf;
    const auto& dom = *out.domain;

    out.phi = SimplicialMap::from_fn(out.domain, out.target.total(), [&](int n, int s) {
        const auto& key = dom.key(n, s);
        const DeltaMap u(1, d1->key(n, key[0]));
        const auto d = out.source.decode(n, key[1]);
        const auto& a = d.chain;
        // the chain (u(j), α_j) in [1] × C
        std::vector<int> objs, mors;
        for (int j = 0; j <= n; ++j) objs.push_back(u(j) * OB + a.obj[Z(j)]);
        for (int j = 1; j <= n; ++j) mors.push_back(edge(u(j - 1), u(j)) * MB + a.mor[Z(j - 1)]);
        Chain b{objs, mors};
        // y_ij ∈ X_f(β_j)_i: x_ij on the 0 side, f(x_ij) on the 1 side
        std::vector<std::vector<int>> y(Z(n) + 1);
        for (int j = 0; j <= n; ++j) {
            for (int i = 0; i <= j; ++i) {
                const int x = X0.apply(a.between(*C, i, j), i, d.z[Z(i)]);
                y[Z(j)].push_back(u(j) == 0 ? x : f.comp[Z(a.obj[Z(j)])](i, x));
            }
        }
        auto fail = [&](const std::string& what, int i, int j) {
            std::ostringstream os;
            os << "construct_lift_phi: section identity " << what << " fails at (i, j) = (" << i << ", " << j << ") for "
               << dom.describe(n, s);
            throw InvariantError(os.str());
        };
        for (int j = 1; j <= n; ++j) {
            for (int i = 0; i < j; ++i) {
                if (XF.apply(b.mor[Z(j - 1)], i, y[Z(j - 1)][Z(i)]) != y[Z(j)][Z(i)]) fail("along the chain", i, j);
                if (XF.value(b.obj[Z(j)]).face(i + 1, i + 1, y[Z(j)][Z(i + 1)]) != y[Z(j)][Z(i)]) fail("under faces", i, j);
            }
        }
        std::vector<int> z;
        for (int j = 0; j <= n; ++j) z.push_back(y[Z(j)][Z(j)]);
        auto e = out.target.encode(n, out.target.nerve->index_of(n, b.key()), z);
        if (!e) fail("matching", n, n);
        return *e;
    });

    auto coi1 = change_of_index(out.at1, out.target, out.source.nerve);
    if (!coi1.pulled.total()->same_as(*out.fibre1.total())) {
        throw InvariantError("construct_lift_phi: fibre over vertex 1 is not r*_C of the target");
    }
    std::vector<std::unordered_map<int, int>> inv(Z(coi1.top.cap()) + 1);
    for (int n = 0; n <= coi1.top.cap(); ++n) {
        for (int s = 0; s < coi1.top.source()->size(n); ++s) inv[Z(n)][coi1.top(n, s)] = s;
    }
    out.phi1 = SimplicialMap::from_fn(out.source.total(), out.fibre1.total(), [&](int n, int x) {
        const int one_n = d1->index_of(n, std::vector<int>(Z(n) + 1, 1));
        return inv[Z(n)].at(out.phi(n, dom.index_of(n, {one_n, x})));
    });
    return out;
}

std::optional<std::string> LiftPhi::verify() const {
    if (auto e = phi.check()) return "phi: " + *e;
    const auto& dom = *domain;
    const int cap = phi.cap();
    auto d1 = standard_simplex(1, cap);
    const auto& C = *f.source->cat;
    const int OB = C.num_objects();
    // over Δ¹ × N C: the image chain has vertices (u(j), α_j) and C-components α
    for (int n = 0; n <= cap; ++n) {
        for (int s = 0; s < dom.size(n); ++s) {
            const auto& key = dom.key(n, s);
            const auto& u = d1->key(n, key[0]);
            auto a = source.decode(n, key[1]).chain;
            auto b = target.decode(n, phi(n, s)).chain;
            for (int j = 0; j <= n; ++j) {
                if (b.obj[Z(j)] != u[Z(j)] * OB + a.obj[Z(j)]) return "phi is not over the base at " + dom.describe(n, s);
            }
            for (int j = 0; j < n; ++j) {
                if (b.mor[Z(j)] % C.num_morphisms() != a.mor[Z(j)]) return "phi is not over N C at " + dom.describe(n, s);
            }
        }
    }
    auto coi0 = change_of_index(at0, target, source.nerve);
    if (!coi0.pulled.total()->same_as(*source.total())) return "fibre over vertex 0 is not r*_C X0";
    for (int n = 0; n <= cap; ++n) {
        const int zero = d1->index_of(n, std::vector<int>(Z(n) + 1, 0));
        for (int x = 0; x < source.total()->size(n); ++x) {
            if (phi(n, dom.index_of(n, {zero, x})) != coi0.top(n, x)) {
                return "phi does not restrict to the inclusion at vertex 0: " + source.total()->describe(n, x);
            }
        }
    }
    auto rf = rectify_map(f, source, fibre1);
    for (int n = 0; n <= cap; ++n) {
        for (int x = 0; x < source.total()->size(n); ++x) {
            if (phi1(n, x) != rf(n, x)) {
                return "phi_1 differs from r*(f) at " + source.total()->describe(n, x) + ": " + fibre1.total()->describe(n, phi1(n, x)) +
                       " vs " + fibre1.total()->describe(n, rf(n, x));
            }
        }
    }
    return std::nullopt;
}

LiftingProblem phi_lifting_problem(const LiftPhi& phi) {
    const int cap = phi.phi.cap();
    auto d1 = standard_simplex(1, cap);
    const auto& dom = phi.domain;
    auto coi0 = change_of_index(phi.at0, phi.target, phi.source.nerve);
    auto inclusion = SimplicialMap::from_fn(phi.source.total(), dom, [&](int n, int x) {
        return dom->index_of(n, {d1->index_of(n, std::vector<int>(Z(n) + 1, 0)), x});
    });
    auto top = SimplicialMap::from_fn(phi.source.total(), phi.target.total(), [&](int n, int x) { return coi0.top(n, x); });
    // the base map only depends on φ's chain, which is forced by (u, α)
    auto bottom = phi.phi.then(phi.target.slice.proj);
    return {inclusion, top, bottom, phi.target.slice.proj};
}

}  // namespace ssr

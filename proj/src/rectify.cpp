#include "ssr/rectify.hpp"

#include <algorithm>
#include <numeric>

#include "ssr/error.hpp"

namespace ssr {

namespace {

using std::size_t;

inline size_t Z(int x) { return static_cast<size_t>(x); }

// [lo, hi] viewed as [hi - lo] -> [hi]
DeltaMap shift_into(int lo, int hi) {
    std::vector<int> v(Z(hi - lo + 1));
    std::iota(v.begin(), v.end(), lo);
    return DeltaMap(hi, std::move(v));
}

}  // namespace

// ---- minimal form ------------------------------------------------------------

RectSimplex Rectified::decode(int n, int s) const {
    const auto& k = total()->key(n, s);
    RectSimplex r;
    r.alpha = k[0];
    r.chain = chain_of(*F->cat, nerve->key(n, k[0]));
    r.z.assign(k.begin() + 1, k.end());
    return r;
}

std::optional<int> Rectified::encode(int n, int alpha, const std::vector<int>& z) const {
    Key k{alpha};
    k.insert(k.end(), z.begin(), z.end());
    return total()->find(n, k);
}

Rectified rectify(const DiagramPtr& f, int cap, SSetPtr nerve_c) {
    if (f->cap() < cap) throw InvariantError("rectify: diagram values are tabulated only up to " + std::to_string(f->cap()));
    if (!nerve_c) nerve_c = nerve(f->cat, cap);
    const auto cat = f->cat;
    // j-simplices of F(c) grouped by their last face d_j
    auto by_last = std::make_shared<std::vector<std::vector<std::vector<std::vector<int>>>>>(Z(cat->num_objects()));
    for (int c = 0; c < cat->num_objects(); ++c) {
        const auto& X = f->value(c);
        auto& rows = (*by_last)[Z(c)];
        rows.resize(Z(cap) + 1);
        for (int j = 1; j <= cap; ++j) {
            rows[Z(j)].assign(Z(X.size(j - 1)), {});
            for (int t = 0; t < X.size(j); ++t) rows[Z(j)][Z(X.face(j, j, t))].push_back(t);
        }
    }
    auto N = nerve_c;
    auto total = SSet::build(
        "r*" + f->cat->name(), cap,
        [f, N, cat, by_last](int n) {
            std::vector<Key> out;
            for (int a = 0; a < N->size(n); ++a) {
                auto ch = chain_of(*cat, N->key(n, a));
                Key k{a};
                std::function<void(int)> rec = [&](int j) {
                    if (j > n) {
                        out.push_back(k);
                        return;
                    }
                    int c = ch.obj[Z(j)];
                    if (j == 0) {
                        for (int z = 0; z < f->value(c).size(0); ++z) {
                            k.push_back(z);
                            rec(1);
                            k.pop_back();
                        }
                        return;
                    }
                    int need = f->apply(ch.mor[Z(j - 1)], j - 1, k.back());
                    for (int z : (*by_last)[Z(c)][Z(j)][Z(need)]) {
                        k.push_back(z);
                        rec(j + 1);
                        k.pop_back();
                    }
                };
                rec(0);
            }
            return out;
        },
        [f, N, cat](const DeltaMap& w, const Key& k) {
            int n = w.cod();
            auto ch = chain_of(*cat, N->key(n, k[0]));
            Key out{N->act(w, k[0])};
            for (int j = 0; j <= w.dom(); ++j) {
                out.push_back(f->value(ch.obj[Z(w(j))]).act(w.front(j), k[Z(w(j)) + 1]));
            }
            return out;
        });
    auto proj = SimplicialMap::from_fn(total, N, [&](int n, int s) { return total->key(n, s)[0]; });
    return Rectified{f, N, SliceObject{total, proj}};
}

SimplicialMap rectify_map(const NatTrans& f, const Rectified& src, const Rectified& tgt) {
    return SimplicialMap::from_fn(src.total(), tgt.total(), [&](int n, int s) {
        auto r = src.decode(n, s);
        for (int j = 0; j <= n; ++j) r.z[Z(j)] = f.comp[Z(r.chain.obj[Z(j)])](j, r.z[Z(j)]);
        auto e = tgt.encode(n, r.alpha, r.z);
        if (!e) throw InvariantError("rectify_map: image of " + src.total()->describe(n, s) + " is not a simplex");
        return *e;
    });
}

std::optional<std::string> check_matching(const Rectified& r) {
    for (int n = 1; n <= r.total()->cap(); ++n) {
        for (int s = 0; s < r.total()->size(n); ++s) {
            auto d = r.decode(n, s);
            for (int j = 1; j <= n; ++j) {
                int c = d.chain.obj[Z(j)];
                if (r.F->apply(d.chain.mor[Z(j - 1)], j - 1, d.z[Z(j - 1)]) != r.F->value(c).face(j, j, d.z[Z(j)])) {
                    return "matching condition fails at j=" + std::to_string(j) + " for " + r.total()->describe(n, s);
                }
            }
        }
    }
    return std::nullopt;
}

// ---- full families -----------------------------------------------------------

FullFamily to_full_family(const Rectified& r, int n, int s) {
    auto d = r.decode(n, s);
    FullFamily x;
    for (int k = 0; k <= r.total()->cap(); ++k) {
        for (const auto& u : DeltaMap::all(k, n)) {
            auto f = image_factorization(u);
            // x_u = (v)^* x_ι for ι the minimal interval [lo, hi], and x_ι is the
            // restriction of z_hi along [lo, hi] ⊆ [0, hi]
            auto v = compose(shift_into(f.lo, f.hi), compose(f.mid, f.surj));
            x[u] = r.F->value(d.chain.obj[Z(f.hi)]).act(v, d.z[Z(f.hi)]);
        }
    }
    return x;
}

std::optional<std::string> check_full_family(const Rectified& r, int n, int alpha, const FullFamily& x) {
    const auto& C = *r.F->cat;
    auto ch = chain_of(C, r.nerve->key(n, alpha));
    const int cap = r.total()->cap();
    for (int k2 = 0; k2 <= cap; ++k2) {
        for (const auto& u2 : DeltaMap::all(k2, n)) {
            auto it2 = x.find(u2);
            if (it2 == x.end()) return "family has no entry at " + u2.str();
            const auto& X2 = r.F->value(ch.obj[Z(u2(k2))]);
            if (it2->second < 0 || it2->second >= X2.size(k2)) return "entry at " + u2.str() + " is out of range";
            for (int k = 0; k <= cap; ++k) {
                for (const auto& v : DeltaMap::all(k, k2)) {
                    auto u = compose(u2, v);
                    auto it = x.find(u);
                    if (it == x.end()) return "family has no entry at " + u.str();
                    int fv = ch.between(C, u(k), u2(k2));
                    if (r.F->apply(fv, k, it->second) != X2.act(v, it2->second)) {
                        return "compatibility fails for u=" + u.str() + " = " + u2.str() + " o " + v.str();
                    }
                }
            }
        }
    }
    return std::nullopt;
}

int from_full_family(const Rectified& r, int n, int alpha, const FullFamily& x) {
    if (auto e = check_full_family(r, n, alpha, x)) throw InvariantError("from_full_family: " + *e);
    std::vector<int> z;
    for (int j = 0; j <= n; ++j) z.push_back(x.at(DeltaMap::interval(n, 0, j)));
    auto e = r.encode(n, alpha, z);
    if (!e) throw InvariantError("from_full_family: initial-interval data is not a simplex");
    return *e;
}

// ---- Σⁿ-sections -------------------------------------------------------------

Presentation rectify_sigma(const Rectified& m) {
    const auto f = m.F;
    const auto N = m.nerve;
    const auto cat = f->cat;
    const int cap = m.total()->cap();
    auto total = SSet::build(
        "s*" + cat->name(), cap,
        [f, N, cat](int n) {
            std::vector<Key> out;
            for (int a = 0; a < N->size(n); ++a) {
                auto ch = chain_of(*cat, N->key(n, a));
                auto sa = sigma_alpha(*cat, ch);
                SetFunctor sf{sa.sigma, {}, {}};
                for (auto [i, c] : sa.obj) sf.size.push_back(f->value(c).size(i));
                for (int mm = 0; mm < sa.sigma->num_morphisms(); ++mm) {
                    auto [i, c] = sa.obj[Z(sa.sigma->src(mm))];
                    auto [i2, c2] = sa.obj[Z(sa.sigma->tgt(mm))];
                    (void)c2;
                    const auto& img = sa.mor[Z(mm)];
                    std::vector<int> row;
                    for (int y = 0; y < f->value(c).size(i); ++y) row.push_back(f->apply(img.c, i2, f->value(c).act(img.v, y)));
                    sf.act.push_back(std::move(row));
                }
                for (auto& fam : finite_limit(sf)) {
                    Key k{a};
                    k.insert(k.end(), fam.begin(), fam.end());
                    out.push_back(std::move(k));
                }
            }
            return out;
        },
        [f, N, cat](const DeltaMap& w, const Key& k) {
            int n = w.cod();
            int n2 = w.dom();
            auto ch = chain_of(*cat, N->key(n, k[0]));
            Key out{N->act(w, k[0])};
            out.resize(Z((n2 + 1) * (n2 + 2) / 2) + 1);
            for (int j = 0; j <= n2; ++j) {
                for (int i = 0; i <= j; ++i) {
                    int y = k[Z(sigma_object(n, w(i), w(j))) + 1];
                    out[Z(sigma_object(n2, i, j)) + 1] = f->value(ch.obj[Z(w(j))]).act(w.front(i), y);
                }
            }
            return out;
        });
    auto proj = SimplicialMap::from_fn(total, N, [&](int n, int s) { return total->key(n, s)[0]; });
    auto to_min = SimplicialMap::from_fn(total, m.total(), [&](int n, int s) {
        const auto& k = total->key(n, s);
        std::vector<int> z;
        for (int j = 0; j <= n; ++j) z.push_back(k[Z(sigma_object(n, j, j)) + 1]);
        return *m.encode(n, k[0], z);
    });
    auto from_min = SimplicialMap::from_fn(m.total(), total, [&](int n, int s) {
        auto d = m.decode(n, s);
        Key k{d.alpha};
        k.resize(Z((n + 1) * (n + 2) / 2) + 1);
        for (int j = 0; j <= n; ++j) {
            for (int i = 0; i <= j; ++i) k[Z(sigma_object(n, i, j)) + 1] = f->apply(d.chain.between(*cat, i, j), i, d.z[Z(i)]);
        }
        return total->index_of(n, k);
    });
    return {SliceObject{total, proj}, to_min, from_min};
}

// ---- fibre-limit route ---------------------------------------------------------

namespace {

// position of [i,j] in lexicographic (i, j) order
int lex_position(int n, int i, int j) {
    int p = 0;
    for (int a = 0; a < i; ++a) p += n - a + 1;
    return p + (j - i);
}

}  // namespace

Presentation rectify_lambda(const Rectified& m) {
    const auto f = m.F;
    const auto N = m.nerve;
    const auto cat = f->cat;
    const int cap = m.total()->cap();
    auto functor_cache = std::make_shared<std::map<DeltaMap, std::vector<int>>>();
    auto total = SSet::build(
        "t*" + cat->name(), cap,
        [f, N, cat](int n) {
            std::vector<Key> out;
            // the fibre over α is Σ^{n,op}; S pulls back along its morphisms
            auto sigma = sigma_category(n);
            auto fibre = opposite(sigma);
            auto limit_shape = opposite(fibre);
            for (int a = 0; a < N->size(n); ++a) {
                auto ch = chain_of(*cat, N->key(n, a));
                SetFunctor sf{limit_shape, {}, {}};
                for (int o = 0; o < fibre->num_objects(); ++o) {
                    auto [i, j] = sigma_interval(n, o);
                    sf.size.push_back(f->value(ch.obj[Z(j)]).size(i));
                }
                for (int g = 0; g < fibre->num_morphisms(); ++g) {
                    // fibre morphism x -> x' with x' ⊆ x; its pullback S(x') -> S(x)
                    auto [i, j] = sigma_interval(n, fibre->src(g));
                    auto [i2, j2] = sigma_interval(n, fibre->tgt(g));
                    std::vector<int> v(Z(i) + 1);
                    std::iota(v.begin(), v.end(), 0);
                    DeltaMap incl(i2, std::move(v));
                    int h = ch.between(*cat, j2, j);
                    std::vector<int> row;
                    for (int y = 0; y < f->value(ch.obj[Z(j2)]).size(i2); ++y) {
                        row.push_back(f->apply(h, i, f->value(ch.obj[Z(j2)]).act(incl, y)));
                    }
                    sf.act.push_back(std::move(row));
                }
                for (auto& fam : finite_limit(sf)) {
                    Key k(Z((n + 1) * (n + 2) / 2) + 1);
                    k[0] = a;
                    for (int o = 0; o < fibre->num_objects(); ++o) {
                        auto [i, j] = sigma_interval(n, o);
                        k[Z(lex_position(n, i, j)) + 1] = fam[Z(o)];
                    }
                    out.push_back(std::move(k));
                }
            }
            return out;
        },
        [f, N, cat, functor_cache](const DeltaMap& w, const Key& k) {
            int n = w.cod();
            int n2 = w.dom();
            auto it = functor_cache->find(w);
            if (it == functor_cache->end()) it = functor_cache->emplace(w, sigma_op_functor(w).obj).first;
            const auto& moved = it->second;
            auto ch = chain_of(*cat, N->key(n, k[0]));
            Key out(Z((n2 + 1) * (n2 + 2) / 2) + 1);
            out[0] = N->act(w, k[0]);
            for (int o = 0; o < static_cast<int>(moved.size()); ++o) {
                auto [i, j] = sigma_interval(n2, o);
                auto [ti, tj] = sigma_interval(n, moved[Z(o)]);
                int y = k[Z(lex_position(n, ti, tj)) + 1];
                // transport along the cartesian morphism (w, [i,j]) -> (α, [w i, w j])
                out[Z(lex_position(n2, i, j)) + 1] = f->value(ch.obj[Z(tj)]).act(w.front(i), y);
            }
            return out;
        });
    auto proj = SimplicialMap::from_fn(total, N, [&](int n, int s) { return total->key(n, s)[0]; });
    auto to_min = SimplicialMap::from_fn(total, m.total(), [&](int n, int s) {
        const auto& k = total->key(n, s);
        std::vector<int> z;
        for (int j = 0; j <= n; ++j) z.push_back(k[Z(lex_position(n, j, j)) + 1]);
        return *m.encode(n, k[0], z);
    });
    auto from_min = SimplicialMap::from_fn(m.total(), total, [&](int n, int s) {
        auto d = m.decode(n, s);
        Key k(Z((n + 1) * (n + 2) / 2) + 1);
        k[0] = d.alpha;
        for (int i = 0; i <= n; ++i) {
            for (int j = i; j <= n; ++j) k[Z(lex_position(n, i, j)) + 1] = f->apply(d.chain.between(*cat, i, j), i, d.z[Z(i)]);
        }
        return total->index_of(n, k);
    });
    return {SliceObject{total, proj}, to_min, from_min};
}

// ---- Ψ ---------------------------------------------------------------------------

SliceObject psi(const SlicePresheaf& p) {
    auto base = p.base;
    auto total = SSet::build(
        "Psi(" + base->name() + ")", base->cap(),
        [p](int n) {
            std::vector<Key> out;
            for (int b = 0; b < p.base->size(n); ++b) {
                for (int x = 0; x < p.size[Z(n)][Z(b)]; ++x) out.push_back({b, x});
            }
            return out;
        },
        [p](const DeltaMap& u, const Key& k) { return Key{p.base->act(u, k[0]), p.act(u, k[0], k[1])}; });
    auto proj = SimplicialMap::from_fn(total, base, [&](int n, int s) { return total->key(n, s)[0]; });
    return {total, proj};
}

SlicePresheaf psi_inverse(const SliceObject& a) {
    auto base = a.base();
    const int cap = std::min(a.total->cap(), base->cap());
    auto fibres = std::make_shared<std::vector<std::vector<std::vector<int>>>>(Z(cap) + 1);
    auto pos = std::make_shared<std::vector<std::vector<int>>>(Z(cap) + 1);
    SlicePresheaf p{base, std::vector<std::vector<int>>(Z(cap) + 1), {}};
    for (int n = 0; n <= cap; ++n) {
        (*fibres)[Z(n)].assign(Z(base->size(n)), {});
        (*pos)[Z(n)].assign(Z(a.total->size(n)), -1);
        for (int s = 0; s < a.total->size(n); ++s) {
            auto& fib = (*fibres)[Z(n)][Z(a.proj(n, s))];
            (*pos)[Z(n)][Z(s)] = static_cast<int>(fib.size());
            fib.push_back(s);
        }
        for (int b = 0; b < base->size(n); ++b) p.size[Z(n)].push_back(static_cast<int>((*fibres)[Z(n)][Z(b)].size()));
    }
    auto total = a.total;
    p.act = [fibres, pos, total](const DeltaMap& u, int b, int x) {
        int s = (*fibres)[Z(u.cod())][Z(b)][Z(x)];
        return (*pos)[Z(u.dom())][Z(total->act(u, s))];
    };
    return p;
}

// ---- change of index -------------------------------------------------------------

ChangeOfIndex change_of_index(const CatFunctor& psi_f, const Rectified& rc, SSetPtr nerve_d) {
    const int cap = rc.total()->cap();
    auto pulled_f = restrict_diagram(psi_f, rc.F);
    auto pulled = rectify(pulled_f, cap, std::move(nerve_d));
    auto npsi = nerve_map(psi_f, pulled.nerve, rc.nerve);
    auto top = SimplicialMap::from_fn(pulled.total(), rc.total(), [&](int n, int s) {
        auto d = pulled.decode(n, s);
        auto e = rc.encode(n, npsi(n, d.alpha), d.z);
        if (!e) throw InvariantError("change_of_index: no simplex over the image chain for " + pulled.total()->describe(n, s));
        return *e;
    });
    auto pb = pullback(npsi, rc.slice.proj);
    auto iso = SimplicialMap::from_fn(pulled.total(), pb.object, [&](int n, int s) {
        return pb.object->index_of(n, {pulled.slice.proj(n, s), top(n, s)});
    });
    return {pulled, top, npsi, pb, iso};
}

std::optional<std::string> ChangeOfIndex::verify() const {
    if (auto e = top.check()) return "top map: " + *e;
    if (auto e = iso.check()) return "comparison map: " + *e;
    for (int n = 0; n <= top.cap(); ++n) {
        for (int s = 0; s < top.source()->size(n); ++s) {
            // projection of r*_C F reads the chain off the first key entry
            if (top.target()->key(n, top(n, s))[0] != nerve_psi(n, pulled.slice.proj(n, s))) {
                return "square does not commute at " + top.source()->describe(n, s);
            }
        }
    }
    if (!(iso.then(pullback.to_left) == pulled.slice.proj)) return "comparison map is not over N D";
    if (!(iso.then(pullback.to_right) == top)) return "comparison map does not recover the top map";
    if (!iso.bijective()) return "comparison map is not a bijection onto the pullback";
    return std::nullopt;
}

// ---- r_! ---------------------------------------------------------------------------

namespace {

Key gen_key(int n, int a, int j, const DeltaMap& t, int h) {
    Key k{n, a, j};
    k.insert(k.end(), t.values().begin(), t.values().end());
    k.push_back(h);
    return k;
}

struct UnionFind {
    std::vector<int> p;
    int add() {
        p.push_back(static_cast<int>(p.size()));
        return p.back();
    }
    int root(int x) {
        while (p[Z(x)] != x) {
            p[Z(x)] = p[Z(p[Z(x)])];
            x = p[Z(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = root(a);
        b = root(b);
        if (a != b) p[Z(std::max(a, b))] = std::min(a, b);
    }
};

}  // namespace

int RShriek::class_of(int c, int n, int a, int j, const DeltaMap& t, int h) const {
    const auto& table = gen_class[Z(c)][Z(t.dom())];
    auto it = table.find(gen_key(n, a, j, t, h));
    if (it == table.end()) throw InvariantError("r_shriek: unknown generator");
    return it->second;
}

RShriek r_shriek(const SliceObject& src, const CatPtr& cat, int cap) {
    const auto& A = *src.total;
    const auto& C = *cat;
    cap = std::min({cap, A.cap(), src.base()->cap()});
    std::vector<std::vector<Chain>> chains(Z(cap) + 1);
    for (int n = 0; n <= cap; ++n) {
        for (int a = 0; a < A.size(n); ++a) chains[Z(n)].push_back(chain_of(C, src.base()->key(n, src.proj(n, a))));
    }
    RShriek out;
    out.source = src;
    out.trusted_cap = cap;
    out.gen_class.assign(Z(C.num_objects()), std::vector<std::unordered_map<Key, int, KeyHash>>(Z(cap) + 1));
    std::vector<std::vector<std::vector<Key>>> reps(Z(C.num_objects()), std::vector<std::vector<Key>>(Z(cap) + 1));
    std::size_t budget = 0;
    for (int c = 0; c < C.num_objects(); ++c) {
        for (int m = 0; m <= cap; ++m) {
            std::unordered_map<Key, int, KeyHash> id;
            std::vector<Key> keys;
            UnionFind uf;
            auto node = [&](const Key& k) {
                auto [it, fresh] = id.emplace(k, 0);
                if (fresh) {
                    it->second = uf.add();
                    keys.push_back(k);
                }
                return it->second;
            };
            for (int n = 0; n <= cap; ++n) {
                for (int a = 0; a < A.size(n); ++a) {
                    const auto& ch = chains[Z(n)][Z(a)];
                    for (int j = 0; j <= n; ++j) {
                        for (const auto& t : DeltaMap::all(m, j)) {
                            for (int h : C.hom(ch.obj[Z(j)], c)) node(gen_key(n, a, j, t, h));
                        }
                    }
                }
            }
            budget += keys.size();
            if (budget > max_cells()) throw ResourceError("r_shriek: generator budget exceeded");
            for (int n = 0; n <= cap; ++n) {
                for (int a = 0; a < A.size(n); ++a) {
                    const auto& ch = chains[Z(n)][Z(a)];
                    // (a, j-1, t, h ∘ α_{j-1,j}) ~ (a, j, δ^j t, h)
                    for (int j = 1; j <= n; ++j) {
                        auto dj = DeltaMap::coface(j, j);
                        for (const auto& t : DeltaMap::all(m, j - 1)) {
                            for (int h : C.hom(ch.obj[Z(j)], c)) {
                                uf.unite(id.at(gen_key(n, a, j - 1, t, C.compose(h, ch.mor[Z(j - 1)]))),
                                         id.at(gen_key(n, a, j, compose(dj, t), h)));
                            }
                        }
                    }
                    // (w^* a, j', t, h) ~ (a, w(j'), w|[0,j'] ∘ t, h) for cofaces and codegeneracies w
                    std::vector<DeltaMap> ws;
                    for (int i = 0; i <= n && n >= 1; ++i) ws.push_back(DeltaMap::coface(n, i));
                    for (int i = 0; i <= n && n + 1 <= cap; ++i) ws.push_back(DeltaMap::codegeneracy(n, i));
                    for (const auto& w : ws) {
                        int k = w.dom();
                        int b = A.act(w, a);
                        for (int j2 = 0; j2 <= k; ++j2) {
                            auto fr = w.front(j2);
                            for (const auto& t : DeltaMap::all(m, j2)) {
                                for (int h : C.hom(ch.obj[Z(w(j2))], c)) {
                                    uf.unite(id.at(gen_key(k, b, j2, t, h)), id.at(gen_key(n, a, w(j2), compose(fr, t), h)));
                                }
                            }
                        }
                    }
                }
            }
            // representative: least key in the class
            std::unordered_map<int, Key> best;
            for (std::size_t g = 0; g < keys.size(); ++g) {
                int r = uf.root(static_cast<int>(g));
                auto it = best.find(r);
                if (it == best.end() || keys[g] < it->second) best[r] = keys[g];
            }
            auto& rs = reps[Z(c)][Z(m)];
            for (auto& [r, k] : best) rs.push_back(k);
            std::sort(rs.begin(), rs.end());
            std::map<Key, int> rank;
            for (std::size_t i = 0; i < rs.size(); ++i) rank[rs[i]] = static_cast<int>(i);
            auto& table = out.gen_class[Z(c)][Z(m)];
            for (std::size_t g = 0; g < keys.size(); ++g) table[keys[g]] = rank.at(best.at(uf.root(static_cast<int>(g))));
        }
    }
    auto split = [](const Key& k) {
        int m = static_cast<int>(k.size()) - 5;
        DeltaMap t(k[2], Key(k.begin() + 3, k.begin() + 4 + m));
        return std::make_tuple(k[0], k[1], k[2], t, k.back());
    };
    std::vector<SSetPtr> at;
    for (int c = 0; c < C.num_objects(); ++c) {
        auto rs = reps[Z(c)];
        const auto* table = &out.gen_class[Z(c)];
        at.push_back(SSet::build(
            "r!(" + C.object_name(c) + ")", cap, [rs](int m) { return rs[Z(m)]; },
            [rs, table, split](const DeltaMap& u, const Key& k) {
                auto [n, a, j, t, h] = split(k);
                int cls = (*table)[Z(u.dom())].at(gen_key(n, a, j, compose(t, u), h));
                return rs[Z(u.dom())][Z(cls)];
            }));
    }
    std::vector<SimplicialMap> along;
    for (int g = 0; g < C.num_morphisms(); ++g) {
        int c = C.src(g);
        int c2 = C.tgt(g);
        along.push_back(SimplicialMap::from_fn(at[Z(c)], at[Z(c2)], [&](int m, int s) {
            auto [n, a, j, t, h] = split(at[Z(c)]->key(m, s));
            return out.class_of(c2, n, a, j, t, C.compose(g, h));
        }));
    }
    out.diagram = make_diagram(cat, std::move(at), std::move(along));
    return out;
}

NatTrans adjunct_flat(const RShriek& r, const Rectified& rf, const SimplicialMap& phi) {
    const auto& C = *rf.F->cat;
    NatTrans out{r.diagram, rf.F, {}};
    for (int c = 0; c < C.num_objects(); ++c) {
        const auto& X = r.diagram->value(c);
        std::vector<std::vector<int>> comp(Z(r.trusted_cap) + 1);
        for (int m = 0; m <= r.trusted_cap; ++m) {
            comp[Z(m)].assign(Z(X.size(m)), -1);
            for (const auto& [k, cls] : r.gen_class[Z(c)][Z(m)]) {
                int n = k[0];
                int a = k[1];
                int j = k[2];
                DeltaMap t(j, Key(k.begin() + 3, k.end() - 1));
                int h = k.back();
                auto d = rf.decode(n, phi(n, a));
                int val = rf.F->apply(h, m, rf.F->value(d.chain.obj[Z(j)]).act(t, d.z[Z(j)]));
                int& slot = comp[Z(m)][Z(cls)];
                if (slot >= 0 && slot != val) {
                    throw InvariantError("adjunct_flat: value is not constant on a generator class at " + X.describe(m, cls));
                }
                slot = val;
            }
        }
        out.comp.emplace_back(r.diagram->at[Z(c)], rf.F->at[Z(c)], std::move(comp));
    }
    return out;
}

SimplicialMap adjunct_sharp(const RShriek& r, const Rectified& rf, const NatTrans& psi_t) {
    const auto& A = r.source;
    const auto& C = *rf.F->cat;
    return SimplicialMap::from_fn(A.total, rf.total(), [&](int n, int a) {
        int alpha = A.proj(n, a);
        auto ch = chain_of(C, rf.nerve->key(n, alpha));
        std::vector<int> z;
        for (int j = 0; j <= n; ++j) {
            int c = ch.obj[Z(j)];
            z.push_back(psi_t.comp[Z(c)](j, r.class_of(c, n, a, j, DeltaMap::identity(j), C.id(c))));
        }
        auto e = rf.encode(n, alpha, z);
        if (!e) throw InvariantError("adjunct_sharp: transformation is not natural at " + A.total->describe(n, a));
        return *e;
    });
}

NatTrans r_shriek_map(const SimplicialMap& k, const RShriek& src, const RShriek& tgt) {
    const auto& C = *src.diagram->cat;
    NatTrans out{src.diagram, tgt.diagram, {}};
    for (int c = 0; c < C.num_objects(); ++c) {
        out.comp.push_back(SimplicialMap::from_fn(src.diagram->at[Z(c)], tgt.diagram->at[Z(c)], [&](int m, int s) {
            const auto& key = src.diagram->value(c).key(m, s);
            int n = key[0];
            int j = key[2];
            DeltaMap t(j, Key(key.begin() + 3, key.end() - 1));
            return tgt.class_of(c, n, k(n, key[1]), j, t, key.back());
        }));
    }
    return out;
}

}  // namespace ssr

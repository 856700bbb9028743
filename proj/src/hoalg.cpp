#include "ssr/hoalg.hpp"

#include <map>
#include <memory>

#include "ssr/error.hpp"

namespace ssr {

namespace {

inline std::size_t Z(int x) { return static_cast<std::size_t>(x); }

/// What a hom space needs at each level: blocks, links and filters, plus the
/// restriction of the domain along u: [m] -> [n].
struct HomShape {
    std::string name;
    int hom_cap = 0;
    int map_cap = 0;
    std::vector<SSetPtr> codomain;
    std::function<std::vector<SSetPtr>(int)> domain;
    std::function<std::vector<MapSearch::Link>(int, const std::vector<SSetPtr>&)> links;
    std::function<std::vector<std::function<bool(int, int, int)>>(int, const std::vector<SSetPtr>&)> filter;
    /// domain(m)[b] -> domain(n)[b]
    std::function<SimplicialMap(const DeltaMap&, int b, const SSetPtr& from, const SSetPtr& to)> restrict;
};

Key flatten(const std::vector<std::vector<std::vector<int>>>& comps) {
    Key k;
    for (const auto& block : comps) {
        for (const auto& level : block) k.insert(k.end(), level.begin(), level.end());
    }
    return k;
}

HomSpace build_hom(const HomShape& shape) {
    HomSpace out;
    out.map_cap = shape.map_cap;
    out.codomain = shape.codomain;
    for (int n = 0; n <= shape.hom_cap; ++n) out.domain.push_back(shape.domain(n));
    auto domain = std::make_shared<std::vector<std::vector<SSetPtr>>>(out.domain);
    const int mc = shape.map_cap;
    auto cache = std::make_shared<std::map<std::pair<DeltaMap, int>, SimplicialMap>>();
    auto restrict = shape.restrict;
    out.space = SSet::build(
        shape.name, shape.hom_cap,
        [&](int n) {
            const auto& dom = (*domain)[Z(n)];
            MapSearch ms;
            ms.sources = dom;
            ms.targets = shape.codomain;
            ms.links = shape.links(n, dom);
            if (shape.filter) ms.filter = shape.filter(n, dom);
            ms.cap = mc;
            std::vector<Key> keys;
            ms.run([&](const std::vector<std::vector<std::vector<int>>>& comps) {
                keys.push_back(flatten(comps));
                return true;
            });
            return keys;
        },
        [domain, mc, cache, restrict](const DeltaMap& u, const Key& k) {
            const int n = u.cod();
            const int m = u.dom();
            const auto& from = (*domain)[Z(m)];
            const auto& to = (*domain)[Z(n)];
            Key out;
            std::size_t offset = 0;
            for (std::size_t b = 0; b < to.size(); ++b) {
                auto it = cache->find({u, static_cast<int>(b)});
                if (it == cache->end()) it = cache->emplace(std::make_pair(u, static_cast<int>(b)), restrict(u, static_cast<int>(b), from[b], to[b])).first;
                const auto& r = it->second;
                std::vector<std::size_t> start(Z(mc) + 1);
                for (int l = 0; l <= mc; ++l) {
                    start[Z(l)] = offset;
                    offset += Z(to[b]->size(l));
                }
                for (int l = 0; l <= mc; ++l) {
                    for (int y = 0; y < from[b]->size(l); ++y) out.push_back(k[start[Z(l)] + Z(r(l, y))]);
                }
            }
            return out;
        });
    return out;
}

/// id × u: X × Δᵐ -> X × Δⁿ.
SimplicialMap times_delta(const DeltaMap& u, const SSetPtr& from, const SSetPtr& to, const SSetPtr& dm, const SSetPtr& dn) {
    return SimplicialMap::from_fn(from, to, [&](int l, int s) {
        const auto& k = from->key(l, s);
        const int d = dn->index_of(l, compose(u, DeltaMap(u.dom(), dm->key(l, k[1]))).values());
        return to->index_of(l, {k[0], d});
    });
}

}  // namespace

std::vector<SimplicialMap> HomSpace::decode(int n, int s) const {
    const auto& k = space->key(n, s);
    std::vector<SimplicialMap> out;
    std::size_t at = 0;
    for (std::size_t b = 0; b < codomain.size(); ++b) {
        const auto& dom = domain[Z(n)][b];
        std::vector<std::vector<int>> comps(Z(map_cap) + 1);
        for (int l = 0; l <= map_cap; ++l) {
            for (int y = 0; y < dom->size(l); ++y) comps[Z(l)].push_back(k[at++]);
        }
        out.emplace_back(dom, codomain[b], std::move(comps));
    }
    return out;
}

int HomSpace::encode(int n, const std::vector<SimplicialMap>& comps) const {
    Key k;
    for (const auto& c : comps) {
        for (int l = 0; l <= map_cap; ++l) k.insert(k.end(), c.components()[Z(l)].begin(), c.components()[Z(l)].end());
    }
    return space->index_of(n, k);
}

// ---- hom spaces -------------------------------------------------------------------

HomSpace diagram_hom(const DiagramPtr& f, const DiagramPtr& g, int cap) {
    const auto& C = *f->cat;
    const int mc = std::min(f->cap(), g->cap());
    auto simplices = std::make_shared<std::vector<SSetPtr>>();
    for (int n = 0; n <= cap; ++n) simplices->push_back(standard_simplex(n, mc));
    HomShape s;
    s.name = "Hom(" + C.name() + ")";
    s.hom_cap = cap;
    s.map_cap = mc;
    s.codomain = g->at;
    s.domain = [f, simplices](int n) {
        std::vector<SSetPtr> out;
        for (const auto& x : f->at) out.push_back(product(x, (*simplices)[Z(n)]));
        return out;
    };
    s.links = [f, g](int, const std::vector<SSetPtr>& dom) {
        std::vector<MapSearch::Link> links;
        for (int m = 0; m < f->cat->num_morphisms(); ++m) {
            if (f->cat->is_identity(m)) continue;
            const int a = f->cat->src(m);
            const int b = f->cat->tgt(m);
            const auto& from = dom[Z(a)];
            const auto& to = dom[Z(b)];
            auto src_map = SimplicialMap::from_fn(from, to, [&](int l, int y) {
                const auto& k = from->key(l, y);
                return to->index_of(l, {f->apply(m, l, k[0]), k[1]});
            });
            links.push_back({a, b, std::move(src_map), g->along[Z(m)]});
        }
        return links;
    };
    s.restrict = [simplices](const DeltaMap& u, int, const SSetPtr& from, const SSetPtr& to) {
        return times_delta(u, from, to, (*simplices)[Z(u.dom())], (*simplices)[Z(u.cod())]);
    };
    return build_hom(s);
}

HomSpace slice_hom(const SliceObject& a, const SliceObject& b, int cap) {
    if (a.base() != b.base() && !a.base()->same_as(*b.base())) throw InvariantError("slice_hom: different bases");
    const int mc = std::min(a.total->cap(), b.total->cap());
    auto simplices = std::make_shared<std::vector<SSetPtr>>();
    for (int n = 0; n <= cap; ++n) simplices->push_back(standard_simplex(n, mc));
    HomShape s;
    s.name = "Hom/(" + a.total->name() + "," + b.total->name() + ")";
    s.hom_cap = cap;
    s.map_cap = mc;
    s.codomain = {b.total};
    s.domain = [a, simplices](int n) { return std::vector<SSetPtr>{product(a.total, (*simplices)[Z(n)])}; };
    s.links = [](int, const std::vector<SSetPtr>&) { return std::vector<MapSearch::Link>{}; };
    s.filter = [a, b](int, const std::vector<SSetPtr>& dom) {
        auto d = dom[0];
        std::vector<std::function<bool(int, int, int)>> out;
        out.push_back([a, b, d](int l, int y, int t) { return b.proj(l, t) == a.proj(l, d->key(l, y)[0]); });
        return out;
    };
    s.restrict = [simplices](const DeltaMap& u, int, const SSetPtr& from, const SSetPtr& to) {
        return times_delta(u, from, to, (*simplices)[Z(u.dom())], (*simplices)[Z(u.cod())]);
    };
    return build_hom(s);
}

HomSpace section_space(const SliceObject& p, int cap) {
    return slice_hom(SliceObject{p.base(), SimplicialMap::identity(p.base())}, p, cap);
}

HomSpace holim(const DiagramPtr& f, int cap) {
    auto r = rectify(f, f->cap());
    return section_space(r.slice, cap);
}

// ---- Dugger ---------------------------------------------------------------------------

DuggerQ dugger_Q(const DiagramPtr& f) {
    const auto C = f->cat;
    const int cap = f->cap();
    auto N = nerve(C, cap + 1);
    std::vector<SSetPtr> at;
    for (int c = 0; c < C->num_objects(); ++c) {
        at.push_back(SSet::build(
            "Q(" + f->value(c).name() + ")", cap,
            [N, C, f, c](int n) {
                std::vector<Key> out;
                for (int s = 0; s < N->size(n + 1); ++s) {
                    auto key = N->key(n + 1, s);
                    auto ch = chain_of(*C, key);
                    if (ch.obj.back() != c) continue;
                    for (int x = 0; x < f->value(ch.obj[0]).size(n); ++x) {
                        Key k = key;
                        k.push_back(x);
                        out.push_back(std::move(k));
                    }
                }
                return out;
            },
            [C, f](const DeltaMap& u, const Key& k) {
                const int n = u.cod();
                const int m = u.dom();
                Key ck(k.begin(), k.end() - 1);
                auto ch = chain_of(*C, ck);
                // u extended by m+1 ↦ n+1 keeps the target c fixed
                auto vals = u.values();
                vals.push_back(n + 1);
                auto moved = restrict_chain(*C, ch, DeltaMap(n + 1, vals));
                const int x = f->value(ch.obj[0]).act(u, k.back());
                Key out = moved.key();
                out.push_back(f->apply(ch.between(*C, 0, u(0)), m, x));
                return out;
            }));
    }
    std::vector<SimplicialMap> along;
    for (int g = 0; g < C->num_morphisms(); ++g) {
        const auto& from = at[Z(C->src(g))];
        const auto& to = at[Z(C->tgt(g))];
        along.push_back(SimplicialMap::from_keys(from, to, [&](int, const Key& k) {
            Key out = k;
            out[out.size() - 2] = C->compose(g, k[k.size() - 2]);
            return out;
        }));
    }
    auto qf = make_diagram(C, at, std::move(along));
    NatTrans q{qf, f, {}};
    for (int c = 0; c < C->num_objects(); ++c) {
        const auto& src = at[Z(c)];
        q.comp.push_back(SimplicialMap::from_fn(src, f->at[Z(c)], [&](int n, int s) {
            const auto& k = src->key(n, s);
            auto ch = chain_of(*C, Key(k.begin(), k.end() - 1));
            return f->apply(ch.between(*C, 0, n + 1), n, k.back());
        }));
    }
    if (auto e = q.check()) throw InvariantError("dugger_Q: q is not natural: " + *e);
    return {qf, q};
}

NatTrans dugger_product_comparison(const DiagramPtr& a, const DiagramPtr& f) {
    auto prod = diagram_product(a, f);
    auto qp = dugger_Q(prod).qf;
    auto qa = dugger_Q(a).qf;
    auto qf = dugger_Q(f).qf;
    auto target = diagram_product(qa, qf);
    NatTrans out{qp, target, {}};
    for (int c = 0; c < a->cat->num_objects(); ++c) {
        const auto& src = qp->at[Z(c)];
        out.comp.push_back(SimplicialMap::from_fn(src, target->at[Z(c)], [&](int n, int s) {
            Key k = src->key(n, s);
            // the simplex lives over the first object of the chain
            const auto& pair = prod->value(k[0]).key(n, k.back());
            Key ka = k, kf = k;
            ka.back() = pair[0];
            kf.back() = pair[1];
            return target->at[Z(c)]->index_of(n, {qa->at[Z(c)]->index_of(n, ka), qf->at[Z(c)]->index_of(n, kf)});
        }));
    }
    if (auto e = out.check()) throw InvariantError("dugger_product_comparison: " + *e);
    return out;
}

// ---- internal hom -----------------------------------------------------------------------

namespace {

SSetPtr discrete(int k, int cap) {
    return SSet::build(
        "D" + std::to_string(k), cap,
        [k](int) {
            std::vector<Key> out;
            for (int i = 0; i < k; ++i) out.push_back({i});
            return out;
        },
        [](const DeltaMap&, const Key& key) { return key; });
}

int position(const std::vector<int>& v, int x) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == x) return static_cast<int>(i);
    }
    throw InvariantError("position: missing element");
}

}  // namespace

InternalHom internal_hom(const DiagramPtr& f, const DiagramPtr& g, int cap) {
    const auto C = f->cat;
    const int mc = std::min({f->cap(), g->cap(), cap});
    InternalHom out;
    out.f = f;
    out.g = g;
    // F × C(c, -): value at d keyed (x, position of h in hom(c, d))
    std::vector<DiagramPtr> fr;
    for (int c = 0; c < C->num_objects(); ++c) {
        std::vector<SSetPtr> at;
        for (int d = 0; d < C->num_objects(); ++d) at.push_back(product(f->at[Z(d)], discrete(static_cast<int>(C->hom(c, d).size()), mc)));
        std::vector<SimplicialMap> along;
        for (int m = 0; m < C->num_morphisms(); ++m) {
            const int a = C->src(m);
            const int b = C->tgt(m);
            const auto& from = at[Z(a)];
            const auto& to = at[Z(b)];
            along.push_back(SimplicialMap::from_fn(from, to, [&](int l, int s) {
                const auto& k = from->key(l, s);
                const int h = C->hom(c, a)[Z(k[1])];
                return to->index_of(l, {f->apply(m, l, k[0]), position(C->hom(c, b), C->compose(m, h))});
            }));
        }
        fr.push_back(make_diagram(C, std::move(at), std::move(along)));
        out.at.push_back(diagram_hom(fr.back(), g, mc));
    }
    std::vector<SSetPtr> values;
    for (const auto& h : out.at) values.push_back(h.space);
    std::vector<SimplicialMap> along;
    for (int m = 0; m < C->num_morphisms(); ++m) {
        const int c = C->src(m);
        const int c2 = C->tgt(m);
        const auto& H = out.at[Z(c)];
        const auto& H2 = out.at[Z(c2)];
        along.push_back(SimplicialMap::from_fn(H.space, H2.space, [&](int n, int s) {
            auto comps = H.decode(n, s);
            std::vector<SimplicialMap> moved;
            for (int d = 0; d < C->num_objects(); ++d) {
                const auto& dom2 = H2.domain[Z(n)][Z(d)];
                const auto& dom = H.domain[Z(n)][Z(d)];
                const auto& fd = fr[Z(c)]->at[Z(d)];
                const auto& fd2 = fr[Z(c2)]->at[Z(d)];
                moved.push_back(SimplicialMap::from_fn(dom2, g->at[Z(d)], [&](int l, int y) {
                    // ((x, h'), δ) ↦ φ((x, h' ∘ m), δ)
                    const auto& k = dom2->key(l, y);
                    const auto& xk = fd2->key(l, k[0]);
                    const int h = C->compose(C->hom(c2, d)[Z(xk[1])], m);
                    const int p = fd->index_of(l, {xk[0], position(C->hom(c, d), h)});
                    return comps[Z(d)](l, dom->index_of(l, {p, k[1]}));
                }));
            }
            return H2.encode(n, moved);
        }));
    }
    out.hom = make_diagram(C, values, std::move(along));
    auto prod = diagram_product(out.hom, f);
    // index of the top simplex of Δⁿ in its level
    std::vector<int> tops;
    for (int n = 0; n <= mc; ++n) tops.push_back(standard_simplex(n, mc)->index_of(n, DeltaMap::identity(n).values()));
    out.eval = NatTrans{prod, g, {}};
    for (int c = 0; c < C->num_objects(); ++c) {
        const auto& H = out.at[Z(c)];
        const auto& P = prod->at[Z(c)];
        const int idpos = position(C->hom(c, c), C->id(c));
        out.eval.comp.push_back(SimplicialMap::from_fn(P, g->at[Z(c)], [&](int n, int s) {
            const auto& k = P->key(n, s);
            auto comps = H.decode(n, k[0]);
            const auto& dom = H.domain[Z(n)][Z(c)];
            const int p = fr[Z(c)]->at[Z(c)]->index_of(n, {k[1], idpos});
            return comps[Z(c)](n, dom->index_of(n, {p, tops[Z(n)]}));
        }));
    }
    if (auto e = out.eval.check()) throw InvariantError("internal_hom: evaluation is not natural: " + *e);
    return out;
}

namespace {

using Components = std::vector<std::vector<std::vector<int>>>;

Components components_of(const NatTrans& t) {
    Components out;
    for (const auto& c : t.comp) out.push_back(c.components());
    return out;
}

/// Checks that `forward` maps the enumerated left side injectively onto the right side.
BijectionReport compare_sides(const std::vector<NatTrans>& lefts, const std::vector<NatTrans>& rights,
                              const std::function<NatTrans(const NatTrans&)>& forward) {
    BijectionReport rep;
    rep.left = lefts.size();
    rep.right = rights.size();
    std::map<Components, std::size_t> right_index;
    for (std::size_t i = 0; i < rights.size(); ++i) right_index.emplace(components_of(rights[i]), i);
    std::map<Components, std::size_t> hit;
    for (std::size_t i = 0; i < lefts.size(); ++i) {
        auto img = forward(lefts[i]);
        if (auto e = img.check()) {
            rep.witness = "image of map " + std::to_string(i) + " is not natural: " + *e;
            return rep;
        }
        auto key = components_of(img);
        if (!right_index.count(key)) {
            rep.witness = "image of map " + std::to_string(i) + " is not among the enumerated right-hand maps";
            return rep;
        }
        auto [it, fresh] = hit.emplace(key, i);
        if (!fresh) {
            rep.witness = "maps " + std::to_string(it->second) + " and " + std::to_string(i) + " have the same image";
            return rep;
        }
    }
    if (hit.size() != rights.size()) {
        rep.witness = std::to_string(rights.size() - hit.size()) + " right-hand maps are not hit";
        return rep;
    }
    rep.bijective = true;
    return rep;
}

}  // namespace

BijectionReport check_currying(const DiagramPtr& e, const InternalHom& gf) {
    const auto& C = *e->cat;
    auto ef = diagram_product(e, gf.f);
    const auto& hf = gf.eval.source;
    auto lefts = all_nat_trans(e, gf.hom);
    auto rights = all_nat_trans(ef, gf.g);
    return compare_sides(lefts, rights, [&](const NatTrans& psi) {
        NatTrans out{ef, gf.g, {}};
        for (int c = 0; c < C.num_objects(); ++c) {
            const auto& src = ef->at[Z(c)];
            const auto& mid = hf->at[Z(c)];
            out.comp.push_back(SimplicialMap::from_fn(src, gf.g->at[Z(c)], [&](int n, int s) {
                const auto& k = src->key(n, s);
                return gf.eval.comp[Z(c)](n, mid->index_of(n, {psi.comp[Z(c)](n, k[0]), k[1]}));
            }));
        }
        return out;
    });
}

// ---- Kan extensions --------------------------------------------------------------------

namespace {

SetFunctor level_functor(const Comma& comma, const DiagramPtr& f, int n) {
    SetFunctor s{comma.cat, {}, {}};
    for (const auto& [x, h] : comma.objects) s.size.push_back(f->value(x).size(n));
    for (int m = 0; m < comma.cat->num_morphisms(); ++m) {
        const int src = comma.objects[Z(comma.cat->src(m))].first;
        std::vector<int> row;
        for (int e = 0; e < f->value(src).size(n); ++e) row.push_back(f->apply(comma.morphism_of[Z(m)], n, e));
        s.act.push_back(std::move(row));
    }
    return s;
}

int comma_index(const Comma& comma, int x, int h) {
    for (std::size_t i = 0; i < comma.objects.size(); ++i) {
        if (comma.objects[i] == std::make_pair(x, h)) return static_cast<int>(i);
    }
    throw InvariantError("comma_index: no such object");
}

}  // namespace

KanExtension lan(const CatFunctor& pi, const DiagramPtr& f) {
    const auto D = pi.tgt;
    const int cap = f->cap();
    struct Data {
        Comma comma;
        std::vector<Colimit> colim;          // per level
        std::vector<std::vector<Key>> rep;   // least (object, element) per class, per level
    };
    std::vector<std::shared_ptr<Data>> data;
    std::vector<SSetPtr> at;
    for (int d = 0; d < D->num_objects(); ++d) {
        auto dd = std::make_shared<Data>();
        dd->comma = slice_over(pi, d);
        for (int n = 0; n <= cap; ++n) {
            auto col = finite_colimit(level_functor(dd->comma, f, n));
            std::vector<Key> rep(Z(col.count));
            for (int o = static_cast<int>(col.cls.size()) - 1; o >= 0; --o) {
                for (int e = static_cast<int>(col.cls[Z(o)].size()) - 1; e >= 0; --e) rep[Z(col.cls[Z(o)][Z(e)])] = {o, e};
            }
            dd->colim.push_back(std::move(col));
            dd->rep.push_back(std::move(rep));
        }
        data.push_back(dd);
        at.push_back(SSet::build(
            "Lan(" + D->object_name(d) + ")", cap, [dd](int n) { return dd->rep[Z(n)]; },
            [dd, f](const DeltaMap& u, const Key& k) {
                const int x = dd->comma.objects[Z(k[0])].first;
                const int e = f->value(x).act(u, k[1]);
                return dd->rep[Z(u.dom())][Z(dd->colim[Z(u.dom())].cls[Z(k[0])][Z(e)])];
            }));
    }
    std::vector<SimplicialMap> along;
    for (int g = 0; g < D->num_morphisms(); ++g) {
        const auto& from = *data[Z(D->src(g))];
        const auto& to = *data[Z(D->tgt(g))];
        along.push_back(SimplicialMap::from_keys(at[Z(D->src(g))], at[Z(D->tgt(g))], [&](int n, const Key& k) {
            const auto [x, h] = from.comma.objects[Z(k[0])];
            const int o = comma_index(to.comma, x, D->compose(g, h));
            return to.rep[Z(n)][Z(to.colim[Z(n)].cls[Z(o)][Z(k[1])])];
        }));
    }
    auto value = make_diagram(D, at, std::move(along));
    auto pulled = restrict_diagram(pi, value);
    NatTrans unit{f, pulled, {}};
    for (int c = 0; c < pi.src->num_objects(); ++c) {
        const int d = pi.obj[Z(c)];
        const auto& dd = *data[Z(d)];
        const int o = comma_index(dd.comma, c, D->id(d));
        unit.comp.push_back(SimplicialMap::from_fn(f->at[Z(c)], at[Z(d)], [&](int n, int e) {
            return at[Z(d)]->index_of(n, dd.rep[Z(n)][Z(dd.colim[Z(n)].cls[Z(o)][Z(e)])]);
        }));
    }
    if (auto e = unit.check()) throw InvariantError("lan: unit is not natural: " + *e);
    return {value, unit};
}

KanExtension ran(const CatFunctor& pi, const DiagramPtr& x) {
    const auto D = pi.tgt;
    const int cap = x->cap();
    std::vector<std::shared_ptr<Comma>> commas;
    std::vector<SSetPtr> at;
    for (int d = 0; d < D->num_objects(); ++d) {
        auto comma = std::make_shared<Comma>(coslice_under(pi, d));
        commas.push_back(comma);
        at.push_back(SSet::build(
            "Ran(" + D->object_name(d) + ")", cap,
            [comma, x](int n) {
                auto fams = finite_limit(level_functor(*comma, x, n));
                return std::vector<Key>(fams.begin(), fams.end());
            },
            [comma, x](const DeltaMap& u, const Key& k) {
                Key out(k.size());
                for (std::size_t o = 0; o < k.size(); ++o) out[o] = x->value(comma->objects[o].first).act(u, k[o]);
                return out;
            }));
    }
    std::vector<SimplicialMap> along;
    for (int g = 0; g < D->num_morphisms(); ++g) {
        const auto& from = *commas[Z(D->src(g))];
        const auto& to = *commas[Z(D->tgt(g))];
        along.push_back(SimplicialMap::from_keys(at[Z(D->src(g))], at[Z(D->tgt(g))], [&](int, const Key& k) {
            Key out;
            for (const auto& [c, h] : to.objects) out.push_back(k[Z(comma_index(from, c, D->compose(h, g)))]);
            return out;
        }));
    }
    auto value = make_diagram(D, at, std::move(along));
    auto pulled = restrict_diagram(pi, value);
    NatTrans counit{pulled, x, {}};
    for (int c = 0; c < pi.src->num_objects(); ++c) {
        const int d = pi.obj[Z(c)];
        const int o = comma_index(*commas[Z(d)], c, D->id(d));
        counit.comp.push_back(SimplicialMap::from_fn(at[Z(d)], x->at[Z(c)], [&](int n, int s) { return at[Z(d)]->key(n, s)[Z(o)]; }));
    }
    if (auto e = counit.check()) throw InvariantError("ran: counit is not natural: " + *e);
    return {value, counit};
}

KanExtension ho_lan(const CatFunctor& pi, const DiagramPtr& f) { return lan(pi, dugger_Q(f).qf); }

BijectionReport check_lan_adjunction(const CatFunctor& pi, const KanExtension& l, const DiagramPtr& y) {
    auto pulled = restrict_diagram(pi, y);
    const auto& F = l.unit.source;
    return compare_sides(all_nat_trans(l.value, y), all_nat_trans(F, pulled), [&](const NatTrans& theta) {
        NatTrans out{F, pulled, {}};
        for (int c = 0; c < pi.src->num_objects(); ++c) out.comp.push_back(l.unit.comp[Z(c)].then(theta.comp[Z(pi.obj[Z(c)])]));
        return out;
    });
}

BijectionReport check_ran_adjunction(const CatFunctor& pi, const KanExtension& r, const DiagramPtr& y) {
    auto pulled = restrict_diagram(pi, y);
    const auto& X = r.unit.target;
    return compare_sides(all_nat_trans(y, r.value), all_nat_trans(pulled, X), [&](const NatTrans& theta) {
        NatTrans out{pulled, X, {}};
        for (int c = 0; c < pi.src->num_objects(); ++c) out.comp.push_back(theta.comp[Z(pi.obj[Z(c)])].then(r.unit.comp[Z(c)]));
        return out;
    });
}

// ---- mapping spaces -------------------------------------------------------------------

MappingSpaceReport mapping_space_steps(const DiagramPtr& f, const DiagramPtr& g, int cap) {
    MappingSpaceReport rep;
    auto rf = rectify(f, cap);
    auto rg = rectify(g, cap, rf.nerve);
    auto slice = all_slice_maps(rf.slice.proj, rg.slice.proj);
    rep.slice_maps = slice.size();
    auto shriek = r_shriek(rf.slice, f->cat, cap);
    auto right = all_nat_trans(shriek.diagram, g);
    rep.shriek_maps = right.size();
    std::map<Components, int> seen;
    bool ok = true;
    for (const auto& phi : slice) {
        auto flat = adjunct_flat(shriek, rg, phi);
        if (flat.check() || !seen.emplace(components_of(flat), 0).second) ok = false;
    }
    rep.adjunction_bijective = ok && seen.size() == right.size();
    rep.dugger_maps = all_nat_trans(dugger_Q(f).qf, g).size();
    return rep;
}

}  // namespace ssr

#include "ssr/diagram.hpp"

#include <algorithm>

#include "ssr/error.hpp"

namespace ssr {

int Diagram::cap() const {
    int c = at.empty() ? 0 : at.front()->cap();
    for (const auto& x : at) c = std::min(c, x->cap());
    return c;
}

std::optional<std::string> Diagram::check() const {
    const auto& C = *cat;
    if (static_cast<int>(at.size()) != C.num_objects() || static_cast<int>(along.size()) != C.num_morphisms()) {
        return "diagram tables do not match the category";
    }
    const int c = cap();
    for (int m = 0; m < C.num_morphisms(); ++m) {
        const auto& f = along[static_cast<std::size_t>(m)];
        if (!f.source()->same_as(value(C.src(m))) || !f.target()->same_as(value(C.tgt(m)))) {
            return "F(" + C.morphism(m).name + ") has the wrong source or target";
        }
        if (f.cap() < c) return "F(" + C.morphism(m).name + ") is tabulated below the cap";
        if (auto e = f.check()) return "F(" + C.morphism(m).name + "): " + *e;
        if (C.is_identity(m)) {
            for (int n = 0; n <= c; ++n) {
                for (int s = 0; s < value(C.src(m)).size(n); ++s) {
                    if (f(n, s) != s) return "F(" + C.morphism(m).name + ") is not the identity at " + value(C.src(m)).describe(n, s);
                }
            }
        }
    }
    for (int f = 0; f < C.num_morphisms(); ++f) {
        for (int b = 0; b < C.num_objects(); ++b) {
            for (int g : C.hom(C.tgt(f), b)) {
                int gf = C.compose(g, f);
                for (int n = 0; n <= c; ++n) {
                    for (int s = 0; s < value(C.src(f)).size(n); ++s) {
                        if (apply(gf, n, s) != apply(g, n, apply(f, n, s))) {
                            return "F(" + C.morphism(g).name + " o " + C.morphism(f).name + ") != F(" + C.morphism(g).name +
                                   ") o F(" + C.morphism(f).name + ") at " + value(C.src(f)).describe(n, s);
                        }
                    }
                }
            }
        }
    }
    return std::nullopt;
}

DiagramPtr make_diagram(CatPtr cat, std::vector<SSetPtr> at, std::vector<SimplicialMap> along) {
    auto d = std::make_shared<Diagram>(Diagram{std::move(cat), std::move(at), std::move(along)});
    if (auto e = d->check()) throw InvariantError("diagram: " + *e);
    return d;
}

DiagramPtr constant_diagram(const CatPtr& cat, const SSetPtr& x) {
    std::vector<SSetPtr> at(static_cast<std::size_t>(cat->num_objects()), x);
    std::vector<SimplicialMap> along(static_cast<std::size_t>(cat->num_morphisms()), SimplicialMap::identity(x));
    return make_diagram(cat, std::move(at), std::move(along));
}

DiagramPtr restrict_diagram(const CatFunctor& psi, const DiagramPtr& f) {
    std::vector<SSetPtr> at;
    std::vector<SimplicialMap> along;
    for (int o : psi.obj) at.push_back(f->at[static_cast<std::size_t>(o)]);
    for (int m : psi.mor) along.push_back(f->along[static_cast<std::size_t>(m)]);
    return make_diagram(psi.src, std::move(at), std::move(along));
}

DiagramPtr diagram_product(const DiagramPtr& f, const DiagramPtr& g) {
    const auto& C = *f->cat;
    std::vector<SSetPtr> at;
    for (int c = 0; c < C.num_objects(); ++c) at.push_back(product(f->at[static_cast<std::size_t>(c)], g->at[static_cast<std::size_t>(c)]));
    std::vector<SimplicialMap> along;
    for (int m = 0; m < C.num_morphisms(); ++m) {
        const auto& src = at[static_cast<std::size_t>(C.src(m))];
        const auto& tgt = at[static_cast<std::size_t>(C.tgt(m))];
        along.push_back(SimplicialMap::from_keys(src, tgt, [&](int n, const Key& k) {
            return Key{f->apply(m, n, k[0]), g->apply(m, n, k[1])};
        }));
    }
    return make_diagram(f->cat, std::move(at), std::move(along));
}

DiagramPtr diagram_times(const DiagramPtr& f, const SSetPtr& x) {
    return diagram_product(f, constant_diagram(f->cat, x));
}

// ---- natural transformations ---------------------------------------------

std::optional<std::string> NatTrans::check() const {
    const auto& C = *source->cat;
    if (comp.size() != source->at.size()) return "natural transformation has the wrong number of components";
    const int cap = std::min(source->cap(), target->cap());
    for (int c = 0; c < C.num_objects(); ++c) {
        const auto& h = comp[static_cast<std::size_t>(c)];
        if (!h.source()->same_as(source->value(c)) || !h.target()->same_as(target->value(c))) {
            return "component at " + C.object_name(c) + " has the wrong source or target";
        }
        if (auto e = h.check()) return "component at " + C.object_name(c) + ": " + *e;
    }
    for (int m = 0; m < C.num_morphisms(); ++m) {
        if (C.is_identity(m)) continue;
        int a = C.src(m);
        int b = C.tgt(m);
        for (int n = 0; n <= cap; ++n) {
            for (int s = 0; s < source->value(a).size(n); ++s) {
                if (target->apply(m, n, comp[static_cast<std::size_t>(a)](n, s)) != comp[static_cast<std::size_t>(b)](n, source->apply(m, n, s))) {
                    return "naturality square for " + C.morphism(m).name + " fails at " + source->value(a).describe(n, s);
                }
            }
        }
    }
    return std::nullopt;
}

NatTrans NatTrans::then(const NatTrans& g) const {
    NatTrans out{source, g.target, {}};
    for (std::size_t c = 0; c < comp.size(); ++c) out.comp.push_back(comp[c].then(g.comp[c]));
    return out;
}

NatTrans NatTrans::identity(const DiagramPtr& f) {
    NatTrans out{f, f, {}};
    for (const auto& x : f->at) out.comp.push_back(SimplicialMap::identity(x));
    return out;
}

bool NatTrans::objectwise_injective() const {
    return std::all_of(comp.begin(), comp.end(), [](const SimplicialMap& m) { return m.injective(); });
}

// ---- map search ----------------------------------------------------------------

std::size_t MapSearch::run(const std::function<bool(const std::vector<std::vector<std::vector<int>>>&)>& found) const {
    const int B = static_cast<int>(sources.size());
    struct Unknown {
        int b, n, x;
    };
    std::vector<Unknown> unknowns;
    std::vector<std::vector<std::vector<int>>> pos(static_cast<std::size_t>(B));
    std::vector<std::vector<std::vector<NormalForm>>> nf(static_cast<std::size_t>(B));
    for (int b = 0; b < B; ++b) {
        const auto& X = *sources[static_cast<std::size_t>(b)];
        pos[static_cast<std::size_t>(b)].resize(static_cast<std::size_t>(cap) + 1);
        nf[static_cast<std::size_t>(b)].resize(static_cast<std::size_t>(cap) + 1);
        for (int n = 0; n <= cap; ++n) {
            pos[static_cast<std::size_t>(b)][static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(X.size(n)), -1);
            for (int s = 0; s < X.size(n); ++s) nf[static_cast<std::size_t>(b)][static_cast<std::size_t>(n)].push_back(X.normalize(n, s));
        }
    }
    for (int n = 0; n <= cap; ++n) {
        for (int b = 0; b < B; ++b) {
            for (int x : sources[static_cast<std::size_t>(b)]->nondegenerate_at(n)) {
                pos[static_cast<std::size_t>(b)][static_cast<std::size_t>(n)][static_cast<std::size_t>(x)] = static_cast<int>(unknowns.size());
                unknowns.push_back({b, n, x});
            }
        }
    }
    const int U = static_cast<int>(unknowns.size());
    std::vector<int> img(static_cast<std::size_t>(U), -1);
    auto image_of = [&](int b, int n, int s) {
        const auto& f = nf[static_cast<std::size_t>(b)][static_cast<std::size_t>(n)][static_cast<std::size_t>(s)];
        int u = pos[static_cast<std::size_t>(b)][static_cast<std::size_t>(f.level)][static_cast<std::size_t>(f.index)];
        return targets[static_cast<std::size_t>(b)]->act(f.surj, img[static_cast<std::size_t>(u)]);
    };
    struct Constraint {
        int u;
        int link;
        int v;
        DeltaMap surj;
    };
    std::vector<std::vector<Constraint>> cons(static_cast<std::size_t>(U));
    for (int u = 0; u < U; ++u) {
        auto [b, n, x] = unknowns[static_cast<std::size_t>(u)];
        for (int l = 0; l < static_cast<int>(links.size()); ++l) {
            const auto& L = links[static_cast<std::size_t>(l)];
            if (L.from != b) continue;
            int y = L.src_map(n, x);
            const auto& f = nf[static_cast<std::size_t>(L.to)][static_cast<std::size_t>(n)][static_cast<std::size_t>(y)];
            int v = pos[static_cast<std::size_t>(L.to)][static_cast<std::size_t>(f.level)][static_cast<std::size_t>(f.index)];
            cons[static_cast<std::size_t>(std::max(u, v))].push_back({u, l, v, f.surj});
        }
    }
    // candidates indexed by their 0-th face
    std::vector<std::vector<std::vector<std::vector<int>>>> by_face(static_cast<std::size_t>(B));
    for (int b = 0; b < B; ++b) {
        const auto& Y = *targets[static_cast<std::size_t>(b)];
        by_face[static_cast<std::size_t>(b)].resize(static_cast<std::size_t>(cap) + 1);
        for (int n = 1; n <= cap; ++n) {
            auto& row = by_face[static_cast<std::size_t>(b)][static_cast<std::size_t>(n)];
            row.assign(static_cast<std::size_t>(Y.size(n - 1)), {});
            for (int t = 0; t < Y.size(n); ++t) row[static_cast<std::size_t>(Y.face(n, 0, t))].push_back(t);
        }
    }
    std::size_t visited = 0;
    bool stop = false;
    std::vector<int> faces;
    std::function<void(int)> rec = [&](int u) {
        if (stop) return;
        if (u == U) {
            ++visited;
            std::vector<std::vector<std::vector<int>>> comps(static_cast<std::size_t>(B));
            for (int b = 0; b < B; ++b) {
                comps[static_cast<std::size_t>(b)].resize(static_cast<std::size_t>(cap) + 1);
                for (int n = 0; n <= cap; ++n) {
                    for (int s = 0; s < sources[static_cast<std::size_t>(b)]->size(n); ++s) comps[static_cast<std::size_t>(b)][static_cast<std::size_t>(n)].push_back(image_of(b, n, s));
                }
            }
            if (!found(comps)) stop = true;
            return;
        }
        auto [b, n, x] = unknowns[static_cast<std::size_t>(u)];
        const auto& X = *sources[static_cast<std::size_t>(b)];
        const auto& Y = *targets[static_cast<std::size_t>(b)];
        std::vector<int> need;
        for (int i = 0; i <= n && n >= 1; ++i) need.push_back(image_of(b, n - 1, X.face(n, i, x)));
        auto ok = [&](int t) {
            for (int i = 1; i < static_cast<int>(need.size()); ++i) {
                if (Y.face(n, i, t) != need[static_cast<std::size_t>(i)]) return false;
            }
            if (!filter.empty() && filter[static_cast<std::size_t>(b)] && !filter[static_cast<std::size_t>(b)](n, x, t)) return false;
            img[static_cast<std::size_t>(u)] = t;
            for (const auto& c : cons[static_cast<std::size_t>(u)]) {
                const auto& L = links[static_cast<std::size_t>(c.link)];
                int lhs = L.tgt_map(unknowns[static_cast<std::size_t>(c.u)].n, img[static_cast<std::size_t>(c.u)]);
                int rhs = targets[static_cast<std::size_t>(L.to)]->act(c.surj, img[static_cast<std::size_t>(c.v)]);
                if (lhs != rhs) return false;
            }
            return true;
        };
        int fixed_t = -1;
        if (!fixed.empty() && !fixed[static_cast<std::size_t>(b)].empty()) fixed_t = fixed[static_cast<std::size_t>(b)][static_cast<std::size_t>(n)][static_cast<std::size_t>(x)];
        auto try_t = [&](int t) {
            if ((n == 0 || Y.face(n, 0, t) == need[0]) && ok(t)) rec(u + 1);
            img[static_cast<std::size_t>(u)] = -1;
        };
        if (fixed_t >= 0) {
            try_t(fixed_t);
        } else if (n == 0) {
            for (int t = 0; t < Y.size(0) && !stop; ++t) try_t(t);
        } else {
            for (int t : by_face[static_cast<std::size_t>(b)][static_cast<std::size_t>(n)][static_cast<std::size_t>(need[0])]) {
                if (stop) break;
                try_t(t);
            }
        }
    };
    rec(0);
    return visited;
}

std::vector<SimplicialMap> all_maps(const SSetPtr& x, const SSetPtr& y) {
    MapSearch ms;
    ms.sources = {x};
    ms.targets = {y};
    ms.cap = std::min(x->cap(), y->cap());
    std::vector<SimplicialMap> out;
    ms.run([&](const auto& comps) {
        out.emplace_back(x, y, comps[0]);
        return true;
    });
    return out;
}

std::vector<SimplicialMap> all_slice_maps(const SimplicialMap& p, const SimplicialMap& q) {
    MapSearch ms;
    ms.sources = {p.source()};
    ms.targets = {q.source()};
    ms.cap = std::min({p.cap(), q.cap()});
    ms.filter = {[&](int n, int x, int t) { return q(n, t) == p(n, x); }};
    std::vector<SimplicialMap> out;
    ms.run([&](const auto& comps) {
        out.emplace_back(p.source(), q.source(), comps[0]);
        return true;
    });
    return out;
}

std::vector<NatTrans> all_nat_trans(const DiagramPtr& f, const DiagramPtr& g, std::size_t limit) {
    const auto& C = *f->cat;
    MapSearch ms;
    ms.sources = f->at;
    ms.targets = g->at;
    ms.cap = std::min(f->cap(), g->cap());
    for (int m = 0; m < C.num_morphisms(); ++m) {
        if (C.is_identity(m)) continue;
        ms.links.push_back({C.src(m), C.tgt(m), f->along[static_cast<std::size_t>(m)], g->along[static_cast<std::size_t>(m)]});
    }
    std::vector<NatTrans> out;
    ms.run([&](const auto& comps) {
        NatTrans t{f, g, {}};
        for (int c = 0; c < C.num_objects(); ++c) t.comp.emplace_back(f->at[static_cast<std::size_t>(c)], g->at[static_cast<std::size_t>(c)], comps[static_cast<std::size_t>(c)]);
        out.push_back(std::move(t));
        return out.size() < limit;
    });
    return out;
}

}  // namespace ssr

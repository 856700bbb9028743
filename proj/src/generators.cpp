#include "ssr/generators.hpp"

#include <functional>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "ssr/error.hpp"

namespace ssr::gen {

namespace {

inline std::size_t Z(int x) { return static_cast<std::size_t>(x); }

int image_bit(const DeltaMap& u) {
    bool has0 = false;
    bool has1 = false;
    for (int v : u.values()) (v == 0 ? has0 : has1) = true;
    return has0 && has1 ? 4 : (has0 ? 1 : 2);
}

bool below(const FinCategory& p, int a, int b) { return !p.hom(a, b).empty(); }

const std::vector<int> kMasks{0, 1, 2, 3, 7};

// Normalises class labels to first-appearance order.
std::vector<int> relabel(const std::vector<int>& root) {
    std::map<int, int> seen;
    std::vector<int> out;
    for (int r : root) {
        auto it = seen.emplace(r, static_cast<int>(seen.size())).first;
        out.push_back(it->second);
    }
    return out;
}

int num_classes(const std::vector<int>& cls) { return cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1; }

// Finest partition coarser than every partition in `parts`, with `merges`
// random extra merges.
std::vector<int> join(int g, const std::vector<const std::vector<int>*>& parts, Rng& rng, int merges) {
    std::vector<int> p(Z(g));
    std::iota(p.begin(), p.end(), 0);
    std::function<int(int)> root = [&](int x) { return p[Z(x)] == x ? x : p[Z(x)] = root(p[Z(x)]); };
    auto unite = [&](int a, int b) {
        a = root(a);
        b = root(b);
        if (a != b) p[Z(std::max(a, b))] = std::min(a, b);
    };
    for (const auto* part : parts) {
        for (int x = 0; x < g; ++x) {
            for (int y = x + 1; y < g; ++y) {
                if ((*part)[Z(x)] == (*part)[Z(y)]) unite(x, y);
            }
        }
    }
    std::uniform_int_distribution<int> pick(0, std::max(0, g - 1));
    for (int m = 0; m < merges; ++m) unite(pick(rng), pick(rng));
    std::vector<int> roots;
    for (int x = 0; x < g; ++x) roots.push_back(root(x));
    return relabel(roots);
}

// A diagram on a thin category from values and object functions along
// every non-identity morphism.
DiagramPtr thin_diagram(const CatPtr& cat, std::vector<SSetPtr> at,
                        const std::function<SimplicialMap(int, int)>& along_fn) {
    std::vector<SimplicialMap> along;
    for (int m = 0; m < cat->num_morphisms(); ++m) {
        if (cat->is_identity(m)) {
            along.push_back(SimplicialMap::identity(at[Z(cat->src(m))]));
        } else {
            along.push_back(along_fn(cat->src(m), cat->tgt(m)));
        }
    }
    return make_diagram(cat, std::move(at), std::move(along));
}

std::vector<char> random_up_set(Rng& rng, const FinCategory& p, double prob) {
    std::vector<char> up(Z(p.num_objects()), 0);
    if (!std::bernoulli_distribution(prob)(rng)) return up;
    int o = std::uniform_int_distribution<int>(0, p.num_objects() - 1)(rng);
    for (int c = 0; c < p.num_objects(); ++c) up[Z(c)] = below(p, o, c) ? 1 : 0;
    return up;
}

}  // namespace

CatPtr random_index(Rng& rng, int max_objects) {
    int k = std::uniform_int_distribution<int>(1, max_objects)(rng);
    return random_poset(k, 0.6, rng);
}

SSetPtr interval_piece(int mask, int cap) {
    if (std::find(kMasks.begin(), kMasks.end(), mask) == kMasks.end()) {
        throw InvariantError("interval_piece: " + std::to_string(mask) + " is not a subcomplex of Delta1");
    }
    return sub_simplex("I" + std::to_string(mask), 1, cap, [mask](const DeltaMap& u) { return (image_bit(u) & mask) != 0; });
}

DiagramPtr interval_diagram(const CatPtr& poset, const std::vector<int>& mask, const std::vector<char>& collapsed, int cap) {
    std::vector<SSetPtr> at;
    auto pt = standard_simplex(0, cap);
    for (int c = 0; c < poset->num_objects(); ++c) at.push_back(collapsed[Z(c)] ? pt : interval_piece(mask[Z(c)], cap));
    return thin_diagram(poset, at, [&](int c, int c2) {
        if (collapsed[Z(c2)]) return SimplicialMap::from_fn(at[Z(c)], at[Z(c2)], [](int, int) { return 0; });
        if (collapsed[Z(c)]) throw InvariantError("interval_diagram: collapsed set is not up-closed");
        if ((mask[Z(c)] & ~mask[Z(c2)]) != 0) throw InvariantError("interval_diagram: masks do not grow along the order");
        return SimplicialMap::from_keys(at[Z(c)], at[Z(c2)], [](int, const Key& k) { return k; });
    });
}

namespace {

std::vector<int> random_masks(Rng& rng, const FinCategory& p, const std::vector<int>* upper) {
    std::vector<int> mask(Z(p.num_objects()), 0);
    for (int c = 0; c < p.num_objects(); ++c) {
        int lower = 0;
        for (int b = 0; b < c; ++b) {
            if (below(p, b, c)) lower |= mask[Z(b)];
        }
        std::vector<int> ok;
        for (int m : kMasks) {
            if ((lower & ~m) == 0 && (!upper || (m & ~(*upper)[Z(c)]) == 0)) ok.push_back(m);
        }
        mask[Z(c)] = ok[Z(std::uniform_int_distribution<int>(0, static_cast<int>(ok.size()) - 1)(rng))];
    }
    return mask;
}

}  // namespace

DiagramPtr random_interval_diagram(Rng& rng, const CatPtr& poset, int cap, bool allow_collapse) {
    auto mask = random_masks(rng, *poset, nullptr);
    auto up = random_up_set(rng, *poset, allow_collapse ? 0.35 : 0.0);
    return interval_diagram(poset, mask, up, cap);
}

SSetPtr discrete_set(int k, int cap) { return nerve(discrete_category(k), cap); }

SSetPtr codiscrete_nerve(int k, int cap) { return nerve(codiscrete_groupoid(k), cap); }

SimplicialMap object_function(const SSetPtr& x, const SSetPtr& y, const std::vector<int>& f) {
    // vertices of both nerves are keyed [object]; a simplex is determined by
    // its vertices since the categories are thin
    auto verts = [](const SSet& s, int n, int i) {
        std::vector<int> v;
        for (int k = 0; k <= n; ++k) v.push_back(s.key(0, s.vertex(n, i, k))[0]);
        return v;
    };
    std::vector<std::map<std::vector<int>, int>> by_verts(Z(y->cap()) + 1);
    for (int n = 0; n <= y->cap(); ++n) {
        for (int t = 0; t < y->size(n); ++t) by_verts[Z(n)][verts(*y, n, t)] = t;
    }
    return SimplicialMap::from_fn(x, y, [&](int n, int s) {
        auto v = verts(*x, n, s);
        for (int& o : v) o = f[Z(o)];
        auto it = by_verts[Z(n)].find(v);
        if (it == by_verts[Z(n)].end()) throw InvariantError("object_function: no simplex with the image vertices");
        return it->second;
    });
}

DiagramPtr quotient_diagram(const CatPtr& poset, const QuotientData& q, int cap) {
    std::vector<SSetPtr> at;
    for (int c = 0; c < poset->num_objects(); ++c) {
        int k = num_classes(q.cls[Z(c)]);
        at.push_back(q.codiscrete[Z(c)] ? codiscrete_nerve(k, cap) : discrete_set(k, cap));
    }
    return thin_diagram(poset, at, [&](int c, int c2) {
        if (q.codiscrete[Z(c)] && !q.codiscrete[Z(c2)]) throw InvariantError("quotient_diagram: codiscrete set is not up-closed");
        std::vector<int> f(Z(num_classes(q.cls[Z(c)])), -1);
        for (std::size_t x = 0; x < q.cls[Z(c)].size(); ++x) {
            int& slot = f[Z(q.cls[Z(c)][x])];
            int img = q.cls[Z(c2)][x];
            if (slot >= 0 && slot != img) throw InvariantError("quotient_diagram: partitions do not coarsen");
            slot = img;
        }
        return object_function(at[Z(c)], at[Z(c2)], f);
    });
}

QuotientData random_quotients(Rng& rng, const CatPtr& poset, int g) {
    QuotientData q;
    const auto& p = *poset;
    for (int c = 0; c < p.num_objects(); ++c) {
        std::vector<const std::vector<int>*> parts;
        for (int b = 0; b < c; ++b) {
            if (below(p, b, c)) parts.push_back(&q.cls[Z(b)]);
        }
        q.cls.push_back(join(g, parts, rng, std::uniform_int_distribution<int>(0, 1)(rng)));
    }
    q.codiscrete = random_up_set(rng, p, 0.5);
    return q;
}

QuotientData random_coarsening(Rng& rng, const CatPtr& poset, const QuotientData& q) {
    QuotientData out;
    out.codiscrete = q.codiscrete;
    const auto& p = *poset;
    const int g = static_cast<int>(q.cls.empty() ? 0 : q.cls[0].size());
    for (int c = 0; c < p.num_objects(); ++c) {
        std::vector<const std::vector<int>*> parts{&q.cls[Z(c)]};
        for (int b = 0; b < c; ++b) {
            if (below(p, b, c)) parts.push_back(&out.cls[Z(b)]);
        }
        out.cls.push_back(join(g, parts, rng, std::uniform_int_distribution<int>(0, 1)(rng)));
    }
    return out;
}

NatTrans quotient_map(const DiagramPtr& f, const QuotientData& q, const DiagramPtr& g, const QuotientData& coarse) {
    NatTrans out{f, g, {}};
    for (int c = 0; c < f->cat->num_objects(); ++c) {
        std::vector<int> fn(Z(num_classes(q.cls[Z(c)])), 0);
        for (std::size_t x = 0; x < q.cls[Z(c)].size(); ++x) fn[Z(q.cls[Z(c)][x])] = coarse.cls[Z(c)][x];
        out.comp.push_back(object_function(f->at[Z(c)], g->at[Z(c)], fn));
    }
    if (auto e = out.check()) throw InvariantError("quotient_map: " + *e);
    return out;
}

DiagramPtr random_kan_diagram(Rng& rng, const CatPtr& poset, int cap) {
    int g = std::uniform_int_distribution<int>(1, 3)(rng);
    return quotient_diagram(poset, random_quotients(rng, poset, g), cap);
}

Injection random_injection(Rng& rng, const CatPtr& poset, int cap) {
    auto big = random_masks(rng, *poset, nullptr);
    auto small = random_masks(rng, *poset, &big);
    std::vector<char> none(Z(poset->num_objects()), 0);
    auto F = interval_diagram(poset, small, none, cap);
    auto G = interval_diagram(poset, big, none, cap);
    NatTrans f{F, G, {}};
    for (int c = 0; c < poset->num_objects(); ++c) {
        f.comp.push_back(SimplicialMap::from_keys(F->at[Z(c)], G->at[Z(c)], [](int, const Key& k) { return k; }));
    }
    return {F, G, f};
}

SliceObject generated_subobject(const SSetPtr& base, const std::vector<std::pair<int, int>>& gens) {
    const int cap = base->cap();
    std::vector<std::set<Key>> levels(Z(cap) + 1);
    for (auto [d, s] : gens) {
        for (int n = 0; n <= cap; ++n) {
            for (const auto& u : DeltaMap::all(n, d)) levels[Z(n)].insert(base->key(n, base->act(u, s)));
        }
    }
    auto total = SSet::build(
        "sub(" + base->name() + ")", cap,
        [levels](int n) { return std::vector<Key>(levels[Z(n)].begin(), levels[Z(n)].end()); },
        [base](const DeltaMap& w, const Key& k) { return base->key(w.dom(), base->act(w, base->index_of(w.cod(), k))); });
    auto proj = SimplicialMap::from_fn(total, base, [&](int n, int s) { return base->index_of(n, total->key(n, s)); });
    return {total, proj};
}

SliceObject random_subobject(Rng& rng, const SSetPtr& base, int maxdim, int count) {
    std::vector<std::pair<int, int>> gens;
    for (int i = 0; i < count; ++i) {
        int d = std::uniform_int_distribution<int>(0, std::min(maxdim, base->cap()))(rng);
        auto nd = base->nondegenerate_at(d);
        if (nd.empty()) {
            d = 0;
            nd = base->nondegenerate_at(0);
        }
        gens.emplace_back(d, nd[Z(std::uniform_int_distribution<int>(0, static_cast<int>(nd.size()) - 1)(rng))]);
    }
    return generated_subobject(base, gens);
}

std::vector<Fixture> kan_fixtures(int cap) {
    auto one = linear_order(1);
    auto two = linear_order(2);
    auto span = span_category();
    auto pt = codiscrete_nerve(1, cap);
    auto j2 = codiscrete_nerve(2, cap);
    auto j3 = codiscrete_nerve(3, cap);
    auto d2 = discrete_set(2, cap);
    std::vector<Fixture> out;
    out.push_back({"[1]: constant point", constant_diagram(one, pt), true});
    out.push_back({"[1]: J2 -> point", thin_diagram(one, {j2, pt}, [&](int, int) { return object_function(j2, pt, {0, 0}); }), true});
    out.push_back({"[2]: point -> J2 -> J3", thin_diagram(two, {pt, j2, j3}, [&](int a, int b) {
                       if (a == 0 && b == 1) return object_function(pt, j2, {0});
                       if (a == 1 && b == 2) return object_function(j2, j3, {0, 1});
                       return object_function(pt, j3, {0});
                   }),
                   true});
    // span b <- a -> c, objects a, b, c
    out.push_back({"span: J2 <- J2 -> point", thin_diagram(span, {j2, j2, pt}, [&](int, int b) {
                       return b == 1 ? object_function(j2, j2, {1, 0}) : object_function(j2, pt, {0, 0});
                   }),
                   true});
    out.push_back({"[1]: swap on two points", thin_diagram(one, {d2, d2}, [&](int, int) { return object_function(d2, d2, {1, 0}); }), true});
    out.push_back({"[1]: two points -> point (control)", thin_diagram(one, {d2, pt}, [&](int, int) { return object_function(d2, pt, {0, 0}); }), false});
    return out;
}

bool is_poset(const FinCategory& c) {
    for (int a = 0; a < c.num_objects(); ++a) {
        for (int b = 0; b < c.num_objects(); ++b) {
            if (c.hom(a, b).size() > 1) return false;
            if (a != b && !c.hom(a, b).empty() && !c.hom(b, a).empty()) return false;
        }
    }
    return true;
}

CatPtr random_category(Rng& rng, int max_objects) {
    switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
        case 0:
            return cyclic_group(2);
        case 1:
            return cyclic_group(3);
        case 2:
            return max_objects >= 2 ? codiscrete_groupoid(2) : cyclic_group(2);
        case 3:
            return discrete_category(std::uniform_int_distribution<int>(1, max_objects)(rng));
        default:
            return random_index(rng, max_objects);
    }
}

DiagramPtr random_diagram(Rng& rng, const CatPtr& c, int cap) {
    std::bernoulli_distribution coin(0.5);
    if (is_poset(*c)) return coin(rng) ? random_interval_diagram(rng, c, cap) : random_kan_diagram(rng, c, cap);
    if (coin(rng)) {
        static const std::vector<int> pieces{1, 3, 7};
        auto x = coin(rng) ? interval_piece(pieces[Z(std::uniform_int_distribution<int>(0, 2)(rng))], cap) : codiscrete_nerve(2, cap);
        return constant_diagram(c, x);
    }
    auto x = coin(rng) ? discrete_set(2, cap) : codiscrete_nerve(2, cap);
    auto swap = object_function(x, x, {1, 0});
    auto id = SimplicialMap::identity(x);
    std::vector<SSetPtr> at(Z(c->num_objects()), x);
    // parity from the group structure when there is one object, else a random coboundary
    std::vector<int> p(Z(c->num_objects()));
    for (int& b : p) b = coin(rng) ? 1 : 0;
    auto build = [&](bool from_index) {
        std::vector<SimplicialMap> along;
        for (int m = 0; m < c->num_morphisms(); ++m) {
            int par = from_index ? m % 2 : p[Z(c->src(m))] ^ p[Z(c->tgt(m))];
            along.push_back(par ? swap : id);
        }
        return make_diagram(c, at, std::move(along));
    };
    if (c->num_objects() == 1) {
        try {
            return build(true);
        } catch (const InvariantError&) {
        }
    }
    return build(false);
}

CatFunctor random_arrow(Rng& rng, const CatPtr& c) {
    int m = std::uniform_int_distribution<int>(0, c->num_morphisms() - 1)(rng);
    auto one = linear_order(1);
    CatFunctor f{one, c, {c->src(m), c->tgt(m)}, {}};
    for (int k = 0; k < one->num_morphisms(); ++k) f.mor.push_back(one->is_identity(k) ? c->id(f.obj[Z(one->src(k))]) : m);
    if (auto e = f.check()) throw InvariantError("random_arrow: " + *e);
    return f;
}

std::vector<CatFunctor> all_functors(const CatPtr& c, const CatPtr& d) {
    std::vector<CatFunctor> out;
    CatFunctor f{c, d, std::vector<int>(Z(c->num_objects())), std::vector<int>(Z(c->num_morphisms()))};
    std::function<void(int)> mors = [&](int m) {
        if (m == c->num_morphisms()) {
            if (!f.check()) out.push_back(f);
            return;
        }
        if (c->is_identity(m)) {
            f.mor[Z(m)] = d->id(f.obj[Z(c->src(m))]);
            mors(m + 1);
            return;
        }
        for (int g : d->hom(f.obj[Z(c->src(m))], f.obj[Z(c->tgt(m))])) {
            f.mor[Z(m)] = g;
            mors(m + 1);
        }
    };
    std::function<void(int)> objs = [&](int o) {
        if (o == c->num_objects()) {
            mors(0);
            return;
        }
        for (int x = 0; x < d->num_objects(); ++x) {
            f.obj[Z(o)] = x;
            objs(o + 1);
        }
    };
    objs(0);
    return out;
}

CatFunctor random_functor(Rng& rng, const CatPtr& c, const CatPtr& d) {
    auto all = all_functors(c, d);
    if (all.empty()) throw InvariantError("random_functor: no functor " + c->name() + " -> " + d->name());
    return all[Z(std::uniform_int_distribution<int>(0, static_cast<int>(all.size()) - 1)(rng))];
}

}  // namespace ssr::gen

#include "ssr/category.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <numeric>

#include "ssr/error.hpp"

namespace ssr {

// ---- FinCategory ------------------------------------------------------

CatPtr FinCategory::make(std::string name, std::vector<std::string> objects, std::vector<Morphism> morphisms,
                         std::vector<int> ids, const std::function<int(int, int)>& compose) {
    auto c = std::make_shared<FinCategory>();
    c->name_ = std::move(name);
    c->objects_ = std::move(objects);
    c->mors_ = std::move(morphisms);
    c->ids_ = std::move(ids);
    const int O = c->num_objects();
    const int M = c->num_morphisms();
    if (static_cast<int>(c->ids_.size()) != O) throw InvariantError(c->name_ + ": one identity per object required");
    for (int m = 0; m < M; ++m) {
        const auto& mm = c->mors_[static_cast<std::size_t>(m)];
        if (mm.src < 0 || mm.src >= O || mm.tgt < 0 || mm.tgt >= O) {
            throw InvariantError(c->name_ + ": morphism " + mm.name + " has an unknown endpoint");
        }
    }
    for (int o = 0; o < O; ++o) {
        int i = c->ids_[static_cast<std::size_t>(o)];
        if (i < 0 || i >= M || c->mors_[static_cast<std::size_t>(i)].src != o || c->mors_[static_cast<std::size_t>(i)].tgt != o) {
            throw InvariantError(c->name_ + ": bad identity for object " + c->objects_[static_cast<std::size_t>(o)]);
        }
    }
    c->comp_.assign(static_cast<std::size_t>(M) * static_cast<std::size_t>(M), -1);
    for (int g = 0; g < M; ++g) {
        for (int f = 0; f < M; ++f) {
            if (c->mors_[static_cast<std::size_t>(f)].tgt != c->mors_[static_cast<std::size_t>(g)].src) continue;
            int gf = compose(g, f);
            if (gf < 0 || gf >= M || c->mors_[static_cast<std::size_t>(gf)].src != c->mors_[static_cast<std::size_t>(f)].src ||
                c->mors_[static_cast<std::size_t>(gf)].tgt != c->mors_[static_cast<std::size_t>(g)].tgt) {
                throw InvariantError(c->name_ + ": composite " + c->mors_[static_cast<std::size_t>(g)].name + " o " +
                                     c->mors_[static_cast<std::size_t>(f)].name + " is ill-typed");
            }
            c->comp_[static_cast<std::size_t>(g) * static_cast<std::size_t>(M) + static_cast<std::size_t>(f)] = gf;
        }
    }
    c->homs_.assign(static_cast<std::size_t>(O) * static_cast<std::size_t>(O), {});
    for (int m = 0; m < M; ++m) {
        const auto& mm = c->mors_[static_cast<std::size_t>(m)];
        c->homs_[static_cast<std::size_t>(mm.src) * static_cast<std::size_t>(O) + static_cast<std::size_t>(mm.tgt)].push_back(m);
    }
    if (auto err = c->check_laws()) throw InvariantError(*err);
    return c;
}

CatPtr FinCategory::from_triples(std::string name, std::vector<std::string> objects, std::vector<Morphism> nonid,
                                 const std::vector<std::array<int, 3>>& triples) {
    const int O = static_cast<int>(objects.size());
    std::vector<Morphism> mors;
    std::vector<int> ids;
    for (int o = 0; o < O; ++o) {
        mors.push_back({"id_" + objects[static_cast<std::size_t>(o)], o, o});
        ids.push_back(o);
    }
    for (auto& m : nonid) mors.push_back(m);
    const int M = static_cast<int>(mors.size());
    auto names = std::make_shared<std::vector<Morphism>>(mors);
    auto nm = [names, M](int m) { return (m >= 0 && m < M) ? (*names)[static_cast<std::size_t>(m)].name : std::to_string(m); };
    std::map<std::pair<int, int>, int> table;
    for (const auto& t : triples) {
        std::string tri = "(" + nm(t[0]) + ", " + nm(t[1]) + ", " + nm(t[2]) + ")";
        for (int x : t) {
            if (x < 0 || x >= M) throw InvariantError(name + ": composition triple " + tri + " names an unknown morphism");
        }
        if (t[0] < O || t[1] < O) throw InvariantError(name + ": composition triple " + tri + " involves an identity");
        const auto& g = mors[static_cast<std::size_t>(t[0])];
        const auto& f = mors[static_cast<std::size_t>(t[1])];
        const auto& gf = mors[static_cast<std::size_t>(t[2])];
        if (f.tgt != g.src || gf.src != f.src || gf.tgt != g.tgt) {
            throw InvariantError(name + ": composition triple " + tri + " is ill-typed");
        }
        if (!table.emplace(std::make_pair(t[0], t[1]), t[2]).second) {
            throw InvariantError(name + ": composition triple " + tri + " is duplicated");
        }
    }
    auto compose = [&table, nm, O, cname = name](int g, int f) -> int {
        if (g < O) return f;
        if (f < O) return g;
        auto it = table.find({g, f});
        if (it == table.end()) {
            throw InvariantError(cname + ": composition table has no entry for (" + nm(g) + ", " + nm(f) + ")");
        }
        return it->second;
    };
    return make(name, std::move(objects), std::move(mors), std::move(ids), compose);
}

int FinCategory::compose(int g, int f) const {
    int r = comp_[static_cast<std::size_t>(g) * mors_.size() + static_cast<std::size_t>(f)];
    if (r < 0) {
        throw InvariantError(name_ + ": cannot compose " + morphism(g).name + " after " + morphism(f).name);
    }
    return r;
}

std::optional<int> FinCategory::find_object(const std::string& n) const {
    for (int o = 0; o < num_objects(); ++o) {
        if (objects_[static_cast<std::size_t>(o)] == n) return o;
    }
    return std::nullopt;
}

std::optional<int> FinCategory::find_morphism(const std::string& n) const {
    for (int m = 0; m < num_morphisms(); ++m) {
        if (mors_[static_cast<std::size_t>(m)].name == n) return m;
    }
    return std::nullopt;
}

std::optional<std::string> FinCategory::check_laws() const {
    const int M = num_morphisms();
    for (int f = 0; f < M; ++f) {
        if (compose(id(tgt(f)), f) != f || compose(f, id(src(f))) != f) {
            return name_ + ": unit law fails for " + morphism(f).name;
        }
    }
    for (int f = 0; f < M; ++f) {
        for (int b = 0; b < num_objects(); ++b) {
            for (int g : hom(tgt(f), b)) {
                int gf = compose(g, f);
                for (int c = 0; c < num_objects(); ++c) {
                    for (int h : hom(b, c)) {
                        if (compose(h, gf) != compose(compose(h, g), f)) {
                            return name_ + ": associativity fails for (" + morphism(h).name + ", " + morphism(g).name +
                                   ", " + morphism(f).name + ")";
                        }
                    }
                }
            }
        }
    }
    return std::nullopt;
}

// ---- standard categories ----------------------------------------------

CatPtr poset(std::string name, std::vector<std::string> names, const std::function<bool(int, int)>& leq) {
    const int O = static_cast<int>(names.size());
    std::vector<Morphism> mors;
    std::vector<int> ids;
    std::map<std::pair<int, int>, int> idx;
    for (int o = 0; o < O; ++o) {
        ids.push_back(static_cast<int>(mors.size()));
        idx[{o, o}] = static_cast<int>(mors.size());
        mors.push_back({"id_" + names[static_cast<std::size_t>(o)], o, o});
    }
    for (int a = 0; a < O; ++a) {
        for (int b = 0; b < O; ++b) {
            if (a == b || !leq(a, b)) continue;
            if (leq(b, a)) throw InvariantError(name + ": relation is not antisymmetric");
            idx[{a, b}] = static_cast<int>(mors.size());
            mors.push_back({names[static_cast<std::size_t>(a)] + "->" + names[static_cast<std::size_t>(b)], a, b});
        }
    }
    auto ends = mors;
    auto compose = [&idx, ends, nm = name](int g, int f) -> int {
        auto it = idx.find({ends[static_cast<std::size_t>(f)].src, ends[static_cast<std::size_t>(g)].tgt});
        if (it == idx.end()) throw InvariantError(nm + ": relation is not transitive");
        return it->second;
    };
    return FinCategory::make(std::move(name), std::move(names), std::move(mors), std::move(ids), compose);
}

namespace {
std::vector<std::string> numbered(int k) {
    std::vector<std::string> v;
    for (int i = 0; i < k; ++i) v.push_back(std::to_string(i));
    return v;
}
}  // namespace

CatPtr linear_order(int n) {
    return poset("[" + std::to_string(n) + "]", numbered(n + 1), [](int a, int b) { return a <= b; });
}

CatPtr terminal_category() { return poset("*", {"*"}, [](int, int) { return true; }); }

CatPtr discrete_category(int k) {
    return poset("disc" + std::to_string(k), numbered(k), [](int a, int b) { return a == b; });
}

CatPtr cospan_category() {
    return poset("CSp", numbered(3), [](int a, int b) { return a == b || (b == 1 && a != 1); });
}

CatPtr span_category() {
    return poset("Span", {"a", "b", "c"}, [](int a, int b) { return a == b || a == 0; });
}

CatPtr cyclic_group(int k) {
    std::vector<Morphism> mors;
    for (int i = 0; i < k; ++i) mors.push_back({i == 0 ? "id_*" : "g" + std::to_string(i), 0, 0});
    return FinCategory::make("Z/" + std::to_string(k), {"*"}, std::move(mors), {0},
                             [k](int g, int f) { return (g + f) % k; });
}

CatPtr codiscrete_groupoid(int k) {
    std::vector<Morphism> mors;
    std::vector<int> ids;
    std::map<std::pair<int, int>, int> idx;
    for (int o = 0; o < k; ++o) {
        ids.push_back(o);
        idx[{o, o}] = o;
        mors.push_back({"id_" + std::to_string(o), o, o});
    }
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            if (a == b) continue;
            idx[{a, b}] = static_cast<int>(mors.size());
            mors.push_back({std::to_string(a) + "~" + std::to_string(b), a, b});
        }
    }
    auto m2 = mors;
    return FinCategory::make("J" + std::to_string(k), numbered(k), std::move(mors), std::move(ids),
                             [idx, m2](int g, int f) {
                                 return idx.at({m2[static_cast<std::size_t>(f)].src, m2[static_cast<std::size_t>(g)].tgt});
                             });
}

CatPtr opposite(const CatPtr& c) {
    std::vector<Morphism> mors;
    std::vector<std::string> objs;
    std::vector<int> ids;
    for (int o = 0; o < c->num_objects(); ++o) {
        objs.push_back(c->object_name(o));
        ids.push_back(c->id(o));
    }
    for (int m = 0; m < c->num_morphisms(); ++m) {
        mors.push_back({c->morphism(m).name + "^op", c->tgt(m), c->src(m)});
    }
    return FinCategory::make("op(" + c->name() + ")", std::move(objs), std::move(mors), std::move(ids),
                             [c](int g, int f) { return c->compose(f, g); });
}

CatPtr product_category(const CatPtr& a, const CatPtr& b) {
    const int OB = b->num_objects();
    const int MB = b->num_morphisms();
    std::vector<std::string> objs;
    std::vector<Morphism> mors;
    std::vector<int> ids;
    for (int x = 0; x < a->num_objects(); ++x) {
        for (int y = 0; y < OB; ++y) {
            objs.push_back("(" + a->object_name(x) + "," + b->object_name(y) + ")");
            ids.push_back(a->id(x) * MB + b->id(y));
        }
    }
    for (int f = 0; f < a->num_morphisms(); ++f) {
        for (int g = 0; g < MB; ++g) {
            mors.push_back({"(" + a->morphism(f).name + "," + b->morphism(g).name + ")", a->src(f) * OB + b->src(g),
                            a->tgt(f) * OB + b->tgt(g)});
        }
    }
    return FinCategory::make("(" + a->name() + "x" + b->name() + ")", std::move(objs), std::move(mors), std::move(ids),
                             [a, b, MB](int g, int f) {
                                 return a->compose(g / MB, f / MB) * MB + b->compose(g % MB, f % MB);
                             });
}

CatPtr random_poset(int k, double edge_prob, std::mt19937_64& rng) {
    std::vector<std::vector<char>> leq(static_cast<std::size_t>(k), std::vector<char>(static_cast<std::size_t>(k), 0));
    std::bernoulli_distribution coin(edge_prob);
    for (int i = 0; i < k; ++i) {
        leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
        for (int j = i + 1; j < k; ++j) leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = coin(rng) ? 1 : 0;
    }
    for (int m = 0; m < k; ++m) {
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                if (leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] && leq[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)]) {
                    leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
                }
            }
        }
    }
    return poset("P" + std::to_string(k), numbered(k),
                 [leq](int a, int b) { return leq[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 0; });
}

int sigma_object(int, int i, int j) { return j * (j + 1) / 2 + (j - i); }

std::pair<int, int> sigma_interval(int, int obj) {
    int j = 0;
    while ((j + 1) * (j + 2) / 2 <= obj) ++j;
    int i = j - (obj - j * (j + 1) / 2);
    return {i, j};
}

CatPtr sigma_category(int n) {
    std::vector<std::string> names;
    const int O = (n + 1) * (n + 2) / 2;
    for (int o = 0; o < O; ++o) {
        auto [i, j] = sigma_interval(n, o);
        names.push_back("[" + std::to_string(i) + "," + std::to_string(j) + "]");
    }
    return poset("Sigma" + std::to_string(n), std::move(names), [n](int a, int b) {
        auto [i, j] = sigma_interval(n, a);
        auto [i2, j2] = sigma_interval(n, b);
        return i2 <= i && j <= j2;
    });
}

// ---- functors ------------------------------------------------------------

std::optional<std::string> CatFunctor::check() const {
    if (static_cast<int>(obj.size()) != src->num_objects() || static_cast<int>(mor.size()) != src->num_morphisms()) {
        return "functor tables have the wrong size";
    }
    for (int o = 0; o < src->num_objects(); ++o) {
        if (mor[static_cast<std::size_t>(src->id(o))] != tgt->id(obj[static_cast<std::size_t>(o)])) {
            return "functor does not preserve the identity of " + src->object_name(o);
        }
    }
    for (int m = 0; m < src->num_morphisms(); ++m) {
        int fm = mor[static_cast<std::size_t>(m)];
        if (tgt->src(fm) != obj[static_cast<std::size_t>(src->src(m))] || tgt->tgt(fm) != obj[static_cast<std::size_t>(src->tgt(m))]) {
            return "functor moves the endpoints of " + src->morphism(m).name;
        }
    }
    for (int f = 0; f < src->num_morphisms(); ++f) {
        for (int b = 0; b < src->num_objects(); ++b) {
            for (int g : src->hom(src->tgt(f), b)) {
                if (mor[static_cast<std::size_t>(src->compose(g, f))] !=
                    tgt->compose(mor[static_cast<std::size_t>(g)], mor[static_cast<std::size_t>(f)])) {
                    return "functor does not preserve " + src->morphism(g).name + " o " + src->morphism(f).name;
                }
            }
        }
    }
    return std::nullopt;
}

CatFunctor CatFunctor::then(const CatFunctor& g) const {
    CatFunctor out{src, g.tgt, {}, {}};
    for (int o : obj) out.obj.push_back(g.obj[static_cast<std::size_t>(o)]);
    for (int m : mor) out.mor.push_back(g.mor[static_cast<std::size_t>(m)]);
    return out;
}

CatFunctor CatFunctor::identity(const CatPtr& c) {
    CatFunctor f{c, c, std::vector<int>(static_cast<std::size_t>(c->num_objects())),
                 std::vector<int>(static_cast<std::size_t>(c->num_morphisms()))};
    std::iota(f.obj.begin(), f.obj.end(), 0);
    std::iota(f.mor.begin(), f.mor.end(), 0);
    return f;
}

CatFunctor CatFunctor::between_posets(const CatPtr& src, const CatPtr& tgt, std::vector<int> obj) {
    CatFunctor f{src, tgt, std::move(obj), {}};
    for (int m = 0; m < src->num_morphisms(); ++m) {
        const auto& h = tgt->hom(f.obj[static_cast<std::size_t>(src->src(m))], f.obj[static_cast<std::size_t>(src->tgt(m))]);
        if (h.size() != 1) throw InvariantError("object map is not monotone on " + src->morphism(m).name);
        f.mor.push_back(h[0]);
    }
    return f;
}

FullSub full_subcategory(const CatPtr& c, const std::function<bool(int)>& keep, std::string name) {
    std::vector<int> objs;
    std::vector<int> pos(static_cast<std::size_t>(c->num_objects()), -1);
    for (int o = 0; o < c->num_objects(); ++o) {
        if (keep(o)) {
            pos[static_cast<std::size_t>(o)] = static_cast<int>(objs.size());
            objs.push_back(o);
        }
    }
    std::vector<std::string> names;
    std::vector<int> ids;
    std::vector<Morphism> mors;
    std::vector<int> orig;
    std::vector<int> back(static_cast<std::size_t>(c->num_morphisms()), -1);
    for (int o : objs) names.push_back(c->object_name(o));
    for (int m = 0; m < c->num_morphisms(); ++m) {
        int s = pos[static_cast<std::size_t>(c->src(m))];
        int t = pos[static_cast<std::size_t>(c->tgt(m))];
        if (s < 0 || t < 0) continue;
        back[static_cast<std::size_t>(m)] = static_cast<int>(mors.size());
        orig.push_back(m);
        mors.push_back({c->morphism(m).name, s, t});
    }
    for (int o : objs) ids.push_back(back[static_cast<std::size_t>(c->id(o))]);
    auto cat = FinCategory::make(std::move(name), std::move(names), std::move(mors), std::move(ids),
                                 [&](int g, int f) {
                                     return back[static_cast<std::size_t>(c->compose(orig[static_cast<std::size_t>(g)], orig[static_cast<std::size_t>(f)]))];
                                 });
    return {cat, objs, CatFunctor{cat, c, objs, orig}};
}

LambdaCategory lambda_category(int n) {
    auto sig = sigma_category(n);
    auto sub = full_subcategory(sig, [n](int o) {
        auto [i, j] = sigma_interval(n, o);
        return j - i <= 1;
    }, "Lambda" + std::to_string(n));
    return {sub.cat, sub.inclusion};
}

CatFunctor sigma_op_functor(const DeltaMap& u) {
    int n = u.dom();
    int m = u.cod();
    auto a = sigma_category(n);
    auto b = sigma_category(m);
    std::vector<int> obj;
    for (int o = 0; o < a->num_objects(); ++o) {
        auto [i, j] = sigma_interval(n, o);
        obj.push_back(sigma_object(m, u(i), u(j)));
    }
    return CatFunctor::between_posets(a, b, std::move(obj));
}

CatFunctor pair_functor(const CatPtr& prod, const CatFunctor& a, const CatFunctor& b) {
    const int OB = b.tgt->num_objects();
    const int MB = b.tgt->num_morphisms();
    CatFunctor f{a.src, prod, {}, {}};
    for (std::size_t o = 0; o < a.obj.size(); ++o) f.obj.push_back(a.obj[o] * OB + b.obj[o]);
    for (std::size_t m = 0; m < a.mor.size(); ++m) f.mor.push_back(a.mor[m] * MB + b.mor[m]);
    return f;
}

CatFunctor product_projection_functor(const CatPtr& prod, const CatPtr& a, const CatPtr& b, int which) {
    const int OB = b->num_objects();
    const int MB = b->num_morphisms();
    CatFunctor f{prod, which == 0 ? a : b, {}, {}};
    for (int o = 0; o < prod->num_objects(); ++o) f.obj.push_back(which == 0 ? o / OB : o % OB);
    for (int m = 0; m < prod->num_morphisms(); ++m) f.mor.push_back(which == 0 ? m / MB : m % MB);
    return f;
}

// ---- nerves ----------------------------------------------------------------

int Chain::between(const FinCategory& c, int i, int j) const {
    int m = c.id(obj[static_cast<std::size_t>(i)]);
    for (int l = i; l < j; ++l) m = c.compose(mor[static_cast<std::size_t>(l)], m);
    return m;
}

Key Chain::key() const { return chain_key(obj, mor); }

Key chain_key(const std::vector<int>& objects, const std::vector<int>& morphisms) {
    Key k{objects.front()};
    k.insert(k.end(), morphisms.begin(), morphisms.end());
    return k;
}

Chain chain_of(const FinCategory& c, const Key& key) {
    Chain ch;
    ch.obj.push_back(key[0]);
    for (std::size_t i = 1; i < key.size(); ++i) {
        ch.mor.push_back(key[i]);
        ch.obj.push_back(c.tgt(key[i]));
    }
    return ch;
}

Chain restrict_chain(const FinCategory& c, const Chain& a, const DeltaMap& u) {
    Chain out;
    for (int i = 0; i <= u.dom(); ++i) out.obj.push_back(a.obj[static_cast<std::size_t>(u(i))]);
    for (int i = 1; i <= u.dom(); ++i) out.mor.push_back(a.between(c, u(i - 1), u(i)));
    return out;
}

SSetPtr nerve(const CatPtr& c, int cap) {
    return SSet::build(
        "N" + c->name(), cap,
        [c](int n) {
            std::vector<Key> out;
            Key cur;
            std::function<void(int, int)> rec = [&](int last, int left) {
                if (left == 0) {
                    out.push_back(cur);
                    return;
                }
                for (int b = 0; b < c->num_objects(); ++b) {
                    for (int m : c->hom(last, b)) {
                        cur.push_back(m);
                        rec(b, left - 1);
                        cur.pop_back();
                    }
                }
            };
            for (int o = 0; o < c->num_objects(); ++o) {
                cur = {o};
                rec(o, n);
            }
            return out;
        },
        [c](const DeltaMap& u, const Key& k) { return restrict_chain(*c, chain_of(*c, k), u).key(); });
}

SimplicialMap nerve_map(const CatFunctor& f, const SSetPtr& nsrc, const SSetPtr& ntgt) {
    return SimplicialMap::from_keys(nsrc, ntgt, [&](int, const Key& k) {
        Key out{f.obj[static_cast<std::size_t>(k[0])]};
        for (std::size_t i = 1; i < k.size(); ++i) out.push_back(f.mor[static_cast<std::size_t>(k[i])]);
        return out;
    });
}

// ---- comma categories ----------------------------------------------------

namespace {

Comma comma_impl(const CatFunctor& f, int c, bool over) {
    const auto& A = *f.src;
    const auto& B = *f.tgt;
    Comma out;
    std::map<std::pair<int, int>, int> pos;
    for (int x = 0; x < A.num_objects(); ++x) {
        int fx = f.obj[static_cast<std::size_t>(x)];
        const auto& hs = over ? B.hom(fx, c) : B.hom(c, fx);
        for (int h : hs) {
            pos[{x, h}] = static_cast<int>(out.objects.size());
            out.objects.push_back({x, h});
        }
    }
    std::vector<Morphism> mors;
    std::vector<int> ids(out.objects.size(), -1);
    std::map<std::array<int, 3>, int> mpos;
    for (std::size_t s = 0; s < out.objects.size(); ++s) {
        auto [x, h] = out.objects[s];
        for (std::size_t t = 0; t < out.objects.size(); ++t) {
            auto [x2, h2] = out.objects[t];
            for (int g : A.hom(x, x2)) {
                int fg = f.mor[static_cast<std::size_t>(g)];
                bool ok = over ? B.compose(h2, fg) == h : B.compose(fg, h) == h2;
                if (!ok) continue;
                int idx = static_cast<int>(mors.size());
                mpos[{static_cast<int>(s), static_cast<int>(t), g}] = idx;
                if (s == t && g == A.id(x)) ids[s] = idx;
                mors.push_back({A.morphism(g).name + "@" + std::to_string(s) + ">" + std::to_string(t), static_cast<int>(s),
                                static_cast<int>(t)});
                out.morphism_of.push_back(g);
            }
        }
    }
    std::vector<std::string> names;
    for (auto [x, h] : out.objects) names.push_back("(" + A.object_name(x) + "," + B.morphism(h).name + ")");
    auto mo = out.morphism_of;
    auto ms = mors;
    out.cat = FinCategory::make((over ? "slice/" : "coslice/") + B.object_name(c), std::move(names), std::move(mors),
                                std::move(ids), [&](int g, int h) {
                                    int comp = A.compose(mo[static_cast<std::size_t>(g)], mo[static_cast<std::size_t>(h)]);
                                    return mpos.at({ms[static_cast<std::size_t>(h)].src, ms[static_cast<std::size_t>(g)].tgt, comp});
                                });
    return out;
}

}  // namespace

Comma slice_over(const CatFunctor& f, int c) { return comma_impl(f, c, true); }
Comma coslice_under(const CatFunctor& f, int c) { return comma_impl(f, c, false); }

// ---- Δ_{/[n]} -------------------------------------------------------------

DeltaSlice delta_slice(int n, int domcap) {
    DeltaSlice out;
    std::map<DeltaMap, int> pos;
    for (int k = 0; k <= domcap; ++k) {
        for (auto& u : DeltaMap::all(k, n)) {
            pos[u] = static_cast<int>(out.objects.size());
            out.objects.push_back(u);
        }
    }
    std::vector<Morphism> mors;
    std::vector<int> ids(out.objects.size());
    std::map<std::tuple<int, int, DeltaMap>, int> mpos;
    for (std::size_t s = 0; s < out.objects.size(); ++s) {
        const auto& u = out.objects[s];
        for (std::size_t t = 0; t < out.objects.size(); ++t) {
            const auto& u2 = out.objects[t];
            for (auto& v : DeltaMap::all(u.dom(), u2.dom())) {
                if (compose(u2, v) != u) continue;
                int idx = static_cast<int>(mors.size());
                if (s == t && v.is_identity()) ids[s] = idx;
                mpos[{static_cast<int>(s), static_cast<int>(t), v}] = idx;
                mors.push_back({v.str(), static_cast<int>(s), static_cast<int>(t)});
                out.morphism_maps.push_back(v);
            }
        }
    }
    std::vector<std::string> names;
    for (auto& u : out.objects) names.push_back(u.str());
    auto mm = out.morphism_maps;
    auto ms = mors;
    out.cat = FinCategory::make("Delta/[" + std::to_string(n) + "]", std::move(names), std::move(mors), std::move(ids),
                                [&](int g, int f) {
                                    return mpos.at({ms[static_cast<std::size_t>(f)].src, ms[static_cast<std::size_t>(g)].tgt,
                                                    compose(mm[static_cast<std::size_t>(g)], mm[static_cast<std::size_t>(f)])});
                                });
    auto target = linear_order(n);
    std::vector<int> obj;
    for (auto& u : out.objects) obj.push_back(u(u.dom()));
    out.last_vertex = CatFunctor::between_posets(out.cat, target, std::move(obj));
    return out;
}

// ---- Σα ----------------------------------------------------------------

SigmaAlpha sigma_alpha(const FinCategory& c, const Chain& alpha) {
    int n = alpha.dim();
    SigmaAlpha out;
    out.sigma = sigma_category(n);
    for (int o = 0; o < out.sigma->num_objects(); ++o) {
        auto [i, j] = sigma_interval(n, o);
        out.obj.push_back({i, alpha.obj[static_cast<std::size_t>(j)]});
    }
    for (int m = 0; m < out.sigma->num_morphisms(); ++m) {
        auto [i, j] = sigma_interval(n, out.sigma->src(m));
        auto [i2, j2] = sigma_interval(n, out.sigma->tgt(m));
        std::vector<int> v(static_cast<std::size_t>(i2) + 1);
        std::iota(v.begin(), v.end(), 0);
        out.mor.push_back({DeltaMap(i, std::move(v)), alpha.between(c, j, j2)});
    }
    return out;
}

// ---- set-valued functors ---------------------------------------------------

std::optional<std::string> SetFunctor::check() const {
    const auto& C = *cat;
    for (int m = 0; m < C.num_morphisms(); ++m) {
        const auto& row = act[static_cast<std::size_t>(m)];
        if (static_cast<int>(row.size()) != size[static_cast<std::size_t>(C.src(m))]) return "action table of " + C.morphism(m).name + " has the wrong size";
        for (int y : row) {
            if (y < 0 || y >= size[static_cast<std::size_t>(C.tgt(m))]) return "action of " + C.morphism(m).name + " leaves its target";
        }
        if (C.is_identity(m)) {
            for (std::size_t x = 0; x < row.size(); ++x) {
                if (row[x] != static_cast<int>(x)) return "identity of " + C.object_name(C.src(m)) + " acts nontrivially";
            }
        }
    }
    for (int f = 0; f < C.num_morphisms(); ++f) {
        for (int b = 0; b < C.num_objects(); ++b) {
            for (int g : C.hom(C.tgt(f), b)) {
                int gf = C.compose(g, f);
                for (int x = 0; x < size[static_cast<std::size_t>(C.src(f))]; ++x) {
                    if (act[static_cast<std::size_t>(gf)][static_cast<std::size_t>(x)] !=
                        act[static_cast<std::size_t>(g)][static_cast<std::size_t>(act[static_cast<std::size_t>(f)][static_cast<std::size_t>(x)])]) {
                        return "set functor does not preserve " + C.morphism(g).name + " o " + C.morphism(f).name;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::vector<std::vector<int>> finite_limit(const SetFunctor& f) {
    const auto& C = *f.cat;
    const int O = C.num_objects();
    // constraints checked once both endpoints are assigned, at the later one
    std::vector<std::vector<int>> checks(static_cast<std::size_t>(O));
    std::vector<std::vector<int>> forcing(static_cast<std::size_t>(O));
    for (int m = 0; m < C.num_morphisms(); ++m) {
        if (C.is_identity(m)) continue;
        int s = C.src(m);
        int t = C.tgt(m);
        checks[static_cast<std::size_t>(std::max(s, t))].push_back(m);
        if (s < t) forcing[static_cast<std::size_t>(t)].push_back(m);
    }
    std::vector<std::vector<int>> out;
    std::vector<int> val(static_cast<std::size_t>(O), -1);
    auto consistent = [&](int o) {
        for (int m : checks[static_cast<std::size_t>(o)]) {
            if (f.act[static_cast<std::size_t>(m)][static_cast<std::size_t>(val[static_cast<std::size_t>(C.src(m))])] != val[static_cast<std::size_t>(C.tgt(m))]) return false;
        }
        return true;
    };
    std::function<void(int)> rec = [&](int o) {
        if (o == O) {
            out.push_back(val);
            return;
        }
        if (!forcing[static_cast<std::size_t>(o)].empty()) {
            int m = forcing[static_cast<std::size_t>(o)].front();
            val[static_cast<std::size_t>(o)] = f.act[static_cast<std::size_t>(m)][static_cast<std::size_t>(val[static_cast<std::size_t>(C.src(m))])];
            if (consistent(o)) rec(o + 1);
            return;
        }
        for (int x = 0; x < f.size[static_cast<std::size_t>(o)]; ++x) {
            val[static_cast<std::size_t>(o)] = x;
            if (consistent(o)) rec(o + 1);
        }
    };
    rec(0);
    return out;
}

Colimit finite_colimit(const SetFunctor& f) {
    const auto& C = *f.cat;
    std::vector<int> off(static_cast<std::size_t>(C.num_objects()) + 1, 0);
    for (int o = 0; o < C.num_objects(); ++o) off[static_cast<std::size_t>(o) + 1] = off[static_cast<std::size_t>(o)] + f.size[static_cast<std::size_t>(o)];
    std::vector<int> parent(static_cast<std::size_t>(off.back()));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> root = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (int m = 0; m < C.num_morphisms(); ++m) {
        int s = C.src(m);
        int t = C.tgt(m);
        for (int x = 0; x < f.size[static_cast<std::size_t>(s)]; ++x) {
            int a = root(off[static_cast<std::size_t>(s)] + x);
            int b = root(off[static_cast<std::size_t>(t)] + f.act[static_cast<std::size_t>(m)][static_cast<std::size_t>(x)]);
            if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        }
    }
    Colimit out;
    std::vector<int> cls(parent.size(), -1);
    out.cls.resize(static_cast<std::size_t>(C.num_objects()));
    for (int o = 0; o < C.num_objects(); ++o) {
        for (int x = 0; x < f.size[static_cast<std::size_t>(o)]; ++x) {
            int r = root(off[static_cast<std::size_t>(o)] + x);
            if (cls[static_cast<std::size_t>(r)] < 0) cls[static_cast<std::size_t>(r)] = out.count++;
            out.cls[static_cast<std::size_t>(o)].push_back(cls[static_cast<std::size_t>(r)]);
        }
    }
    return out;
}

// ---- Grothendieck construction -------------------------------------------

std::optional<std::string> StrictCatFunctor::check_strict() const {
    const auto& D = *base;
    for (int f = 0; f < D.num_morphisms(); ++f) {
        const auto& F = along[static_cast<std::size_t>(f)];
        if (F.src.get() != value[static_cast<std::size_t>(D.src(f))].get() || F.tgt.get() != value[static_cast<std::size_t>(D.tgt(f))].get()) {
            return "value of " + D.morphism(f).name + " has the wrong endpoints";
        }
        if (auto e = F.check()) return "value of " + D.morphism(f).name + ": " + *e;
        if (D.is_identity(f) && !(F == CatFunctor::identity(F.src))) {
            return "identity " + D.morphism(f).name + " is not sent to the identity functor";
        }
    }
    for (int f = 0; f < D.num_morphisms(); ++f) {
        for (int b = 0; b < D.num_objects(); ++b) {
            for (int g : D.hom(D.tgt(f), b)) {
                auto lhs = along[static_cast<std::size_t>(D.compose(g, f))];
                auto rhs = along[static_cast<std::size_t>(f)].then(along[static_cast<std::size_t>(g)]);
                if (!(lhs == rhs)) {
                    return "not strict: G(" + D.morphism(g).name + " o " + D.morphism(f).name + ") differs from the composite";
                }
            }
        }
    }
    return std::nullopt;
}

int Grothendieck::morphism_index(int f, int x, int g) const {
    auto it = morphism_pos.find({f, x, g});
    if (it != morphism_pos.end()) return it->second;
    throw InvariantError("no such morphism in the Grothendieck construction");
}

Grothendieck grothendieck(const StrictCatFunctor& G) {
    if (auto e = G.check_strict()) throw InvariantError("grothendieck: " + *e);
    const auto& D = *G.base;
    Grothendieck out;
    std::vector<std::string> names;
    for (int d = 0; d < D.num_objects(); ++d) {
        out.object_offset.push_back(static_cast<int>(out.objects.size()));
        const auto& Gd = *G.value[static_cast<std::size_t>(d)];
        for (int x = 0; x < Gd.num_objects(); ++x) {
            out.objects.push_back({d, x});
            names.push_back("(" + D.object_name(d) + "," + Gd.object_name(x) + ")");
        }
    }
    std::vector<Morphism> mors;
    std::vector<int> ids(out.objects.size(), -1);
    std::map<std::array<int, 3>, int> pos;
    for (int f = 0; f < D.num_morphisms(); ++f) {
        int d = D.src(f);
        int d2 = D.tgt(f);
        const auto& Gf = G.along[static_cast<std::size_t>(f)];
        const auto& Gd = *G.value[static_cast<std::size_t>(d)];
        const auto& Gd2 = *G.value[static_cast<std::size_t>(d2)];
        for (int x = 0; x < Gd.num_objects(); ++x) {
            for (int x2 = 0; x2 < Gd2.num_objects(); ++x2) {
                for (int g : Gd2.hom(Gf.obj[static_cast<std::size_t>(x)], x2)) {
                    int idx = static_cast<int>(mors.size());
                    pos[{f, x, g}] = idx;
                    out.morphism_pos[{f, x, g}] = idx;
                    if (D.is_identity(f) && Gd.is_identity(g)) ids[static_cast<std::size_t>(out.object_index(d, x))] = idx;
                    out.morphisms.push_back({f, x, g});
                    mors.push_back({"(" + D.morphism(f).name + "," + Gd2.morphism(g).name + ")", out.object_index(d, x),
                                    out.object_index(d2, x2)});
                }
            }
        }
    }
    auto ms = out.morphisms;
    out.total = FinCategory::make("Int(" + D.name() + ")", std::move(names), std::move(mors), std::move(ids),
                                  [&](int b, int a) {
                                      auto [f, x, g] = ms[static_cast<std::size_t>(a)];
                                      auto [f2, x2, g2] = ms[static_cast<std::size_t>(b)];
                                      (void)x2;
                                      const auto& Gf2 = G.along[static_cast<std::size_t>(f2)];
                                      const auto& Gd3 = *G.value[static_cast<std::size_t>(D.tgt(f2))];
                                      int h = Gd3.compose(g2, Gf2.mor[static_cast<std::size_t>(g)]);
                                      return pos.at({D.compose(f2, f), x, h});
                                  });
    out.projection = CatFunctor{out.total, G.base, {}, {}};
    for (auto [d, x] : out.objects) out.projection.obj.push_back(d);
    for (auto& m : out.morphisms) out.projection.mor.push_back(m[0]);
    return out;
}

FiberwiseRan fiberwise_ran(const StrictCatFunctor& G, const Grothendieck& total, const ContraSetFunctor& s) {
    const auto& D = *G.base;
    FiberwiseRan out;
    std::vector<std::map<std::vector<int>, int>> index(static_cast<std::size_t>(D.num_objects()));
    for (int d = 0; d < D.num_objects(); ++d) {
        auto fib = opposite(G.value[static_cast<std::size_t>(d)]);
        SetFunctor sf{fib, {}, {}};
        for (int x = 0; x < fib->num_objects(); ++x) sf.size.push_back(s.size[static_cast<std::size_t>(total.object_index(d, x))]);
        for (int g = 0; g < fib->num_morphisms(); ++g) {
            // g^op: x' -> x in the fibre^op pulls S(d, x') back to S(d, x)
            int m = total.morphism_index(D.id(d), fib->tgt(g), g);
            sf.act.push_back(s.pull[static_cast<std::size_t>(m)]);
        }
        out.value.push_back(finite_limit(sf));
        for (std::size_t k = 0; k < out.value.back().size(); ++k) index[static_cast<std::size_t>(d)][out.value.back()[k]] = static_cast<int>(k);
    }
    for (int f = 0; f < D.num_morphisms(); ++f) {
        int d = D.src(f);
        int d2 = D.tgt(f);
        const auto& Gf = G.along[static_cast<std::size_t>(f)];
        const auto& Gd2 = *G.value[static_cast<std::size_t>(d2)];
        std::vector<int> row;
        for (const auto& fam : out.value[static_cast<std::size_t>(d2)]) {
            std::vector<int> pulled;
            for (int x = 0; x < G.value[static_cast<std::size_t>(d)]->num_objects(); ++x) {
                int fx = Gf.obj[static_cast<std::size_t>(x)];
                int m = total.morphism_index(f, x, Gd2.id(fx));
                pulled.push_back(s.pull[static_cast<std::size_t>(m)][static_cast<std::size_t>(fam[static_cast<std::size_t>(fx)])]);
            }
            auto it = index[static_cast<std::size_t>(d)].find(pulled);
            if (it == index[static_cast<std::size_t>(d)].end()) {
                throw InvariantError("fiberwise_ran: transported family is not a section over " + D.object_name(d));
            }
            row.push_back(it->second);
        }
        out.pull.push_back(std::move(row));
    }
    return out;
}

}  // namespace ssr

#include "ssr/sset.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ssr/error.hpp"

namespace ssr {

namespace {

std::string key_str(const Key& k) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
    os << ']';
    return os.str();
}

}  // namespace

SSetPtr SSet::build(std::string name, int cap, const Enumerate& enumerate, const KeyAction& act) {
    auto out = std::make_shared<SSet>();
    out->name_ = std::move(name);
    out->cap_ = cap;
    out->levels_.resize(static_cast<std::size_t>(cap) + 1);
    std::size_t total = 0;
    for (int n = 0; n <= cap; ++n) {
        auto& lv = out->levels_[static_cast<std::size_t>(n)];
        lv.keys = enumerate(n);
        std::sort(lv.keys.begin(), lv.keys.end());
        lv.keys.erase(std::unique(lv.keys.begin(), lv.keys.end()), lv.keys.end());
        total += lv.keys.size();
        if (total > max_cells()) {
            throw ResourceError("cell budget exceeded while building " + out->name_ + " at level " +
                                std::to_string(n) + " (" + std::to_string(total) + " > " +
                                std::to_string(max_cells()) + ")");
        }
        lv.index.reserve(lv.keys.size());
        for (std::size_t s = 0; s < lv.keys.size(); ++s) lv.index.emplace(lv.keys[s], static_cast<int>(s));
    }
    for (int n = 0; n <= cap; ++n) {
        auto& lv = out->levels_[static_cast<std::size_t>(n)];
        if (n >= 1) {
            lv.faces.assign(static_cast<std::size_t>(n) + 1, std::vector<int>(lv.keys.size()));
            for (int i = 0; i <= n; ++i) {
                auto d = DeltaMap::coface(n, i);
                for (std::size_t s = 0; s < lv.keys.size(); ++s) {
                    lv.faces[static_cast<std::size_t>(i)][s] = out->index_of(n - 1, act(d, lv.keys[s]));
                }
            }
        }
        if (n < cap) {
            lv.degens.assign(static_cast<std::size_t>(n) + 1, std::vector<int>(lv.keys.size()));
            for (int i = 0; i <= n; ++i) {
                auto sg = DeltaMap::codegeneracy(n, i);
                for (std::size_t s = 0; s < lv.keys.size(); ++s) {
                    lv.degens[static_cast<std::size_t>(i)][s] = out->index_of(n + 1, act(sg, lv.keys[s]));
                }
            }
        }
    }
    out->finish();
    return out;
}

SSetPtr SSet::from_tables(std::string name, int cap, std::vector<std::vector<Key>> keys,
                          std::vector<std::vector<std::vector<int>>> faces,
                          std::vector<std::vector<std::vector<int>>> degens) {
    auto out = std::make_shared<SSet>();
    out->name_ = std::move(name);
    out->cap_ = cap;
    out->levels_.resize(static_cast<std::size_t>(cap) + 1);
    for (int n = 0; n <= cap; ++n) {
        auto& lv = out->levels_[static_cast<std::size_t>(n)];
        lv.keys = std::move(keys[static_cast<std::size_t>(n)]);
        for (std::size_t s = 0; s < lv.keys.size(); ++s) lv.index.emplace(lv.keys[s], static_cast<int>(s));
        lv.faces = std::move(faces[static_cast<std::size_t>(n)]);
        lv.degens = std::move(degens[static_cast<std::size_t>(n)]);
    }
    out->finish();
    return out;
}

void SSet::finish() {
    for (int n = 0; n <= cap_; ++n) {
        auto& lv = levels_[static_cast<std::size_t>(n)];
        lv.nondeg.assign(lv.keys.size(), 1);
    }
    for (int n = 0; n < cap_; ++n) {
        auto& lv = levels_[static_cast<std::size_t>(n)];
        auto& up = levels_[static_cast<std::size_t>(n) + 1];
        for (const auto& row : lv.degens) {
            for (int t : row) up.nondeg[static_cast<std::size_t>(t)] = 0;
        }
    }
}

std::size_t SSet::total_size() const {
    std::size_t t = 0;
    for (const auto& lv : levels_) t += lv.keys.size();
    return t;
}

std::optional<int> SSet::find(int n, const Key& k) const {
    if (n < 0 || n > cap_) return std::nullopt;
    const auto& idx = level(n).index;
    auto it = idx.find(k);
    if (it == idx.end()) return std::nullopt;
    return it->second;
}

int SSet::index_of(int n, const Key& k) const {
    auto r = find(n, k);
    if (!r) {
        throw InvariantError(name_ + ": no simplex with key " + key_str(k) + " at level " + std::to_string(n));
    }
    return *r;
}

int SSet::act(const DeltaMap& u, int s) const {
    auto [epi, mono] = epi_mono(u);
    // mono part: repeatedly peel off a coface
    int cur = s;
    DeltaMap m = mono;
    while (!m.is_identity()) {
        int n = m.cod();
        int j = n;
        for (int x = n; x >= 0; --x) {
            if (!std::binary_search(m.values().begin(), m.values().end(), x)) {
                j = x;
                break;
            }
        }
        cur = face(n, j, cur);
        std::vector<int> v;
        for (int x : m.values()) v.push_back(x > j ? x - 1 : x);
        m = DeltaMap(n - 1, std::move(v));
    }
    // epi part: e = e' ∘ σ^i with e(i) = e(i+1)
    std::vector<int> ops;
    DeltaMap e = epi;
    while (!e.is_identity()) {
        int i = 0;
        while (e(i) != e(i + 1)) ++i;
        ops.push_back(i);
        std::vector<int> v;
        for (int l = 0; l <= e.dom(); ++l) {
            if (l != i + 1) v.push_back(e(l));
        }
        e = DeltaMap(e.cod(), std::move(v));
    }
    int lvl = epi.cod();
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        cur = degen(lvl, *it, cur);
        ++lvl;
    }
    return cur;
}

std::vector<int> SSet::nondegenerate_at(int n) const {
    std::vector<int> out;
    const auto& lv = level(n);
    for (std::size_t s = 0; s < lv.keys.size(); ++s) {
        if (lv.nondeg[s]) out.push_back(static_cast<int>(s));
    }
    return out;
}

NormalForm SSet::normalize(int n, int s) const {
    if (nondegenerate(n, s)) return {n, s, DeltaMap::identity(n)};
    for (int i = 0; i < n; ++i) {
        int t = face(n, i, s);
        if (degen(n - 1, i, t) == s) {
            auto inner = normalize(n - 1, t);
            inner.surj = compose(inner.surj, DeltaMap::codegeneracy(n - 1, i));
            return inner;
        }
    }
    throw InvariantError(name_ + ": simplex marked degenerate has no degeneracy witness");
}

std::optional<std::string> SSet::check_identities() const {
    auto fail = [&](int n, int s, const std::string& what) {
        return name_ + ": " + what + " fails on " + describe(n, s);
    };
    for (int n = 0; n <= cap_; ++n) {
        for (int s = 0; s < size(n); ++s) {
            for (int j = 0; j <= n && n >= 2; ++j) {
                for (int i = 0; i < j; ++i) {
                    if (face(n - 1, i, face(n, j, s)) != face(n - 1, j - 1, face(n, i, s))) {
                        return fail(n, s, "d" + std::to_string(i) + "d" + std::to_string(j));
                    }
                }
            }
            if (n + 2 <= cap_) {
                for (int j = 0; j <= n; ++j) {
                    for (int i = 0; i <= j; ++i) {
                        if (degen(n + 1, i, degen(n, j, s)) != degen(n + 1, j + 1, degen(n, i, s))) {
                            return fail(n, s, "s" + std::to_string(i) + "s" + std::to_string(j));
                        }
                    }
                }
            }
            if (n + 1 <= cap_) {
                for (int j = 0; j <= n; ++j) {
                    int t = degen(n, j, s);
                    for (int i = 0; i <= n + 1; ++i) {
                        int lhs = face(n + 1, i, t);
                        int rhs;
                        if (i < j) {
                            rhs = degen(n - 1, j - 1, face(n, i, s));
                        } else if (i == j || i == j + 1) {
                            rhs = s;
                        } else {
                            rhs = degen(n - 1, j, face(n, i - 1, s));
                        }
                        if (lhs != rhs) {
                            return fail(n, s, "d" + std::to_string(i) + "s" + std::to_string(j));
                        }
                    }
                }
            }
        }
    }
    return std::nullopt;
}

bool SSet::same_as(const SSet& other) const {
    if (cap_ != other.cap_) return false;
    for (int n = 0; n <= cap_; ++n) {
        const auto& a = level(n);
        const auto& b = other.level(n);
        if (a.keys != b.keys || a.faces != b.faces || a.degens != b.degens) return false;
    }
    return true;
}

std::string SSet::describe(int n, int s) const {
    return name_ + "_" + std::to_string(n) + "#" + std::to_string(s) + key_str(key(n, s));
}

std::optional<std::string> check_presheaf_laws(const SSet& x) {
    int cap = x.cap();
    for (int n = 0; n <= cap; ++n) {
        for (int k = 0; k <= cap; ++k) {
            auto us = DeltaMap::all(k, n);
            for (int m = 0; m <= cap; ++m) {
                auto vs = DeltaMap::all(m, k);
                for (const auto& u : us) {
                    for (const auto& v : vs) {
                        auto uv = compose(u, v);
                        for (int s = 0; s < x.size(n); ++s) {
                            if (x.act(uv, s) != x.act(v, x.act(u, s))) {
                                return "act(" + uv.str() + ") != act(" + v.str() + ")∘act(" + u.str() +
                                       ") on " + x.describe(n, s);
                            }
                        }
                    }
                }
            }
        }
    }
    if (x.act(DeltaMap::identity(0), 0) != 0 && x.size(0) > 0) return std::string("identity law fails");
    return std::nullopt;
}

// ---- SimplicialMap ------------------------------------------------------

SimplicialMap::SimplicialMap(SSetPtr source, SSetPtr target, std::vector<std::vector<int>> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {}

SimplicialMap SimplicialMap::identity(const SSetPtr& x) {
    return from_fn(x, x, [](int, int s) { return s; });
}

SimplicialMap SimplicialMap::from_fn(const SSetPtr& source, const SSetPtr& target,
                                     const std::function<int(int, int)>& f) {
    int cap = std::min(source->cap(), target->cap());
    std::vector<std::vector<int>> comp(static_cast<std::size_t>(cap) + 1);
    for (int n = 0; n <= cap; ++n) {
        auto& row = comp[static_cast<std::size_t>(n)];
        row.resize(static_cast<std::size_t>(source->size(n)));
        for (int s = 0; s < source->size(n); ++s) row[static_cast<std::size_t>(s)] = f(n, s);
    }
    return SimplicialMap(source, target, std::move(comp));
}

SimplicialMap SimplicialMap::from_keys(const SSetPtr& source, const SSetPtr& target,
                                       const std::function<Key(int, const Key&)>& f) {
    return from_fn(source, target, [&](int n, int s) { return target->index_of(n, f(n, source->key(n, s))); });
}

SimplicialMap SimplicialMap::from_nondegenerate(const SSetPtr& source, const SSetPtr& target,
                                                const std::vector<std::vector<int>>& images) {
    std::vector<std::unordered_map<int, int>> pos(static_cast<std::size_t>(source->cap()) + 1);
    for (int n = 0; n <= source->cap(); ++n) {
        auto nd = source->nondegenerate_at(n);
        for (std::size_t k = 0; k < nd.size(); ++k) pos[static_cast<std::size_t>(n)][nd[k]] = static_cast<int>(k);
    }
    return from_fn(source, target, [&](int n, int s) {
        auto nf = source->normalize(n, s);
        int img = images[static_cast<std::size_t>(nf.level)][static_cast<std::size_t>(pos[static_cast<std::size_t>(nf.level)].at(nf.index))];
        return target->act(nf.surj, img);
    });
}

std::optional<std::string> SimplicialMap::check() const {
    int c = cap();
    for (int n = 0; n <= c; ++n) {
        for (int s = 0; s < source_->size(n); ++s) {
            int fs = (*this)(n, s);
            if (fs < 0 || fs >= target_->size(n)) return "component out of range at " + source_->describe(n, s);
            for (int i = 0; i <= n && n >= 1; ++i) {
                if ((*this)(n - 1, source_->face(n, i, s)) != target_->face(n, i, fs)) {
                    return "map does not commute with d" + std::to_string(i) + " at " + source_->describe(n, s);
                }
            }
            for (int i = 0; i <= n && n < c; ++i) {
                if ((*this)(n + 1, source_->degen(n, i, s)) != target_->degen(n, i, fs)) {
                    return "map does not commute with s" + std::to_string(i) + " at " + source_->describe(n, s);
                }
            }
        }
    }
    return std::nullopt;
}

bool SimplicialMap::injective() const {
    for (int n = 0; n <= cap(); ++n) {
        std::vector<char> seen(static_cast<std::size_t>(target_->size(n)), 0);
        for (int v : components_[static_cast<std::size_t>(n)]) {
            if (seen[static_cast<std::size_t>(v)]++) return false;
        }
    }
    return true;
}

bool SimplicialMap::surjective() const {
    for (int n = 0; n <= cap(); ++n) {
        std::vector<char> seen(static_cast<std::size_t>(target_->size(n)), 0);
        for (int v : components_[static_cast<std::size_t>(n)]) seen[static_cast<std::size_t>(v)] = 1;
        if (std::find(seen.begin(), seen.end(), 0) != seen.end()) return false;
    }
    return true;
}

SimplicialMap SimplicialMap::then(const SimplicialMap& g) const {
    if (g.source_.get() != target_.get() && !g.source_->same_as(*target_)) {
        throw InvariantError("composition of simplicial maps with mismatched objects: " + target_->name() +
                             " vs " + g.source_->name());
    }
    int c = std::min(cap(), g.cap());
    std::vector<std::vector<int>> comp(static_cast<std::size_t>(c) + 1);
    for (int n = 0; n <= c; ++n) {
        for (int v : components_[static_cast<std::size_t>(n)]) comp[static_cast<std::size_t>(n)].push_back(g(n, v));
    }
    return SimplicialMap(source_, g.target_, std::move(comp));
}

SimplicialMap SimplicialMap::inverse() const {
    if (!bijective()) throw InvariantError("inverse of a non-bijective map " + source_->name() + " -> " + target_->name());
    std::vector<std::vector<int>> comp(components_.size());
    for (std::size_t n = 0; n < components_.size(); ++n) {
        comp[n].resize(components_[n].size());
        for (std::size_t s = 0; s < components_[n].size(); ++s) comp[n][static_cast<std::size_t>(components_[n][s])] = static_cast<int>(s);
    }
    return SimplicialMap(target_, source_, std::move(comp));
}

// ---- standard constructions ---------------------------------------------

SSetPtr sub_simplex(std::string name, int n, int cap, const std::function<bool(const DeltaMap&)>& keep) {
    return SSet::build(
        std::move(name), cap,
        [=](int k) {
            std::vector<Key> out;
            for (const auto& u : DeltaMap::all(k, n)) {
                if (keep(u)) out.push_back(u.values());
            }
            return out;
        },
        [=](const DeltaMap& w, const Key& key) { return compose(DeltaMap(n, key), w).values(); });
}

SSetPtr standard_simplex(int n, int cap) {
    return sub_simplex("Delta" + std::to_string(n), n, cap, [](const DeltaMap&) { return true; });
}

SSetPtr boundary(int n, int cap) {
    return sub_simplex("dDelta" + std::to_string(n), n, cap, [](const DeltaMap& u) { return !u.surjective(); });
}

SSetPtr horn(int n, int k, int cap) {
    return sub_simplex("Lambda" + std::to_string(n) + "_" + std::to_string(k), n, cap, [n, k](const DeltaMap& u) {
        for (int j = 0; j <= n; ++j) {
            if (j != k && !std::binary_search(u.values().begin(), u.values().end(), j)) return true;
        }
        return false;
    });
}

SimplicialMap simplex_inclusion(const SSetPtr& sub, int n) {
    auto full = standard_simplex(n, sub->cap());
    return SimplicialMap::from_keys(sub, full, [](int, const Key& k) { return k; });
}

SSetPtr point(int cap) { return standard_simplex(0, cap); }

SSetPtr product(const SSetPtr& x, const SSetPtr& y) {
    int cap = std::min(x->cap(), y->cap());
    return SSet::build(
        "(" + x->name() + "x" + y->name() + ")", cap,
        [=](int n) {
            std::vector<Key> out;
            out.reserve(static_cast<std::size_t>(x->size(n)) * static_cast<std::size_t>(y->size(n)));
            for (int a = 0; a < x->size(n); ++a) {
                for (int b = 0; b < y->size(n); ++b) out.push_back({a, b});
            }
            return out;
        },
        [=](const DeltaMap& u, const Key& k) { return Key{x->act(u, k[0]), y->act(u, k[1])}; });
}

SimplicialMap product_projection(const SSetPtr& prod, const SSetPtr& factor, int which) {
    return SimplicialMap::from_fn(prod, factor, [&](int n, int s) { return prod->key(n, s)[static_cast<std::size_t>(which)]; });
}

SimplicialMap product_map(const SSetPtr& prod_target, const SimplicialMap& a, const SimplicialMap& b) {
    return SimplicialMap::from_fn(a.source(), prod_target, [&](int n, int s) {
        return prod_target->index_of(n, {a(n, s), b(n, s)});
    });
}

SSetPtr coproduct(const SSetPtr& x, const SSetPtr& y) {
    int cap = std::min(x->cap(), y->cap());
    return SSet::build(
        "(" + x->name() + "+" + y->name() + ")", cap,
        [=](int n) {
            std::vector<Key> out;
            for (int a = 0; a < x->size(n); ++a) out.push_back({0, a});
            for (int b = 0; b < y->size(n); ++b) out.push_back({1, b});
            return out;
        },
        [=](const DeltaMap& u, const Key& k) { return Key{k[0], (k[0] == 0 ? x : y)->act(u, k[1])}; });
}

SimplicialMap coproduct_inclusion(const SSetPtr& sum, const SSetPtr& part, int which) {
    return SimplicialMap::from_fn(part, sum, [&](int n, int s) { return sum->index_of(n, {which, s}); });
}

Pullback pullback(const SimplicialMap& f, const SimplicialMap& g) {
    if (f.target().get() != g.target().get() && !f.target()->same_as(*g.target())) {
        throw InvariantError("pullback: maps have different codomains " + f.target()->name() + ", " +
                             g.target()->name());
    }
    int cap = std::min(f.cap(), g.cap());
    auto X = f.source();
    auto Y = g.source();
    auto obj = SSet::build(
        "(" + X->name() + "x_" + f.target()->name() + Y->name() + ")", cap,
        [&](int n) {
            std::map<int, std::vector<int>> by_image;
            for (int b = 0; b < Y->size(n); ++b) by_image[g(n, b)].push_back(b);
            std::vector<Key> out;
            for (int a = 0; a < X->size(n); ++a) {
                auto it = by_image.find(f(n, a));
                if (it == by_image.end()) continue;
                for (int b : it->second) out.push_back({a, b});
            }
            return out;
        },
        [=](const DeltaMap& u, const Key& k) { return Key{X->act(u, k[0]), Y->act(u, k[1])}; });
    return {obj, product_projection(obj, X, 0), product_projection(obj, Y, 1)};
}

SimplicialMap pullback_universal(const Pullback& pb, const SimplicialMap& a, const SimplicialMap& b) {
    return SimplicialMap::from_fn(a.source(), pb.object, [&](int n, int s) {
        auto r = pb.object->find(n, {a(n, s), b(n, s)});
        if (!r) {
            throw InvariantError("pullback_universal: cone does not commute at " + a.source()->describe(n, s));
        }
        return *r;
    });
}

// ---- presentations ------------------------------------------------------

namespace {

struct Presented {
    const std::vector<Generator>* gens;

    // normal form of w^* g, w: [k] -> [dim g]
    std::pair<int, DeltaMap> pull(int g, const DeltaMap& w) const {
        auto [epi, mono] = epi_mono(w);
        if (mono.is_identity()) return {g, epi};
        int dim = mono.cod();
        int j = dim;
        for (int x = dim; x >= 0; --x) {
            if (!std::binary_search(mono.values().begin(), mono.values().end(), x)) {
                j = x;
                break;
            }
        }
        std::vector<int> v;
        for (int x : mono.values()) v.push_back(x > j ? x - 1 : x);
        DeltaMap rest(dim - 1, std::move(v));
        const auto& face = (*gens)[static_cast<std::size_t>(g)].faces[static_cast<std::size_t>(j)];
        auto inner = pull(face.generator, compose(face.surj, rest));
        return {inner.first, compose(inner.second, epi)};
    }

    std::pair<int, DeltaMap> face_of(int g, int j) const {
        const auto& f = (*gens)[static_cast<std::size_t>(g)].faces[static_cast<std::size_t>(j)];
        return {f.generator, f.surj};
    }
};

}  // namespace

SSetPtr from_generators(std::string name, int cap, const std::vector<Generator>& gens) {
    Presented P{&gens};
    for (std::size_t g = 0; g < gens.size(); ++g) {
        const auto& G = gens[g];
        if (G.dim < 0) throw InvariantError(name + ": generator " + G.name + " has negative dimension");
        if (G.dim == 0) {
            if (!G.faces.empty()) throw InvariantError(name + ": vertex " + G.name + " has faces");
            continue;
        }
        if (static_cast<int>(G.faces.size()) != G.dim + 1) {
            throw InvariantError(name + ": generator " + G.name + " needs " + std::to_string(G.dim + 1) + " faces");
        }
        for (const auto& f : G.faces) {
            if (f.generator < 0 || static_cast<std::size_t>(f.generator) >= gens.size()) {
                throw InvariantError(name + ": generator " + G.name + " has a face with unknown generator");
            }
            if (f.surj.dom() != G.dim - 1 || f.surj.cod() != gens[static_cast<std::size_t>(f.generator)].dim ||
                !f.surj.surjective()) {
                throw InvariantError(name + ": face of " + G.name + " has the wrong dimension");
            }
            if (gens[static_cast<std::size_t>(f.generator)].dim >= G.dim) {
                throw InvariantError(name + ": face of " + G.name + " refers to a generator of dimension >= " +
                                     std::to_string(G.dim));
            }
        }
    }
    // simplicial identities d_i d_j = d_{j-1} d_i, i < j
    for (std::size_t g = 0; g < gens.size(); ++g) {
        int n = gens[g].dim;
        if (n < 2) continue;
        for (int j = 0; j <= n; ++j) {
            for (int i = 0; i < j; ++i) {
                auto fj = P.face_of(static_cast<int>(g), j);
                auto lhs = P.pull(fj.first, compose(fj.second, DeltaMap::coface(n - 1, i)));
                auto fi = P.face_of(static_cast<int>(g), i);
                auto rhs = P.pull(fi.first, compose(fi.second, DeltaMap::coface(n - 1, j - 1)));
                if (lhs != rhs) {
                    throw InvariantError(name + ": generator " + gens[g].name + " violates d" + std::to_string(i) +
                                         "d" + std::to_string(j) + " = d" + std::to_string(j - 1) + "d" +
                                         std::to_string(i));
                }
            }
        }
    }
    return SSet::build(
        std::move(name), cap,
        [&gens](int n) {
            std::vector<Key> out;
            for (std::size_t g = 0; g < gens.size(); ++g) {
                if (gens[g].dim > n) continue;
                for (const auto& s : DeltaMap::all(n, gens[g].dim)) {
                    if (!s.surjective()) continue;
                    Key k{static_cast<int>(g)};
                    k.insert(k.end(), s.values().begin(), s.values().end());
                    out.push_back(std::move(k));
                }
            }
            return out;
        },
        [P](const DeltaMap& u, const Key& k) {
            int g = k[0];
            DeltaMap s((*P.gens)[static_cast<std::size_t>(g)].dim, Key(k.begin() + 1, k.end()));
            auto [h, t] = P.pull(g, compose(s, u));
            Key out{h};
            out.insert(out.end(), t.values().begin(), t.values().end());
            return out;
        });
}

}  // namespace ssr

#include "ssr/fibcheck.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <set>
#include <unordered_set>

#include "ssr/category.hpp"
#include "ssr/diagram.hpp"
#include "ssr/error.hpp"

namespace ssr {

namespace {

inline std::size_t Z(int x) { return static_cast<std::size_t>(x); }

}  // namespace

// ---- lifting -------------------------------------------------------------------

std::optional<SimplicialMap> find_lift(const LiftingProblem& lp) {
    const auto& K = lp.inclusion.source();
    const auto& L = lp.inclusion.target();
    const auto& X = lp.p.source();
    const int cap = std::min({L->cap(), X->cap(), lp.p.target()->cap(), lp.top.cap(), lp.bottom.cap()});
    if (!lp.inclusion.injective()) throw InvariantError("find_lift: the left map is not a monomorphism");
    for (int n = 0; n <= std::min(cap, K->cap()); ++n) {
        for (int s = 0; s < K->size(n); ++s) {
            if (lp.p(n, lp.top(n, s)) != lp.bottom(n, lp.inclusion(n, s))) {
                throw InvariantError("find_lift: square does not commute at " + K->describe(n, s));
            }
        }
    }
    MapSearch ms;
    ms.sources = {L};
    ms.targets = {X};
    ms.cap = cap;
    const auto& p = lp.p;
    const auto& bottom = lp.bottom;
    ms.filter = {[&](int n, int x, int t) { return p(n, t) == bottom(n, x); }};
    ms.fixed.assign(1, std::vector<std::vector<int>>(Z(cap) + 1));
    for (int n = 0; n <= cap; ++n) {
        ms.fixed[0][Z(n)].assign(Z(L->size(n)), -1);
        if (n > K->cap()) continue;
        for (int s = 0; s < K->size(n); ++s) ms.fixed[0][Z(n)][Z(lp.inclusion(n, s))] = lp.top(n, s);
    }
    std::optional<SimplicialMap> out;
    ms.run([&](const auto& comps) {
        out.emplace(L, X, comps[0]);
        return false;
    });
    return out;
}

// ---- fibrations ------------------------------------------------------------------

std::string to_string(FibKind k) {
    switch (k) {
        case FibKind::Left:
            return "left";
        case FibKind::Kan:
            return "kan";
        case FibKind::Trivial:
            return "trivial";
    }
    return "?";
}

std::string FillWitness::describe(const SSet& x, const SSet& y) const {
    std::ostringstream os;
    if (k >= 0) {
        os << "Lambda^" << n << "_" << k;
    } else {
        os << "boundary of Delta^" << n;
    }
    os << " over " << y.describe(n, b) << " with faces [";
    for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
        if (i) os << ", ";
        if (i == k || faces[Z(i)] < 0) {
            os << "-";
        } else {
            os << x.describe(n - 1, faces[Z(i)]);
        }
    }
    os << "] has no filler";
    return os.str();
}

FibVerdict check_fibration(const SimplicialMap& p, FibKind kind, int max_dim) {
    const auto& X = *p.source();
    const auto& Y = *p.target();
    const int cap = std::min({X.cap(), Y.cap(), p.cap()});
    if (max_dim > cap - 1) {
        throw ResourceError("check_fibration: dimension " + std::to_string(max_dim) + " needs cap >= " +
                            std::to_string(max_dim + 1) + " (have " + std::to_string(cap) + ")");
    }
    FibVerdict v;
    // fibres of p per level
    std::vector<std::vector<std::vector<int>>> fib(Z(max_dim) + 1);
    for (int n = 0; n <= max_dim; ++n) {
        fib[Z(n)].assign(Z(Y.size(n)), {});
        for (int s = 0; s < X.size(n); ++s) fib[Z(n)][Z(p(n, s))].push_back(s);
    }
    if (kind == FibKind::Trivial) {
        for (int b = 0; b < Y.size(0); ++b) {
            ++v.problems;
            if (fib[0][Z(b)].empty()) {
                v.ok = false;
                v.witness = FillWitness{0, -1, b, {}};
                return v;
            }
        }
    }
    for (int n = 1; n <= max_dim; ++n) {
        std::vector<int> ks;
        if (kind == FibKind::Trivial) {
            ks.push_back(-1);
        } else {
            for (int k = 0; k < n; ++k) ks.push_back(k);
            if (kind == FibKind::Kan) ks.push_back(n);
        }
        for (int k : ks) {
            // realised boundary data: [p(y), d_i y for i != k]
            std::unordered_set<Key, KeyHash> realised;
            for (int y = 0; y < X.size(n); ++y) {
                Key key{p(n, y)};
                for (int i = 0; i <= n; ++i) {
                    if (i != k) key.push_back(X.face(n, i, y));
                }
                realised.insert(std::move(key));
            }
            for (int b = 0; b < Y.size(n); ++b) {
                std::vector<int> x(Z(n) + 1, -1);
                bool failed = false;
                std::function<void(int)> rec = [&](int i) {
                    if (failed) return;
                    if (i > n) {
                        ++v.problems;
                        Key key{b};
                        for (int j = 0; j <= n; ++j) {
                            if (j != k) key.push_back(x[Z(j)]);
                        }
                        if (!realised.count(key)) {
                            failed = true;
                            v.ok = false;
                            v.witness = FillWitness{n, k, b, x};
                        }
                        return;
                    }
                    if (i == k) {
                        rec(i + 1);
                        return;
                    }
                    for (int c : fib[Z(n - 1)][Z(Y.face(n, i, b))]) {
                        bool ok = true;
                        // d_j x_i = d_{i-1} x_j for j < i
                        for (int j = 0; j < i && ok && n >= 2; ++j) {
                            if (j == k) continue;
                            ok = X.face(n - 1, j, c) == X.face(n - 1, i - 1, x[Z(j)]);
                        }
                        if (!ok) continue;
                        x[Z(i)] = c;
                        rec(i + 1);
                        if (failed) return;
                    }
                    x[Z(i)] = -1;
                };
                rec(0);
                if (failed) return v;
            }
        }
    }
    return v;
}

FibVerdict is_kan_complex(const SSetPtr& x, int n) {
    auto pt = standard_simplex(0, x->cap());
    return is_kan_fibration(SimplicialMap::from_fn(x, pt, [](int, int) { return 0; }), n);
}

// ---- homology ---------------------------------------------------------------------

using Matrix = std::vector<std::vector<long long>>;

std::vector<long long> smith_invariants(Matrix m) {
    std::vector<long long> out;
    const std::size_t R = m.size();
    const std::size_t C = R ? m[0].size() : 0;
    std::size_t t = 0;
    while (t < R && t < C) {
        // pivot: smallest nonzero absolute value in the lower-right block
        std::size_t pr = R;
        std::size_t pc = C;
        for (std::size_t i = t; i < R; ++i) {
            for (std::size_t j = t; j < C; ++j) {
                if (m[i][j] != 0 && (pr == R || std::llabs(m[i][j]) < std::llabs(m[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
            }
        }
        if (pr == R) break;
        std::swap(m[t], m[pr]);
        for (auto& row : m) std::swap(row[t], row[pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                long long q = m[i][t] / m[t][t];
                if (q) {
                    for (std::size_t j = t; j < C; ++j) m[i][j] -= q * m[t][j];
                }
                if (m[i][t] != 0) {
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                long long q = m[t][j] / m[t][t];
                if (q) {
                    for (std::size_t i = t; i < R; ++i) m[i][j] -= q * m[i][t];
                }
                if (m[t][j] != 0) {
                    for (auto& row : m) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (clean) {
                // the pivot must divide the rest of the block
                for (std::size_t i = t + 1; i < R && clean; ++i) {
                    for (std::size_t j = t + 1; j < C && clean; ++j) {
                        if (m[i][j] % m[t][t] != 0) {
                            for (std::size_t jj = t; jj < C; ++jj) m[t][jj] += m[i][jj];
                            clean = false;
                        }
                    }
                }
            }
        }
        out.push_back(std::llabs(m[t][t]));
        ++t;
    }
    return out;
}

namespace {

// Homology of a chain complex given by dims[n] and boundary matrices
// bd[n]: C_n -> C_{n-1} (rows dims[n-1], cols dims[n]); degrees 0..d.
HomologyReport complex_homology(const std::vector<int>& dims, const std::vector<Matrix>& bd, int d) {
    HomologyReport h;
    h.degree = d;
    std::vector<std::vector<long long>> inv(dims.size());
    for (std::size_t n = 1; n < dims.size(); ++n) inv[n] = smith_invariants(bd[n]);
    for (int n = 0; n <= d; ++n) {
        int rk_out = n >= 1 ? static_cast<int>(inv[Z(n)].size()) : 0;
        int rk_in = static_cast<int>(inv[Z(n) + 1].size());
        h.rank.push_back(dims[Z(n)] - rk_out - rk_in);
        std::vector<long long> tor;
        for (long long a : inv[Z(n) + 1]) {
            if (a > 1) tor.push_back(a);
        }
        h.torsion.push_back(tor);
    }
    return h;
}

}  // namespace

int pi0(const SSet& x) {
    std::vector<int> p(Z(x.size(0)));
    std::iota(p.begin(), p.end(), 0);
    std::function<int(int)> root = [&](int a) { return p[Z(a)] == a ? a : p[Z(a)] = root(p[Z(a)]); };
    int comps = x.size(0);
    if (x.cap() >= 1) {
        for (int e = 0; e < x.size(1); ++e) {
            int a = root(x.face(1, 0, e));
            int b = root(x.face(1, 1, e));
            if (a != b) {
                p[Z(a)] = b;
                --comps;
            }
        }
    }
    return comps;
}

HomologyReport homology(const SSet& x, int d) {
    if (d > x.cap() - 1) throw ResourceError("homology: degree " + std::to_string(d) + " needs cap >= " + std::to_string(d + 1));
    std::vector<std::vector<int>> nd(Z(d) + 2);
    std::vector<std::vector<int>> pos(Z(d) + 2);
    std::vector<int> dims;
    for (int n = 0; n <= d + 1; ++n) {
        nd[Z(n)] = x.nondegenerate_at(n);
        pos[Z(n)].assign(Z(x.size(n)), -1);
        for (std::size_t i = 0; i < nd[Z(n)].size(); ++i) pos[Z(n)][Z(nd[Z(n)][i])] = static_cast<int>(i);
        dims.push_back(static_cast<int>(nd[Z(n)].size()));
    }
    std::vector<Matrix> bd(Z(d) + 2);
    for (int n = 1; n <= d + 1; ++n) {
        bd[Z(n)].assign(Z(dims[Z(n) - 1]), std::vector<long long>(Z(dims[Z(n)]), 0));
        for (int c = 0; c < dims[Z(n)]; ++c) {
            for (int i = 0; i <= n; ++i) {
                int f = pos[Z(n) - 1][Z(x.face(n, i, nd[Z(n)][Z(c)]))];
                if (f >= 0) bd[Z(n)][Z(f)][Z(c)] += (i % 2 == 0) ? 1 : -1;
            }
        }
    }
    auto h = complex_homology(dims, bd, d);
    h.pi0 = pi0(x);
    return h;
}

bool HomologyReport::acyclic() const {
    for (std::size_t n = 0; n < rank.size(); ++n) {
        if (rank[n] != 0 || !torsion[n].empty()) return false;
    }
    return true;
}

bool HomologyReport::is_point() const {
    if (rank.empty() || rank[0] != 1 || !torsion[0].empty()) return false;
    for (std::size_t n = 1; n < rank.size(); ++n) {
        if (rank[n] != 0 || !torsion[n].empty()) return false;
    }
    return true;
}

std::string HomologyReport::str() const {
    std::ostringstream os;
    for (std::size_t n = 0; n < rank.size(); ++n) {
        if (n) os << ", ";
        os << "H" << n << "=";
        std::vector<std::string> parts;
        if (rank[n] == 1) parts.push_back("Z");
        if (rank[n] > 1) parts.push_back("Z^" + std::to_string(rank[n]));
        for (long long t : torsion[n]) parts.push_back("Z/" + std::to_string(t));
        if (parts.empty()) parts.push_back("0");
        for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "+" : "") << parts[i];
    }
    return os.str();
}

std::string to_string(WeqVerdict v) {
    switch (v) {
        case WeqVerdict::Consistent:
            return "consistent-with-weq";
        case WeqVerdict::Refuted:
            return "refuted";
        case WeqVerdict::Inconclusive:
            return "inconclusive";
    }
    return "?";
}

WeqReport weq_evidence(const SimplicialMap& f, int d) {
    const auto& X = *f.source();
    const auto& Y = *f.target();
    if (d > std::min(X.cap(), Y.cap()) - 1) throw ResourceError("weq_evidence: degree " + std::to_string(d) + " needs cap >= " + std::to_string(d + 1));
    WeqReport r;
    // π₀ via components of X, Y and the induced map
    auto comp = [](const SSet& s) {
        std::vector<int> p(Z(s.size(0)));
        std::iota(p.begin(), p.end(), 0);
        std::function<int(int)> root = [&](int a) { return p[Z(a)] == a ? a : p[Z(a)] = root(p[Z(a)]); };
        for (int e = 0; s.cap() >= 1 && e < s.size(1); ++e) p[Z(root(s.face(1, 0, e)))] = root(s.face(1, 1, e));
        std::vector<int> out;
        for (int v = 0; v < s.size(0); ++v) out.push_back(root(v));
        return out;
    };
    auto cx = comp(X);
    auto cy = comp(Y);
    std::map<int, int> induced;
    bool well = true;
    for (int v = 0; v < X.size(0); ++v) {
        int img = cy[Z(f(0, v))];
        auto [it, fresh] = induced.emplace(cx[Z(v)], img);
        if (!fresh && it->second != img) well = false;
    }
    std::set<int> hit;
    for (auto& [a, b] : induced) hit.insert(b);
    std::set<int> ycomps(cy.begin(), cy.end());
    r.pi0_bijective = well && hit.size() == induced.size() && hit.size() == ycomps.size();
    // algebraic mapping cone: Cone_n = C_{n-1}(X) ⊕ C_n(Y)
    std::vector<std::vector<int>> ndx(Z(d) + 2), ndy(Z(d) + 2), posx(Z(d) + 2), posy(Z(d) + 2);
    for (int n = 0; n <= d + 1; ++n) {
        ndy[Z(n)] = Y.nondegenerate_at(n);
        posy[Z(n)].assign(Z(Y.size(n)), -1);
        for (std::size_t i = 0; i < ndy[Z(n)].size(); ++i) posy[Z(n)][Z(ndy[Z(n)][i])] = static_cast<int>(i);
        if (n <= d) {
            ndx[Z(n)] = X.nondegenerate_at(n);
            posx[Z(n)].assign(Z(X.size(n)), -1);
            for (std::size_t i = 0; i < ndx[Z(n)].size(); ++i) posx[Z(n)][Z(ndx[Z(n)][i])] = static_cast<int>(i);
        }
    }
    auto xdim = [&](int n) { return n >= 0 && n <= d ? static_cast<int>(ndx[Z(n)].size()) : 0; };
    std::vector<int> dims;
    for (int n = 0; n <= d + 1; ++n) dims.push_back(xdim(n - 1) + static_cast<int>(ndy[Z(n)].size()));
    std::vector<Matrix> bd(Z(d) + 2);
    for (int n = 1; n <= d + 1; ++n) {
        auto& m = bd[Z(n)];
        m.assign(Z(dims[Z(n) - 1]), std::vector<long long>(Z(dims[Z(n)]), 0));
        const int xo_src = xdim(n - 2);  // offset of the Y block in Cone_{n-1}
        // x generators of Cone_n: x ∈ C_{n-1}(X); ∂x = -∂_X x + f(x)
        for (int c = 0; c < xdim(n - 1); ++c) {
            int s = ndx[Z(n) - 1][Z(c)];
            for (int i = 0; i <= n - 1 && n - 1 >= 1; ++i) {
                int fpos = posx[Z(n) - 2][Z(X.face(n - 1, i, s))];
                if (fpos >= 0) m[Z(fpos)][Z(c)] -= (i % 2 == 0) ? 1 : -1;
            }
            int img = posy[Z(n) - 1][Z(f(n - 1, s))];
            if (img >= 0) m[Z(xo_src + img)][Z(c)] += 1;
        }
        // y generators: ∂y = ∂_Y y
        for (int c = 0; c < static_cast<int>(ndy[Z(n)].size()); ++c) {
            int s = ndy[Z(n)][Z(c)];
            for (int i = 0; i <= n; ++i) {
                int fpos = posy[Z(n) - 1][Z(Y.face(n, i, s))];
                if (fpos >= 0) m[Z(xo_src + fpos)][Z(xdim(n - 1) + c)] += (i % 2 == 0) ? 1 : -1;
            }
        }
    }
    r.cone = complex_homology(dims, bd, d);
    if (!r.pi0_bijective) {
        r.verdict = WeqVerdict::Refuted;
        r.reason = "pi0 is not a bijection";
    } else if (!r.cone.acyclic()) {
        r.verdict = WeqVerdict::Refuted;
        r.reason = "mapping cone has homology " + r.cone.str();
    } else if (d == 0) {
        r.verdict = WeqVerdict::Inconclusive;
        r.reason = "only pi0 was compared";
    } else {
        r.verdict = WeqVerdict::Consistent;
        r.reason = "pi0 bijective and mapping cone acyclic through degree " + std::to_string(d);
    }
    return r;
}

// ---- Ex ------------------------------------------------------------------------------

namespace {

CatPtr subsets_poset(int n) {
    const int count = (1 << (n + 1)) - 1;
    std::vector<std::string> names;
    for (int m = 1; m <= count; ++m) {
        std::string s = "{";
        for (int i = 0; i <= n; ++i) {
            if (m & (1 << i)) s += std::to_string(i);
        }
        names.push_back(s + "}");
    }
    return poset("sd[" + std::to_string(n) + "]", names, [](int a, int b) { return ((a + 1) & ~(b + 1)) == 0; });
}

int max_bit(int mask) {
    int m = 0;
    for (int i = 0; (1 << i) <= mask; ++i) {
        if (mask & (1 << i)) m = i;
    }
    return m;
}

struct ExTools {
    int cap = 0;
    std::vector<CatPtr> posets;
    std::vector<SSetPtr> sd;
    std::map<DeltaMap, SimplicialMap> along;  // sd(u): sd Δᵏ -> sd Δⁿ

    const SimplicialMap& sd_map(const DeltaMap& u) {
        auto it = along.find(u);
        if (it != along.end()) return it->second;
        std::vector<int> obj;
        for (int m = 1; m < (1 << (u.dom() + 1)); ++m) {
            int img = 0;
            for (int i = 0; i <= u.dom(); ++i) {
                if (m & (1 << i)) img |= 1 << u(i);
            }
            obj.push_back(img - 1);
        }
        auto f = CatFunctor::between_posets(posets[Z(u.dom())], posets[Z(u.cod())], obj);
        return along.emplace(u, nerve_map(f, sd[Z(u.dom())], sd[Z(u.cod())])).first->second;
    }
    Key key_of(int n, const SimplicialMap& g) const {
        Key k;
        for (int m = 0; m <= n; ++m) {
            for (int s : sd[Z(n)]->nondegenerate_at(m)) k.push_back(g(m, s));
        }
        return k;
    }
    SimplicialMap map_of(int n, const Key& k, const SSetPtr& x) const {
        std::vector<std::vector<int>> images(Z(cap) + 1);
        std::size_t at = 0;
        for (int m = 0; m <= n; ++m) {
            for (std::size_t i = 0; i < sd[Z(n)]->nondegenerate_at(m).size(); ++i) images[Z(m)].push_back(k[at++]);
        }
        return SimplicialMap::from_nondegenerate(sd[Z(n)], x, images);
    }
};

}  // namespace

SSetPtr subdivision(int n, int cap) { return nerve(subsets_poset(n), cap); }

ExResult ex(const SSetPtr& x, int cap) {
    if (x->cap() < cap) throw InvariantError("ex: input is tabulated only up to " + std::to_string(x->cap()));
    auto tools = std::make_shared<ExTools>();
    tools->cap = cap;
    for (int n = 0; n <= cap + 1; ++n) {
        tools->posets.push_back(subsets_poset(n));
        tools->sd.push_back(nerve(tools->posets.back(), cap));
    }
    auto total = SSet::build(
        "Ex(" + x->name() + ")", cap,
        [tools, x](int n) {
            std::vector<Key> out;
            for (const auto& g : all_maps(tools->sd[Z(n)], x)) out.push_back(tools->key_of(n, g));
            if (out.size() > max_cells()) throw ResourceError("ex: level " + std::to_string(n) + " exceeds the cell budget");
            return out;
        },
        [tools, x](const DeltaMap& w, const Key& k) {
            auto g = tools->map_of(w.cod(), k, x);
            return tools->key_of(w.dom(), tools->sd_map(w).then(g));
        });
    // x ↦ x ∘ (last vertex map sd Δⁿ -> Δⁿ)
    auto unit = SimplicialMap::from_fn(x, total, [&](int n, int s) {
        const auto& sd = *tools->sd[Z(n)];
        std::vector<std::vector<int>> comps(Z(cap) + 1);
        for (int m = 0; m <= cap; ++m) {
            for (int t = 0; t < sd.size(m); ++t) {
                std::vector<int> v;
                for (int i = 0; i <= m; ++i) v.push_back(max_bit(sd.key(0, sd.vertex(m, t, i))[0] + 1));
                comps[Z(m)].push_back(x->act(DeltaMap(n, v), s));
            }
        }
        return total->index_of(n, tools->key_of(n, SimplicialMap(tools->sd[Z(n)], x, comps)));
    });
    return {total, unit};
}

ExResult ex_iterate(const SSetPtr& x, int k, int cap) {
    ExResult r{x, SimplicialMap::identity(x)};
    for (int i = 0; i < k; ++i) {
        auto step = ex(r.ex, cap);
        r = {step.ex, r.unit.then(step.unit)};
    }
    return r;
}

}  // namespace ssr

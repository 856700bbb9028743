#ifndef SSR_SSET_HPP
#define SSR_SSET_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ssr/delta.hpp"

namespace ssr {

/// Canonical identifier of a simplex. Every construction encodes its
/// simplices as integer tuples; levels are sorted by key, so indices are
/// deterministic and two constructions agree literally iff their keys and
/// structure tables agree.
using Key = std::vector<int>;

struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (int x : k) {
            h ^= static_cast<std::size_t>(static_cast<unsigned>(x));
            h *= 1099511628211ull;
        }
        return h ^ k.size();
    }
};

class SSet;
using SSetPtr = std::shared_ptr<const SSet>;

/// A simplex in Eilenberg–Zilber normal form: s = surj^* (base simplex).
struct NormalForm {
    int level = 0;    // dimension of the nondegenerate simplex
    int index = 0;    // its index at that level
    DeltaMap surj;    // [n] -> [level]
};

/// A levelwise-finite simplicial set, materialised for levels 0..cap.
/// Immutable after construction; safe to share between threads.
class SSet {
public:
    /// Key-level action: given u: [k] -> [n] and the key of an n-simplex,
    /// returns the key of u^*(simplex). Only called with cofaces and
    /// codegeneracies.
    using KeyAction = std::function<Key(const DeltaMap&, const Key&)>;
    using Enumerate = std::function<std::vector<Key>(int)>;

    /// Enumerates every level, sorts the keys and tabulates faces and
    /// degeneracies through `act`. Throws InvariantError when a face or
    /// degeneracy key is missing, ResourceError when the cell budget is hit.
    static SSetPtr build(std::string name, int cap, const Enumerate& enumerate, const KeyAction& act);

    /// Builds from explicit tables (used by transport along bijections).
    static SSetPtr from_tables(std::string name, int cap, std::vector<std::vector<Key>> keys,
                               std::vector<std::vector<std::vector<int>>> faces,
                               std::vector<std::vector<std::vector<int>>> degens);

    const std::string& name() const { return name_; }
    int cap() const { return cap_; }
    int size(int n) const { return static_cast<int>(levels_.at(static_cast<std::size_t>(n)).keys.size()); }
    std::size_t total_size() const;
    const Key& key(int n, int s) const { return level(n).keys[static_cast<std::size_t>(s)]; }
    const std::vector<Key>& keys(int n) const { return level(n).keys; }
    std::optional<int> find(int n, const Key& k) const;
    /// Like find, but throws InvariantError naming the key.
    int index_of(int n, const Key& k) const;

    int face(int n, int i, int s) const { return level(n).faces[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)]; }
    int degen(int n, int i, int s) const { return level(n).degens[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)]; }

    /// u^* s for u: [k] -> [n] and s at level n = u.cod(); result at level k.
    int act(const DeltaMap& u, int s) const;

    bool nondegenerate(int n, int s) const { return level(n).nondeg[static_cast<std::size_t>(s)] != 0; }
    std::vector<int> nondegenerate_at(int n) const;
    NormalForm normalize(int n, int s) const;

    /// Vertex i of an n-simplex.
    int vertex(int n, int s, int i) const { return act(DeltaMap::constant(0, n, i), s); }

    /// First violated simplicial identity, if any.
    std::optional<std::string> check_identities() const;

    /// Literal equality: same cap, same keys at every level, same tables.
    bool same_as(const SSet& other) const;

    std::string describe(int n, int s) const;

private:
    struct Level {
        std::vector<Key> keys;
        std::unordered_map<Key, int, KeyHash> index;
        std::vector<std::vector<int>> faces;   // faces[i][s], i = 0..n (n >= 1)
        std::vector<std::vector<int>> degens;  // degens[i][s] into level n+1, empty at cap
        std::vector<char> nondeg;
    };

    const Level& level(int n) const { return levels_.at(static_cast<std::size_t>(n)); }
    void finish();

    std::string name_;
    int cap_ = 0;
    std::vector<Level> levels_;
};

/// A morphism of simplicial sets, tabulated on levels 0..min(caps).
class SimplicialMap {
public:
    SimplicialMap() = default;
    SimplicialMap(SSetPtr source, SSetPtr target, std::vector<std::vector<int>> components);

    static SimplicialMap identity(const SSetPtr& x);
    static SimplicialMap from_fn(const SSetPtr& source, const SSetPtr& target,
                                 const std::function<int(int, int)>& f);
    static SimplicialMap from_keys(const SSetPtr& source, const SSetPtr& target,
                                   const std::function<Key(int, const Key&)>& f);
    /// Extends images of nondegenerate simplices (indexed as in nondegenerate_at)
    /// to every simplex via normal forms.
    static SimplicialMap from_nondegenerate(const SSetPtr& source, const SSetPtr& target,
                                            const std::vector<std::vector<int>>& images);

    const SSetPtr& source() const { return source_; }
    const SSetPtr& target() const { return target_; }
    int cap() const { return static_cast<int>(components_.size()) - 1; }
    int operator()(int n, int s) const { return components_[static_cast<std::size_t>(n)][static_cast<std::size_t>(s)]; }
    const std::vector<std::vector<int>>& components() const { return components_; }

    /// First face/degeneracy square that fails to commute, if any.
    std::optional<std::string> check() const;
    bool injective() const;
    bool surjective() const;
    bool bijective() const { return injective() && surjective(); }

    /// g ∘ *this.
    SimplicialMap then(const SimplicialMap& g) const;
    /// Inverse of a levelwise bijection.
    SimplicialMap inverse() const;

    friend bool operator==(const SimplicialMap& a, const SimplicialMap& b) {
        return a.components_ == b.components_;
    }

private:
    SSetPtr source_;
    SSetPtr target_;
    std::vector<std::vector<int>> components_;
};

// ---- standard constructions -------------------------------------------

/// The subobject of Δⁿ on the maps u: [k] -> [n] with keep(u); keep must be
/// closed under precomposition. Keys are the values of u.
SSetPtr sub_simplex(std::string name, int n, int cap, const std::function<bool(const DeltaMap&)>& keep);
SSetPtr standard_simplex(int n, int cap);
SSetPtr boundary(int n, int cap);
SSetPtr horn(int n, int k, int cap);
/// Inclusion of a subobject of Δⁿ (boundary, horn) into Δⁿ.
SimplicialMap simplex_inclusion(const SSetPtr& sub, int n);
SSetPtr point(int cap);

SSetPtr product(const SSetPtr& x, const SSetPtr& y);
SimplicialMap product_projection(const SSetPtr& prod, const SSetPtr& factor, int which);
SimplicialMap product_map(const SSetPtr& prod_target, const SimplicialMap& a, const SimplicialMap& b);

SSetPtr coproduct(const SSetPtr& x, const SSetPtr& y);
SimplicialMap coproduct_inclusion(const SSetPtr& sum, const SSetPtr& part, int which);

/// X ×_S Y for f: X -> S, g: Y -> S; simplices keyed (x, y).
struct Pullback {
    SSetPtr object;
    SimplicialMap to_left;   // -> X
    SimplicialMap to_right;  // -> Y
};
Pullback pullback(const SimplicialMap& f, const SimplicialMap& g);
/// The unique map W -> X ×_S Y induced by a: W -> X, b: W -> Y.
/// Throws InvariantError if f∘a != g∘b.
SimplicialMap pullback_universal(const Pullback& pb, const SimplicialMap& a, const SimplicialMap& b);

/// Presentation by nondegenerate simplices and their faces. A face is a
/// simplex in normal form: a generator and a surjection onto its dimension.
struct Generator {
    std::string name;
    int dim = 0;
    struct FaceRef {
        int generator = 0;
        DeltaMap surj;
    };
    std::vector<FaceRef> faces;  // dim + 1 entries for dim >= 1
};
/// Builds the simplicial set whose nondegenerate simplices are exactly the
/// generators. Keys are (generator, surj values...). Throws InvariantError
/// when the faces violate a simplicial identity.
SSetPtr from_generators(std::string name, int cap, const std::vector<Generator>& gens);

/// Checks that `nerve`-style construction respects act(u∘v) = act(v)∘act(u)
/// for all u, v with dimensions up to cap. Returns the first violation.
std::optional<std::string> check_presheaf_laws(const SSet& x);

}  // namespace ssr

#endif

#ifndef SSR_CATEGORY_HPP
#define SSR_CATEGORY_HPP

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ssr/sset.hpp"

namespace ssr {

struct Morphism {
    std::string name;
    int src = 0;
    int tgt = 0;
};

class FinCategory;
using CatPtr = std::shared_ptr<const FinCategory>;

/// A finite category with a total composition table.
class FinCategory {
public:
    /// Builds from explicit morphisms (identities included, listed in `ids`)
    /// and a composition rule; validates units and associativity.
    static CatPtr make(std::string name, std::vector<std::string> objects, std::vector<Morphism> morphisms,
                       std::vector<int> ids, const std::function<int(int, int)>& compose);
    /// Builds from non-identity morphisms and composition triples (g, f, g∘f).
    /// Triple entries index the full morphism list: identities occupy
    /// 0..objects-1 (named "id_<object>"), then `nonid` in order. Throws InvariantError on a missing, duplicated or
    /// ill-typed triple and on non-associativity.
    static CatPtr from_triples(std::string name, std::vector<std::string> objects, std::vector<Morphism> nonid,
                               const std::vector<std::array<int, 3>>& triples);

    const std::string& name() const { return name_; }
    int num_objects() const { return static_cast<int>(objects_.size()); }
    int num_morphisms() const { return static_cast<int>(mors_.size()); }
    const std::string& object_name(int o) const { return objects_[static_cast<std::size_t>(o)]; }
    const Morphism& morphism(int m) const { return mors_[static_cast<std::size_t>(m)]; }
    int src(int m) const { return morphism(m).src; }
    int tgt(int m) const { return morphism(m).tgt; }
    int id(int o) const { return ids_[static_cast<std::size_t>(o)]; }
    bool is_identity(int m) const { return id(src(m)) == m; }
    /// g ∘ f; throws InvariantError unless tgt(f) == src(g).
    int compose(int g, int f) const;
    const std::vector<int>& hom(int a, int b) const {
        return homs_[static_cast<std::size_t>(a) * objects_.size() + static_cast<std::size_t>(b)];
    }
    std::optional<int> find_object(const std::string& n) const;
    std::optional<int> find_morphism(const std::string& n) const;

    /// Unit and associativity laws, exhaustively.
    std::optional<std::string> check_laws() const;

private:
    std::string name_;
    std::vector<std::string> objects_;
    std::vector<Morphism> mors_;
    std::vector<int> ids_;
    std::vector<int> comp_;  // comp_[g * M + f], -1 when not composable
    std::vector<std::vector<int>> homs_;
};

// ---- standard categories ----------------------------------------------

/// Poset on n objects named by `names` with i <= j iff leq(i, j).
CatPtr poset(std::string name, std::vector<std::string> names, const std::function<bool(int, int)>& leq);
/// The linear order [n] = {0 < 1 < ... < n}.
CatPtr linear_order(int n);
CatPtr terminal_category();
CatPtr discrete_category(int k);
/// The cospan 0 -> 1 <- 2.
CatPtr cospan_category();
/// The span b <- a -> c (indexing shape of pushouts).
CatPtr span_category();
/// Z/k as a one-object groupoid.
CatPtr cyclic_group(int k);
/// The groupoid with k objects and exactly one morphism between any two.
CatPtr codiscrete_groupoid(int k);
CatPtr opposite(const CatPtr& c);
CatPtr product_category(const CatPtr& a, const CatPtr& b);
/// A random poset on k objects: transitive closure of a random DAG.
CatPtr random_poset(int k, double edge_prob, std::mt19937_64& rng);

/// Σⁿ: intervals [i,j] of [n] ordered by inclusion. Objects are numbered
/// by increasing j, then decreasing i.
CatPtr sigma_category(int n);
/// Object index of [i,j] in sigma_category(n).
int sigma_object(int n, int i, int j);
/// The interval of an object of sigma_category(n).
std::pair<int, int> sigma_interval(int n, int obj);

// ---- functors ------------------------------------------------------------

struct CatFunctor {
    CatPtr src;
    CatPtr tgt;
    std::vector<int> obj;
    std::vector<int> mor;

    std::optional<std::string> check() const;
    /// g ∘ *this.
    CatFunctor then(const CatFunctor& g) const;
    static CatFunctor identity(const CatPtr& c);
    /// Determined by an object map on posets (morphisms are forced).
    static CatFunctor between_posets(const CatPtr& src, const CatPtr& tgt, std::vector<int> obj);
    friend bool operator==(const CatFunctor& a, const CatFunctor& b) {
        return a.obj == b.obj && a.mor == b.mor;
    }
};

/// Λⁿ with its inclusion into Σⁿ (the full subcategory on j - i ≤ 1).
struct LambdaCategory {
    CatPtr lambda;
    CatFunctor inclusion;
};
LambdaCategory lambda_category(int n);

/// The functor Σⁿ → Σᵐ, [i,j] ↦ [u(i), u(j)], for u: [n] -> [m].
CatFunctor sigma_op_functor(const DeltaMap& u);

/// The functor into the product category with the given components.
CatFunctor pair_functor(const CatPtr& prod, const CatFunctor& a, const CatFunctor& b);
CatFunctor product_projection_functor(const CatPtr& prod, const CatPtr& a, const CatPtr& b, int which);

// ---- nerves ----------------------------------------------------------------

/// A chain c0 -> c1 -> ... -> cn read off a nerve key [c0, m1, ..., mn].
struct Chain {
    std::vector<int> obj;
    std::vector<int> mor;  // mor[i] : obj[i] -> obj[i+1]
    int dim() const { return static_cast<int>(obj.size()) - 1; }
    /// α_{i,j}: obj[i] -> obj[j], the composite (identity when i == j).
    int between(const FinCategory& c, int i, int j) const;
    Key key() const;
};
Chain chain_of(const FinCategory& c, const Key& key);
/// The chain α ∘ u for u: [k] -> [n].
Chain restrict_chain(const FinCategory& c, const Chain& a, const DeltaMap& u);

/// N C up to cap; n-simplices keyed [c0, m1, ..., mn].
SSetPtr nerve(const CatPtr& c, int cap);
SimplicialMap nerve_map(const CatFunctor& f, const SSetPtr& nsrc, const SSetPtr& ntgt);
/// The n-simplex of N C given by a chain, as a chain key.
Key chain_key(const std::vector<int>& objects, const std::vector<int>& morphisms);

// ---- slices and comma categories ------------------------------------------

/// Comma category F/c: objects (x, h: F x -> c), morphisms g: x -> x'
/// with h' ∘ F g = h. `objects` records (x, h) pairs in order.
struct Comma {
    CatPtr cat;
    std::vector<std::pair<int, int>> objects;  // (x, h)
    std::vector<int> morphism_of;              // underlying morphism of the source category
};
Comma slice_over(const CatFunctor& f, int c);
/// c/F: objects (x, h: c -> F x), morphisms g: x -> x' with F g ∘ h = h'.
Comma coslice_under(const CatFunctor& f, int c);
/// Full subcategory on the objects satisfying keep.
struct FullSub {
    CatPtr cat;
    std::vector<int> objects;  // source object indices
    CatFunctor inclusion;
};
FullSub full_subcategory(const CatPtr& c, const std::function<bool(int)>& keep, std::string name);

// ---- the slice Δ_{/[n]} -----------------------------------------------

/// Δ_{/[n]} with objects u: [k] -> [n], k ≤ domcap, and the last-vertex
/// functor to [n], u ↦ u(k).
struct DeltaSlice {
    CatPtr cat;
    std::vector<DeltaMap> objects;
    std::vector<DeltaMap> morphism_maps;  // v for each morphism u -> u'
    CatFunctor last_vertex;
};
DeltaSlice delta_slice(int n, int domcap);

// ---- Σα ----------------------------------------------------------------

/// A morphism of Δ^op × C: an order-preserving map v: [i'] -> [i] (read
/// contravariantly) together with a morphism of C.
struct DeltaOpCMorphism {
    DeltaMap v;
    int c = 0;
};
/// Σα: Σⁿ → Δ^op × C for a chain α. Objects [i,j] ↦ ([i], α_j);
/// an inclusion [i,j] ⊆ [i',j'] ↦ (v: [i'] -> [i] the initial inclusion, α_{j,j'}).
struct SigmaAlpha {
    CatPtr sigma;
    std::vector<std::pair<int, int>> obj;  // (i, α_j)
    std::vector<DeltaOpCMorphism> mor;
};
SigmaAlpha sigma_alpha(const FinCategory& c, const Chain& alpha);

// ---- set-valued functors, limits and colimits ----------------------------

/// A covariant functor C -> FinSet, tabulated.
struct SetFunctor {
    CatPtr cat;
    std::vector<int> size;
    std::vector<std::vector<int>> act;  // act[m][x] in size[tgt m]

    std::optional<std::string> check() const;
};

/// Elements of lim F as compatible families, one entry per object,
/// lexicographically ordered. Objects are assigned in index order; a value
/// is forced whenever an already-assigned object maps into it.
std::vector<std::vector<int>> finite_limit(const SetFunctor& f);
/// colim F: the class index of every (object, element), classes numbered by
/// their least member in (object, element) order.
struct Colimit {
    int count = 0;
    std::vector<std::vector<int>> cls;  // cls[c][x]
};
Colimit finite_colimit(const SetFunctor& f);

// ---- Grothendieck construction -------------------------------------------

/// A strict functor D -> Cat, tabulated.
struct StrictCatFunctor {
    CatPtr base;
    std::vector<CatPtr> value;          // per object of D
    std::vector<CatFunctor> along;      // per morphism of D

    /// Identities go to identity functors and composites to composites,
    /// compared literally.
    std::optional<std::string> check_strict() const;
};

/// ∫G with its projection to D. Objects (d, x); a morphism out of (d, x)
/// is (f, g) with f: d -> d' and g: G(f)(x) -> x', stored as (f, x, g).
struct Grothendieck {
    CatPtr total;
    CatFunctor projection;
    std::vector<std::pair<int, int>> objects;     // (d, x)
    std::vector<std::array<int, 3>> morphisms;    // (f, x, g)
    std::vector<int> object_offset;               // first index of each fibre
    int object_index(int d, int x) const { return object_offset[static_cast<std::size_t>(d)] + x; }
    int morphism_index(int f, int x, int g) const;
    std::map<std::array<int, 3>, int> morphism_pos;
};
Grothendieck grothendieck(const StrictCatFunctor& g);

/// A contravariant functor on ∫G, i.e. S: (∫G)^op -> FinSet, given by the
/// size of S(d, x) and pullback tables along morphisms of ∫G.
struct ContraSetFunctor {
    std::vector<int> size;                  // per object of ∫G
    std::vector<std::vector<int>> pull;     // pull[m][y]: S(tgt m) -> S(src m)
};
/// R_π S: d ↦ lim over the fibre G(d)^op, as a contravariant functor on D.
/// Values are families indexed by the objects of G(d).
struct FiberwiseRan {
    std::vector<std::vector<std::vector<int>>> value;  // value[d] = families
    std::vector<std::vector<int>> pull;                // pull[f]: value[tgt f] -> value[src f]
};
FiberwiseRan fiberwise_ran(const StrictCatFunctor& g, const Grothendieck& total, const ContraSetFunctor& s);

}  // namespace ssr

#endif

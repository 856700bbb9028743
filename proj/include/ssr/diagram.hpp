#ifndef SSR_DIAGRAM_HPP
#define SSR_DIAGRAM_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ssr/category.hpp"
#include "ssr/sset.hpp"

namespace ssr {

/// A strict functor C -> sSet: a simplicial set per object, a map per morphism.
struct Diagram {
    CatPtr cat;
    std::vector<SSetPtr> at;
    std::vector<SimplicialMap> along;

    int cap() const;
    const SSet& value(int c) const { return *at[static_cast<std::size_t>(c)]; }
    /// F(m) applied to an n-simplex of F(src m).
    int apply(int m, int n, int x) const { return along[static_cast<std::size_t>(m)](n, x); }
    /// Simplicial maps, identities and composites, levelwise up to cap.
    std::optional<std::string> check() const;
};
using DiagramPtr = std::shared_ptr<const Diagram>;

/// Builds and validates; throws InvariantError naming the failing law.
DiagramPtr make_diagram(CatPtr cat, std::vector<SSetPtr> at, std::vector<SimplicialMap> along);
/// The constant diagram at X.
DiagramPtr constant_diagram(const CatPtr& cat, const SSetPtr& x);
/// ψ^*F = F ∘ ψ for ψ: D -> C.
DiagramPtr restrict_diagram(const CatFunctor& psi, const DiagramPtr& f);
/// F × G objectwise, simplices keyed (x, y).
DiagramPtr diagram_product(const DiagramPtr& f, const DiagramPtr& g);
/// F × X for a fixed simplicial set X.
DiagramPtr diagram_times(const DiagramPtr& f, const SSetPtr& x);

/// A natural transformation, one component per object.
struct NatTrans {
    DiagramPtr source;
    DiagramPtr target;
    std::vector<SimplicialMap> comp;

    /// Each component is simplicial and every naturality square commutes.
    std::optional<std::string> check() const;
    NatTrans then(const NatTrans& g) const;
    static NatTrans identity(const DiagramPtr& f);
    bool objectwise_injective() const;
    friend bool operator==(const NatTrans& a, const NatTrans& b) { return a.comp == b.comp; }
};

// ---- exhaustive map search --------------------------------------------------

/// A search for simplicial maps h_b: X_b -> Y_b, one per block, with
/// optional per-simplex filters, prescribed images and links
/// t ∘ h_from = h_to ∘ s for maps s: X_from -> X_to, t: Y_from -> Y_to.
/// Unknowns are nondegenerate simplices, assigned in order of dimension,
/// then block, then index; candidates are tried in increasing order, so the
/// first solution is the lexicographically least.
struct MapSearch {
    struct Link {
        int from = 0;
        int to = 0;
        SimplicialMap src_map;
        SimplicialMap tgt_map;
    };
    std::vector<SSetPtr> sources;
    std::vector<SSetPtr> targets;
    std::vector<Link> links;
    std::vector<std::function<bool(int, int, int)>> filter;  // (n, x, t) per block; may be empty
    std::vector<std::vector<std::vector<int>>> fixed;        // [block][n][x] = image or -1; may be empty
    int cap = 0;

    /// Calls `found` with the full components of every solution until it
    /// returns false. Returns the number of solutions visited.
    std::size_t run(const std::function<bool(const std::vector<std::vector<std::vector<int>>>&)>& found) const;
};

/// Every simplicial map X -> Y up to cap.
std::vector<SimplicialMap> all_maps(const SSetPtr& x, const SSetPtr& y);
/// Every map over a common base: q ∘ h = p.
std::vector<SimplicialMap> all_slice_maps(const SimplicialMap& p, const SimplicialMap& q);
/// Every natural transformation F -> G.
std::vector<NatTrans> all_nat_trans(const DiagramPtr& f, const DiagramPtr& g, std::size_t limit = SIZE_MAX);

}  // namespace ssr

#endif

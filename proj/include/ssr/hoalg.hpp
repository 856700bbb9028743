#ifndef SSR_HOALG_HPP
#define SSR_HOALG_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ssr/category.hpp"
#include "ssr/diagram.hpp"
#include "ssr/fibcheck.hpp"
#include "ssr/rectify.hpp"
#include "ssr/sset.hpp"

namespace ssr {

/// A simplicial hom space. Level n is the set of maps out of domain(n), a
/// family of simplicial sets (one block per object, or a single block for
/// slices), into the fixed codomain blocks. Maps are tabulated on levels
/// 0..map_cap and keyed by their flattened components.
struct HomSpace {
    SSetPtr space;
    int map_cap = 0;
    std::vector<std::vector<SSetPtr>> domain;  // domain[n][block]
    std::vector<SSetPtr> codomain;             // per block

    /// The components of an element at level n, one map per block.
    std::vector<SimplicialMap> decode(int n, int s) const;
    int encode(int n, const std::vector<SimplicialMap>& comps) const;
};

/// Maps F × Δⁿ -> G of diagrams. Levels 0..cap.
HomSpace diagram_hom(const DiagramPtr& f, const DiagramPtr& g, int cap);
/// Maps A × Δⁿ -> B over the common base.
HomSpace slice_hom(const SliceObject& a, const SliceObject& b, int cap);
/// Sections of p: maps base × Δⁿ -> total over the base.
HomSpace section_space(const SliceObject& p, int cap);
/// Sections of r*_C F over N C. Meaningful as a homotopy limit for Kan-valued F.
HomSpace holim(const DiagramPtr& f, int cap);

// ---- Dugger's replacement ----------------------------------------------------------

/// (QF)_n(c) = ⨿ over chains c0 -> ... -> cn -> c of F_n(c0), keyed
/// [c0, m1, ..., m(n+1), x], and q: QF -> F pushing x along the chain.
struct DuggerQ {
    DiagramPtr qf;
    NatTrans q;
};
DuggerQ dugger_Q(const DiagramPtr& f);
/// Q(A × F) -> QA × QF, (chain, (a, x)) ↦ ((chain, a), (chain, x)).
NatTrans dugger_product_comparison(const DiagramPtr& a, const DiagramPtr& f);

// ---- internal hom ---------------------------------------------------------------

/// (G^F)(c)_n = Hom(F × C(c, -) × Δⁿ, G) with the evaluation map.
struct InternalHom {
    DiagramPtr f, g;
    DiagramPtr hom;
    std::vector<HomSpace> at;  // per object
    NatTrans eval;             // G^F × F -> G
};
InternalHom internal_hom(const DiagramPtr& f, const DiagramPtr& g, int cap);

/// Outcome of an exact hom-set bijection check.
struct BijectionReport {
    std::size_t left = 0;
    std::size_t right = 0;
    bool bijective = false;
    std::string witness;  // first failure, empty when bijective
};
/// Hom(E, G^F) -> Hom(E × F, G), ψ ↦ ev ∘ (ψ × F).
BijectionReport check_currying(const DiagramPtr& e, const InternalHom& gf);

// ---- Kan extensions --------------------------------------------------------------

/// Lan_π F (d) = colim over π/d; unit F -> π^* Lan_π F.
struct KanExtension {
    DiagramPtr value;
    NatTrans unit;  // for lan: F -> π^*Lan; for ran: π^*Ran -> X (the counit)
};
KanExtension lan(const CatFunctor& pi, const DiagramPtr& f);
/// Ran_π X (d) = lim over d/π; counit π^* Ran_π X -> X.
KanExtension ran(const CatFunctor& pi, const DiagramPtr& x);
/// Lan_π after Dugger's replacement.
KanExtension ho_lan(const CatFunctor& pi, const DiagramPtr& f);

/// Hom(Lan F, Y) -> Hom(F, π^*Y), θ ↦ π^*θ ∘ unit.
BijectionReport check_lan_adjunction(const CatFunctor& pi, const KanExtension& l, const DiagramPtr& y);
/// Hom(Y, Ran X) -> Hom(π^*Y, X), θ ↦ counit ∘ π^*θ.
BijectionReport check_ran_adjunction(const CatFunctor& pi, const KanExtension& r, const DiagramPtr& y);

// ---- mapping spaces ---------------------------------------------------------------

/// Level-0 counts along the chain Hom_{/N C}(r*F, r*G) ≅ Hom(r_! r*F, G),
/// the adjunction step checked as an exact bijection, and Hom(QF, G).
struct MappingSpaceReport {
    std::size_t slice_maps = 0;
    std::size_t shriek_maps = 0;
    bool adjunction_bijective = false;
    std::size_t dugger_maps = 0;
};
MappingSpaceReport mapping_space_steps(const DiagramPtr& f, const DiagramPtr& g, int cap);

}  // namespace ssr

#endif

#ifndef SSR_RECTIFY_HPP
#define SSR_RECTIFY_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssr/category.hpp"
#include "ssr/diagram.hpp"
#include "ssr/sset.hpp"

namespace ssr {

/// An object of sSet over a base: total space and projection.
struct SliceObject {
    SSetPtr total;
    SimplicialMap proj;
    const SSetPtr& base() const { return proj.target(); }
};

/// An n-simplex of the rectification in its minimal form: a chain α in N C
/// and z_j ∈ F(α_j)_j with F(α_{j-1,j})(z_{j-1}) = d_j z_j.
struct RectSimplex {
    int alpha = 0;
    Chain chain;
    std::vector<int> z;
};

/// r*_C F. Simplices are keyed [α, z_0, ..., z_n] with α indexing N_n C.
struct Rectified {
    DiagramPtr F;
    SSetPtr nerve;
    SliceObject slice;

    const SSetPtr& total() const { return slice.total; }
    RectSimplex decode(int n, int s) const;
    std::optional<int> encode(int n, int alpha, const std::vector<int>& z) const;
};

/// Builds r*_C F up to cap; `nerve` may be passed to share N C.
Rectified rectify(const DiagramPtr& f, int cap, SSetPtr nerve = nullptr);
/// r*_C(f): (α, z) ↦ (α, f(z)).
SimplicialMap rectify_map(const NatTrans& f, const Rectified& src, const Rectified& tgt);
/// First violated matching condition among all simplices, if any.
std::optional<std::string> check_matching(const Rectified& r);

// ---- full families -----------------------------------------------------------

/// x_u ∈ F(α_{u(k)})_k for every u: [k] -> [n], k ≤ cap.
using FullFamily = std::map<DeltaMap, int>;
FullFamily to_full_family(const Rectified& r, int n, int s);
/// z_j = x_ι for the initial interval ι: [j] -> [n]; checks the family first.
int from_full_family(const Rectified& r, int n, int alpha, const FullFamily& x);
/// Compatibility F(f_v)(x_u) = v^* x_{u'} for every factorisation u = u' ∘ v.
std::optional<std::string> check_full_family(const Rectified& r, int n, int alpha, const FullFamily& x);

// ---- other presentations ---------------------------------------------------------

/// An independent presentation with explicit bijections to the minimal form.
struct Presentation {
    SliceObject slice;
    SimplicialMap to_minimal;    // presentation -> r*_C F
    SimplicialMap from_minimal;  // r*_C F -> presentation
};
/// Sections of (Σα)^* F^⊣ over Σⁿ; keys [α, y_{[i,j]} in Σⁿ object order].
Presentation rectify_sigma(const Rectified& minimal);
/// The fibre-limit route: R_π over the Grothendieck construction of Σ^op,
/// then Ψ. Keys [α, y_{[i,j]} ordered by (i, j)].
Presentation rectify_lambda(const Rectified& minimal);

// ---- Ψ ---------------------------------------------------------------------------

/// A presheaf on Δ_{/B}: a finite set over every simplex b of B and the
/// restriction along u: [k] -> [n].
struct SlicePresheaf {
    SSetPtr base;
    std::vector<std::vector<int>> size;                            // [n][b]
    std::function<int(const DeltaMap&, int, int)> act;              // (u, b, x) -> x' over u^*b
};
/// Ψ P: level n is ⨿_{b ∈ B_n} P(b), keyed [b, x].
SliceObject psi(const SlicePresheaf& p);
/// Ψ⁻¹ A: P(b) = simplices of A over b, in index order.
SlicePresheaf psi_inverse(const SliceObject& a);

// ---- change of index -------------------------------------------------------------

/// The square r*_D(ψ^*F) -> r*_C F over N ψ, realised as an explicit
/// isomorphism onto the pullback N D ×_{N C} r*_C F.
struct ChangeOfIndex {
    Rectified pulled;
    SimplicialMap top;      // r*_D(ψ^*F) -> r*_C F
    SimplicialMap nerve_psi;
    Pullback pullback;
    SimplicialMap iso;      // r*_D(ψ^*F) -> pullback object

    /// The square commutes and iso is a levelwise bijection onto the
    /// pullback set, checked simplex by simplex.
    std::optional<std::string> verify() const;
};
ChangeOfIndex change_of_index(const CatFunctor& psi, const Rectified& rc, SSetPtr nerve_d = nullptr);

// ---- the left adjoint -------------------------------------------------------------

/// r_{C!} A, computed as a colimit over the simplices of A. Generators
/// (a, j, t, h) stand for F(h)(t^* z_j(a)); trusted up to `trusted_cap`.
struct RShriek {
    SliceObject source;
    DiagramPtr diagram;
    int trusted_cap = 0;
    /// Class of the generator (a at level n, j, t: [m] -> [j], h: α_j -> c)
    /// as an m-simplex of diagram(c).
    int class_of(int c, int n, int a, int j, const DeltaMap& t, int h) const;

    std::vector<std::vector<std::unordered_map<Key, int, KeyHash>>> gen_class;  // [c][m]
};
RShriek r_shriek(const SliceObject& a, const CatPtr& cat, int cap);
/// φ ↦ φ♭ with φ♭(a, j, t, h) = F(h)(t^* z_j(φ a)).
NatTrans adjunct_flat(const RShriek& r, const Rectified& rf, const SimplicialMap& phi);
/// ψ ↦ ψ♯ with z_j(ψ♯ a) = ψ_{α_j}(a, j, id, id).
SimplicialMap adjunct_sharp(const RShriek& r, const Rectified& rf, const NatTrans& psi);
/// r_!(k) for a map k: A' -> A over N C.
NatTrans r_shriek_map(const SimplicialMap& k, const RShriek& src, const RShriek& tgt);

}  // namespace ssr

#endif

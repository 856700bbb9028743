#ifndef SSR_CLASSIFY_HPP
#define SSR_CLASSIFY_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssr/category.hpp"
#include "ssr/diagram.hpp"
#include "ssr/fibcheck.hpp"
#include "ssr/rectify.hpp"
#include "ssr/sset.hpp"

namespace ssr {

/// A chosen pullback of a fibration X -> Δⁿ along u: Δᵐ -> Δⁿ.
struct Square {
    SSetPtr object;      // X(u)
    SimplicialMap fib;   // X(u) -> Δᵐ
    SimplicialMap top;   // X(u) -> X
};

/// A left fibration over Δⁿ with chosen pullbacks along every u: [m] -> [n],
/// m ≤ cap. The square at the identity is the identity on X.
struct SSimplex {
    int n = 0;
    SimplicialMap fib;                    // X -> Δⁿ
    std::map<DeltaMap, Square> chosen;

    const SSetPtr& total() const { return fib.source(); }
    /// Identity normalisation and cartesianness of every chosen square.
    std::optional<std::string> verify() const;
};

/// Whether the square (fib_u, top) over u is a pullback of `fib`.
std::optional<std::string> check_cartesian(const SimplicialMap& fib, const DeltaMap& u, const Square& sq);

/// A map L -> 𝒮 in its finite form: an SSimplex per simplex of L.
struct ClassifyingFamily {
    SSetPtr base;
    std::vector<std::vector<SSimplex>> at;  // at[n][a]
    /// A(a) -> A for families built from a fibration A -> L; empty otherwise.
    std::vector<std::vector<SimplicialMap>> to_total;

    int cap() const { return static_cast<int>(at.size()) - 1; }
    /// A(a; v) = A(a ∘ v) literally, and chosen squares paste:
    /// top(a; v∘w) = top(a; v) ∘ top(a∘v; w).
    std::optional<std::string> check_consistency() const;
};

/// Literal equality of two families (objects, fibrations and squares).
std::optional<std::string> compare_families(const ClassifyingFamily& a, const ClassifyingFamily& b);

/// Supplies, for the n-simplex a of L, a square A(a) -> A over a: Δⁿ -> L.
using PullbackChooser = std::function<Square(int n, int a)>;
/// The canonical chooser: the pullback set Δⁿ ×_L A with keys (δ, x).
PullbackChooser canonical_chooser(const SliceObject& p);
/// A(a; v) := A(a ∘ v), squares induced by the universal property. Each
/// chosen square is checked to be cartesian (InvariantError naming the
/// simplex otherwise) and the result is re-verified.
ClassifyingFamily family_from_fibration(const SliceObject& p, const PullbackChooser& chooser);

/// The Yoneda map Δⁿ -> X of an n-simplex.
SimplicialMap yoneda(const SSetPtr& x, int n, int s, const SSetPtr& simplex);
/// N[n] ≅ Δⁿ through vertices.
SimplicialMap nerve_to_simplex(const SSetPtr& nerve_n, const SSetPtr& simplex);
/// The functor [k] -> C of a chain.
CatFunctor chain_functor(const CatPtr& c, const Chain& chain);

/// γ of a chain X: [n] -> Kan: r*_{[n]} X -> Δⁿ with change-of-index squares.
/// Throws InvariantError with a failing horn when a value is not Kan up to
/// dimension cap - 1 (check_kan = false skips this).
SSimplex gamma(const DiagramPtr& x, int cap, bool check_kan = true);
/// The simplicial-map property: γ(u^*X) equals the chosen pullback of γ(X)
/// along u, with matching squares, for every u: [m] -> [n].
std::optional<std::string> check_gamma_simplicial(const DiagramPtr& x, int cap);

/// γ_C of F: [n] × C -> Kan as a family over N([n] × C) ≅ Δⁿ × N C.
struct GammaC {
    CatPtr index;          // [n] × C
    Rectified rect;        // r*_{[n]×C} F
    ClassifyingFamily family;
};
GammaC gamma_C(const DiagramPtr& f, int cap, bool check_kan = true);
/// The family α ↦ γ(α^*F) over N([n] × C).
ClassifyingFamily gamma_after_nerve(const DiagramPtr& f, int cap);

/// (f^*A)(b) = A(f ∘ b).
ClassifyingFamily family_pullback(const SimplicialMap& f, const ClassifyingFamily& fam);

/// The total fibration: n-simplices are pairs (a, x) with x ∈ A(a)_n over
/// the top simplex of Δⁿ. Keys [a, x].
SliceObject rep_fib(const ClassifyingFamily& fam);
/// p's total space -> rep_fib(fam) for fam = family_from_fibration(p):
/// y ↦ (p y, the simplex of A(p y) over the top simplex that maps to y).
SimplicialMap simplex_to_section(const SliceObject& p, const ClassifyingFamily& fam, const SliceObject& rep);
/// The inverse direction, (a, x) ↦ to_total[a](x).
SimplicialMap section_to_simplex(const SliceObject& p, const ClassifyingFamily& fam, const SliceObject& rep);

/// For F on C: the bijection rep_fib(γ_C(F on [0] × C)) -> r*_C F read off the
/// section data.
struct Classification {
    GammaC gamma;
    SliceObject rep;
    Rectified rect;
    SimplicialMap section_to_simplex;
    std::optional<std::string> verify() const;
};
Classification classify_rectification(const DiagramPtr& f, int cap);

/// F on C viewed on [0] × C.
DiagramPtr on_point_times(const DiagramPtr& f);

// ---- the lift φ -------------------------------------------------------------

/// X_f: [1] × C -> sSet for a transformation f: X0 -> X1.
DiagramPtr mapping_diagram(const NatTrans& f);

struct LiftPhi {
    NatTrans f;
    CatFunctor at0, at1;      // C -> [1] × C at the two endpoints
    DiagramPtr xf;
    Rectified source;         // r*_C X0
    Rectified target;         // r*_{[1]×C} X_f
    SSetPtr domain;           // Δ¹ × r*_C X0
    SimplicialMap phi;        // domain -> target
    Rectified fibre1;         // r*_C X1
    SimplicialMap phi1;       // r*_C X0 -> r*_C X1
    /// φ is over Δ¹ × N C, restricts to the inclusion at vertex 0.
    std::optional<std::string> verify() const;
};
/// Closed-form lift; every output simplex is checked against the section
/// identities during construction. Throws InvariantError when f is not natural.
LiftPhi construct_lift_phi(const NatTrans& f, int cap);
/// The square φ solves: r*_C X0 at vertex 0 over Δ¹ × r*_C X0 -> N([1] × C).
/// For cross-checking with find_lift.
LiftingProblem phi_lifting_problem(const LiftPhi& phi);

}  // namespace ssr

#endif

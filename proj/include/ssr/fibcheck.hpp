#ifndef SSR_FIBCHECK_HPP
#define SSR_FIBCHECK_HPP

#include <optional>
#include <string>
#include <vector>

#include "ssr/sset.hpp"

namespace ssr {

/// A square  K --top--> X
///           |          | p
///       inclusion      v
///           L --bottom-> Y
struct LiftingProblem {
    SimplicialMap inclusion;
    SimplicialMap top;
    SimplicialMap bottom;
    SimplicialMap p;
};

/// The lexicographically least diagonal L -> X, if any. Exhaustive up to
/// the common cap. Throws InvariantError on a non-commuting square or a
/// non-injective inclusion.
std::optional<SimplicialMap> find_lift(const LiftingProblem& lp);

enum class FibKind { Left, Kan, Trivial };
std::string to_string(FibKind k);

/// A horn (k >= 0) or boundary (k == -1) problem over the n-simplex b of Y
/// with the given faces in X (entry k unused for horns).
struct FillWitness {
    int n = 0;
    int k = -1;
    int b = 0;
    std::vector<int> faces;
    std::string describe(const SSet& x, const SSet& y) const;
};

struct FibVerdict {
    bool ok = true;
    std::optional<FillWitness> witness;  // the first failing problem
    std::size_t problems = 0;            // number of problems checked
};

/// Horn fillers Λⁿ_k (0 ≤ k < n for left, 0 ≤ k ≤ n for Kan) or boundary
/// fillers (n ≥ 0) for n ≤ max_dim. Requires max_dim ≤ cap - 1 on both
/// sides; throws ResourceError naming the required cap otherwise.
FibVerdict check_fibration(const SimplicialMap& p, FibKind kind, int max_dim);
inline FibVerdict is_left_fibration(const SimplicialMap& p, int n) { return check_fibration(p, FibKind::Left, n); }
inline FibVerdict is_kan_fibration(const SimplicialMap& p, int n) { return check_fibration(p, FibKind::Kan, n); }
inline FibVerdict is_trivial_fibration(const SimplicialMap& p, int n) { return check_fibration(p, FibKind::Trivial, n); }
/// X -> Δ⁰ is a Kan fibration.
FibVerdict is_kan_complex(const SSetPtr& x, int n);

// ---- homology ---------------------------------------------------------------

/// Integral homology of the normalized chain complex.
struct HomologyReport {
    int degree = 0;                                // H_0..H_degree are exact
    std::vector<int> rank;                         // free rank per degree
    std::vector<std::vector<long long>> torsion;   // invariant factors > 1
    int pi0 = 0;

    bool is_point() const;
    bool acyclic() const;  // all groups vanish
    /// "H0=Z, H1=Z+Z/2, H2=0"
    std::string str() const;
    friend bool operator==(const HomologyReport&, const HomologyReport&) = default;
};

/// Exact H_0..H_d; uses level d + 1, so requires d ≤ cap - 1.
HomologyReport homology(const SSet& x, int d);
int pi0(const SSet& x);

/// Invariant factors (nonzero diagonal entries of the Smith normal form).
std::vector<long long> smith_invariants(std::vector<std::vector<long long>> m);

enum class WeqVerdict { Consistent, Refuted, Inconclusive };
std::string to_string(WeqVerdict v);
struct WeqReport {
    WeqVerdict verdict = WeqVerdict::Inconclusive;
    bool pi0_bijective = false;
    HomologyReport cone;  // homology of the algebraic mapping cone
    std::string reason;
};
/// π₀ and mapping-cone evidence up to degree d (requires d ≤ cap - 1).
/// Refuted is sound; consistent only means no obstruction was found.
WeqReport weq_evidence(const SimplicialMap& f, int d);

// ---- Ex -----------------------------------------------------------------------

/// sd Δⁿ, the nerve of the nonempty subsets of [n], up to cap.
SSetPtr subdivision(int n, int cap);
/// Ex X up to cap (needs X up to cap). Simplices are keyed by the images of
/// the nondegenerate simplices of sd Δⁿ.
struct ExResult {
    SSetPtr ex;
    SimplicialMap unit;  // X -> Ex X
};
ExResult ex(const SSetPtr& x, int cap);
/// X -> Exᵏ X, the composite of units.
ExResult ex_iterate(const SSetPtr& x, int k, int cap);

}  // namespace ssr

#endif

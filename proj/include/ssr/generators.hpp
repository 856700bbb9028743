#ifndef SSR_GENERATORS_HPP
#define SSR_GENERATORS_HPP

#include <random>
#include <string>
#include <vector>

#include "ssr/category.hpp"
#include "ssr/diagram.hpp"
#include "ssr/rectify.hpp"

/// Seeded instance generators shared by the tests, the suite and the
/// acceptance binary.
namespace ssr::gen {

using Rng = std::mt19937_64;

/// A random poset on 1..max_objects objects.
CatPtr random_index(Rng& rng, int max_objects = 3);

/// Subcomplexes of Δ¹ as bit masks: 1 = vertex 0, 2 = vertex 1, 4 = the edge.
/// Valid masks are 0, 1, 2, 3 and 7.
SSetPtr interval_piece(int mask, int cap);
/// A diagram on a poset whose value at c is interval_piece(mask[c]), or Δ⁰
/// when collapsed[c]. Masks must grow along the order and the collapsed set
/// must be up-closed.
DiagramPtr interval_diagram(const CatPtr& poset, const std::vector<int>& mask, const std::vector<char>& collapsed, int cap);
/// A random interval diagram (values with at most 3 nondegenerate simplices).
DiagramPtr random_interval_diagram(Rng& rng, const CatPtr& poset, int cap, bool allow_collapse = true);

/// N of a thin groupoid or discrete category on k objects.
SSetPtr discrete_set(int k, int cap);
SSetPtr codiscrete_nerve(int k, int cap);
/// The map induced by a function on objects between such nerves.
SimplicialMap object_function(const SSetPtr& x, const SSetPtr& y, const std::vector<int>& f);

/// Kan-valued diagrams on a poset: F(c) = (discrete or codiscrete nerve)
/// on the classes of a partition of {0..g-1} that coarsens along the order.
struct QuotientData {
    std::vector<std::vector<int>> cls;  // cls[c][x] class of x at c, classes numbered 0..
    std::vector<char> codiscrete;       // up-closed
};
DiagramPtr quotient_diagram(const CatPtr& poset, const QuotientData& q, int cap);
QuotientData random_quotients(Rng& rng, const CatPtr& poset, int g);
/// A coarsening of q objectwise, compatible with the order.
QuotientData random_coarsening(Rng& rng, const CatPtr& poset, const QuotientData& q);
/// The quotient transformation between the diagrams of q and a coarsening.
NatTrans quotient_map(const DiagramPtr& f, const QuotientData& q, const DiagramPtr& g, const QuotientData& coarse);

/// A random Kan-valued diagram (at most 3 generators per value).
DiagramPtr random_kan_diagram(Rng& rng, const CatPtr& poset, int cap);

/// F ⊆ G objectwise with the inclusion transformation.
struct Injection {
    DiagramPtr source;
    DiagramPtr target;
    NatTrans map;
};
Injection random_injection(Rng& rng, const CatPtr& poset, int cap);

/// The subobject of `base` generated by a few random simplices of dimension
/// at most maxdim, with its inclusion as projection.
SliceObject random_subobject(Rng& rng, const SSetPtr& base, int maxdim, int count);
/// The subobject generated by the given (level, index) simplices.
SliceObject generated_subobject(const SSetPtr& base, const std::vector<std::pair<int, int>>& gens);

/// Weakly constant Kan-valued fixtures on [1], [2] and the span, followed by
/// one control that is not weakly constant.
struct Fixture {
    std::string name;
    DiagramPtr diagram;
    bool weakly_constant = true;
};
std::vector<Fixture> kan_fixtures(int cap);

/// A random small category with 1..max_objects objects: a poset, Z/2, Z/3,
/// a codiscrete groupoid or a discrete category.
CatPtr random_category(Rng& rng, int max_objects = 2);
/// A random diagram on any finite category. Posets get interval or Kan
/// quotient diagrams; other categories get constant diagrams or a swap
/// action on two points through a homomorphism to Z/2.
DiagramPtr random_diagram(Rng& rng, const CatPtr& c, int cap);
bool is_poset(const FinCategory& c);

/// A functor [1] -> C picking a random chain c -> c' (possibly an identity).
CatFunctor random_arrow(Rng& rng, const CatPtr& c);
/// Every functor C -> D (small C only), and a uniformly random one.
std::vector<CatFunctor> all_functors(const CatPtr& c, const CatPtr& d);
CatFunctor random_functor(Rng& rng, const CatPtr& c, const CatPtr& d);

}  // namespace ssr::gen

#endif

#ifndef SSR_INSTANCE_HPP
#define SSR_INSTANCE_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssr/category.hpp"
#include "ssr/diagram.hpp"
#include "ssr/sset.hpp"

namespace ssr {

/// A parsed instance file. Every section is optional except that the
/// commands need at least one of diagram, sset or map.
///
///   "category": {"objects": [...], "morphisms": [{"name", "src", "tgt"}],
///                "composition": [["g", "f", "g∘f"], ...]}
///   "diagram":  {"values": {obj: simplices | other obj}, "maps": {mor: images | "identity"}}
///   "cap":      integer
///   "functor":  {"target": category, "objects": {..}, "morphisms": {..}, "diagram": diagram on target}
///   "nat_trans": {"target": diagram, "components": {obj: images | "identity"}}
///   "sset":     simplices
///   "map":      {"source": simplices, "target": simplices, "images": images}
///
/// simplices: [{"name", "dim", "faces": [ref, ...]}] or {"preset": "simplex|boundary|horn|point", "n", "k"}.
/// ref: a simplex name, or {"of": name, "surj": [..]} for a degenerate simplex.
/// images: {name: ref} over the nondegenerate simplices of the source.
struct Instance {
    int cap = 3;
    CatPtr cat;
    DiagramPtr diagram;
    std::optional<CatFunctor> functor;
    DiagramPtr functor_diagram;  // on the functor's target
    std::optional<NatTrans> nat_trans;
    SSetPtr sset;
    std::optional<SimplicialMap> map;
};

/// Throws ParseError on malformed JSON, missing fields and unknown names;
/// InvariantError when the data violate a law. `cap` overrides the file.
Instance parse_instance(const std::string& text, std::optional<int> cap = std::nullopt);
Instance load_instance(const std::string& path, std::optional<int> cap = std::nullopt);

nlohmann::json category_json(const FinCategory& c);
/// Nondegenerate simplices with faces in normal form; names are k<key>.
nlohmann::json sset_json(const SSet& x);
/// Images of the nondegenerate simplices.
nlohmann::json map_json(const SimplicialMap& f);
/// An instance document for a diagram; parses back to an isomorphic diagram.
nlohmann::json diagram_instance_json(const DiagramPtr& f);

/// The generator name used by sset_json for a simplex.
std::string simplex_name(const SSet& x, int n, int s);

}  // namespace ssr

#endif

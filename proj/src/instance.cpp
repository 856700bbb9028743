#include "ssr/instance.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ssr/error.hpp"

namespace ssr {

using nlohmann::json;

namespace {

std::size_t Z(int x) { return static_cast<std::size_t>(x); }

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }

const json& field(const json& j, const char* name, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
    auto it = j.find(name);
    if (it == j.end()) bad(where, std::string("missing \"") + name + "\"");
    return *it;
}

std::string str(const json& j, const std::string& where) {
    if (!j.is_string()) bad(where, "expected a string, got " + j.dump());
    return j.get<std::string>();
}

int integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) bad(where, "expected an integer, got " + j.dump());
    return j.get<int>();
}

// ---- categories ---------------------------------------------------------------

CatPtr parse_preset_category(const json& j, const std::string& where) {
    auto p = str(field(j, "preset", where), where + ".preset");
    auto num = [&](const char* k) { return integer(field(j, k, where), where + "." + k); };
    if (p == "terminal") return terminal_category();
    if (p == "linear_order") return linear_order(num("n"));
    if (p == "span") return span_category();
    if (p == "cospan") return cospan_category();
    if (p == "discrete") return discrete_category(num("k"));
    if (p == "cyclic") return cyclic_group(num("k"));
    if (p == "codiscrete") return codiscrete_groupoid(num("k"));
    if (p == "sigma") return sigma_category(num("n"));
    bad(where, "unknown category preset \"" + p + "\"");
}

CatPtr parse_category(const json& j, const std::string& where) {
    if (j.contains("preset")) return parse_preset_category(j, where);
    std::vector<std::string> objects;
    for (const auto& o : field(j, "objects", where)) objects.push_back(str(o, where + ".objects"));
    if (objects.empty()) bad(where, "no objects");
    std::string name = j.contains("name") ? str(j["name"], where + ".name") : "C";
    auto obj_of = [&](const json& x, const std::string& w) {
        auto s = str(x, w);
        for (std::size_t o = 0; o < objects.size(); ++o) {
            if (objects[o] == s) return static_cast<int>(o);
        }
        bad(w, "unknown object \"" + s + "\"");
    };
    for (std::size_t a = 0; a < objects.size(); ++a) {
        for (std::size_t b = 0; b < a; ++b) {
            if (objects[a] == objects[b]) bad(where, "duplicate object \"" + objects[a] + "\"");
        }
    }
    if (j.contains("relations")) {
        // a poset given by generating relations a <= b
        const int O = static_cast<int>(objects.size());
        std::vector<std::vector<char>> leq(Z(O), std::vector<char>(Z(O), 0));
        for (int o = 0; o < O; ++o) leq[Z(o)][Z(o)] = 1;
        for (const auto& r : j["relations"]) {
            if (!r.is_array() || r.size() != 2) bad(where + ".relations", "expected [a, b], got " + r.dump());
            leq[Z(obj_of(r[0], where + ".relations"))][Z(obj_of(r[1], where + ".relations"))] = 1;
        }
        for (int k = 0; k < O; ++k) {
            for (int a = 0; a < O; ++a) {
                for (int b = 0; b < O; ++b) {
                    if (leq[Z(a)][Z(k)] && leq[Z(k)][Z(b)]) leq[Z(a)][Z(b)] = 1;
                }
            }
        }
        return poset(name, objects, [leq](int a, int b) { return leq[Z(a)][Z(b)] != 0; });
    }
    std::vector<Morphism> nonid;
    std::map<std::string, int> mor_index;
    for (std::size_t o = 0; o < objects.size(); ++o) mor_index["id_" + objects[o]] = static_cast<int>(o);
    if (j.contains("morphisms")) {
        for (const auto& m : j["morphisms"]) {
            std::string w = where + ".morphisms";
            Morphism mm{str(field(m, "name", w), w + ".name"), obj_of(field(m, "src", w), w + ".src"),
                        obj_of(field(m, "tgt", w), w + ".tgt")};
            if (!mor_index.emplace(mm.name, static_cast<int>(objects.size() + nonid.size())).second) {
                bad(w, "duplicate morphism \"" + mm.name + "\"");
            }
            nonid.push_back(mm);
        }
    }
    std::vector<std::array<int, 3>> triples;
    if (j.contains("composition")) {
        for (const auto& t : j["composition"]) {
            std::string w = where + ".composition";
            if (!t.is_array() || t.size() != 3) bad(w, "expected [g, f, g∘f], got " + t.dump());
            std::array<int, 3> tri{};
            for (std::size_t i = 0; i < 3; ++i) {
                auto n = str(t[i], w);
                auto it = mor_index.find(n);
                if (it == mor_index.end()) bad(w, "unknown morphism \"" + n + "\" in " + t.dump());
                tri[i] = it->second;
            }
            triples.push_back(tri);
        }
    }
    return FinCategory::from_triples(name, objects, nonid, triples);
}

int object_named(const FinCategory& c, const std::string& n, const std::string& where) {
    auto o = c.find_object(n);
    if (!o) bad(where, "unknown object \"" + n + "\" of " + c.name());
    return *o;
}

int morphism_named(const FinCategory& c, const std::string& n, const std::string& where) {
    auto m = c.find_morphism(n);
    if (!m) bad(where, "unknown morphism \"" + n + "\" of " + c.name());
    return *m;
}

// ---- simplicial sets ------------------------------------------------------------

struct ParsedSet {
    SSetPtr x;
    std::vector<Generator> gens;
    std::map<std::string, int> index;  // generator by name
};

std::vector<std::string> simplex_names(const SSet& x);

// Presents a finite-up-to-cap simplicial set by its nondegenerate simplices.
std::vector<Generator> generators_of(const SSet& x, const std::vector<std::string>& names) {
    std::map<std::pair<int, int>, int> gen;
    std::vector<Generator> out;
    for (int n = 0; n <= x.cap(); ++n) {
        for (int s : x.nondegenerate_at(n)) {
            gen[{n, s}] = static_cast<int>(out.size());
            Generator g{names[out.size()], n, {}};
            if (n > 0) {
                for (int i = 0; i <= n; ++i) {
                    auto nf = x.normalize(n - 1, x.face(n, i, s));
                    g.faces.push_back({gen.at({nf.level, nf.index}), nf.surj});
                }
            }
            out.push_back(std::move(g));
        }
    }
    return out;
}

ParsedSet from_gens(std::string name, int cap, std::vector<Generator> gens, const std::string& where) {
    ParsedSet p;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        if (!p.index.emplace(gens[g].name, static_cast<int>(g)).second) {
            bad(where, "duplicate simplex \"" + gens[g].name + "\"");
        }
    }
    p.x = from_generators(std::move(name), cap, gens);
    p.gens = std::move(gens);
    return p;
}

ParsedSet parse_preset_sset(const json& j, int cap, const std::string& where) {
    auto p = str(field(j, "preset", where), where + ".preset");
    auto num = [&](const char* k) { return integer(field(j, k, where), where + "." + k); };
    SSetPtr x;
    if (p == "point") {
        x = point(cap);
    } else if (p == "simplex") {
        x = standard_simplex(num("n"), cap);
    } else if (p == "boundary") {
        x = boundary(num("n"), cap);
    } else if (p == "horn") {
        x = horn(num("n"), num("k"), cap);
    } else {
        bad(where, "unknown simplicial set preset \"" + p + "\"");
    }
    return from_gens(x->name(), cap, generators_of(*x, simplex_names(*x)), where);
}

// A reference to an n-simplex: a generator and a surjection onto its dimension.
std::pair<int, DeltaMap> resolve(const ParsedSet& p, const json& ref, int n, const std::string& where) {
    std::string nm;
    std::optional<DeltaMap> surj;
    if (ref.is_string()) {
        nm = ref.get<std::string>();
    } else if (ref.is_object()) {
        nm = str(field(ref, "of", where), where + ".of");
        if (ref.contains("surj")) {
            std::vector<int> v;
            for (const auto& e : ref["surj"]) v.push_back(integer(e, where + ".surj"));
            surj = std::make_optional<DeltaMap>();
            auto it = p.index.find(nm);
            if (it == p.index.end()) bad(where, "unknown simplex \"" + nm + "\"");
            try {
                *surj = DeltaMap(p.gens[Z(it->second)].dim, v);
            } catch (const InvariantError& e) {
                bad(where, e.what());
            }
        }
    } else {
        bad(where, "expected a simplex name or {\"of\", \"surj\"}, got " + ref.dump());
    }
    auto it = p.index.find(nm);
    if (it == p.index.end()) bad(where, "unknown simplex \"" + nm + "\"");
    int d = p.gens[Z(it->second)].dim;
    if (!surj) {
        if (d != n) {
            bad(where, "\"" + nm + "\" has dimension " + std::to_string(d) + ", expected " + std::to_string(n) +
                           " (give {\"of\", \"surj\"} for a degenerate simplex)");
        }
        surj = DeltaMap::identity(n);
    }
    if (surj->dom() != n || !surj->surjective()) {
        bad(where, "degeneracy " + surj->str() + " of \"" + nm + "\" is not a surjection [" + std::to_string(n) + "] -> [" +
                       std::to_string(d) + "]");
    }
    return {it->second, *surj};
}

ParsedSet parse_sset(const json& j, const std::string& name, int cap, const std::string& where) {
    if (j.is_object()) return parse_preset_sset(j, cap, where);
    if (!j.is_array()) bad(where, "expected a list of simplices or a preset");
    // names first, so faces may refer to any earlier-declared simplex
    ParsedSet shell;
    for (const auto& s : j) {
        Generator g{str(field(s, "name", where), where + ".name"), integer(field(s, "dim", where), where + ".dim"), {}};
        if (g.dim < 0) bad(where, "\"" + g.name + "\" has negative dimension");
        if (!shell.index.emplace(g.name, static_cast<int>(shell.gens.size())).second) {
            bad(where, "duplicate simplex \"" + g.name + "\"");
        }
        shell.gens.push_back(std::move(g));
    }
    std::size_t k = 0;
    for (const auto& s : j) {
        auto& g = shell.gens[k++];
        std::string w = where + "." + g.name;
        if (g.dim == 0) {
            if (s.contains("faces") && !s["faces"].empty()) bad(w, "a vertex has no faces");
            continue;
        }
        const auto& faces = field(s, "faces", w);
        if (!faces.is_array() || static_cast<int>(faces.size()) != g.dim + 1) {
            bad(w, "needs " + std::to_string(g.dim + 1) + " faces");
        }
        for (const auto& f : faces) {
            auto [gen, surj] = resolve(shell, f, g.dim - 1, w + ".faces");
            g.faces.push_back({gen, surj});
        }
    }
    return from_gens(name, cap, std::move(shell.gens), where);
}

int simplex_index(const ParsedSet& p, int gen, const DeltaMap& surj) {
    Key k{gen};
    k.insert(k.end(), surj.values().begin(), surj.values().end());
    return p.x->index_of(surj.dom(), k);
}

SimplicialMap parse_map(const ParsedSet& src, const ParsedSet& tgt, const json& j, const std::string& where) {
    bool identity = j.is_string() && j.get<std::string>() == "identity";
    if (!identity && !j.is_object()) bad(where, "expected images or \"identity\"");
    std::vector<std::vector<int>> images(Z(src.x->cap()) + 1);
    for (int n = 0; n <= src.x->cap(); ++n) {
        for (int s : src.x->nondegenerate_at(n)) {
            const auto& g = src.gens[Z(src.x->key(n, s)[0])];
            json ref = g.name;
            if (!identity) {
                if (!j.contains(g.name)) bad(where, "no image for \"" + g.name + "\"");
                ref = j[g.name];
            }
            auto [gen, surj] = resolve(tgt, ref, n, where + "." + g.name);
            images[Z(n)].push_back(simplex_index(tgt, gen, surj));
        }
    }
    if (!identity) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!src.index.count(it.key())) bad(where, "unknown simplex \"" + it.key() + "\"");
        }
    }
    auto f = SimplicialMap::from_nondegenerate(src.x, tgt.x, images);
    if (auto e = f.check()) throw InvariantError(where + ": not a simplicial map: " + *e);
    return f;
}

struct ParsedDiagram {
    DiagramPtr diagram;
    std::vector<const ParsedSet*> at;
    std::vector<std::unique_ptr<ParsedSet>> owned;
};

std::unique_ptr<ParsedDiagram> parse_diagram(const CatPtr& cat, const json& j, int cap, const std::string& where) {
    auto out = std::make_unique<ParsedDiagram>();
    const auto& C = *cat;
    const auto& values = field(j, "values", where);
    if (!values.is_object()) bad(where + ".values", "expected an object keyed by object names");
    for (auto it = values.begin(); it != values.end(); ++it) object_named(C, it.key(), where + ".values");
    out->at.assign(Z(C.num_objects()), nullptr);
    std::vector<std::string> alias(Z(C.num_objects()));
    for (int c = 0; c < C.num_objects(); ++c) {
        const auto& n = C.object_name(c);
        if (!values.contains(n)) bad(where + ".values", "no value for object \"" + n + "\"");
        const auto& v = values[n];
        if (v.is_string()) {
            alias[Z(c)] = v.get<std::string>();
            continue;
        }
        out->owned.push_back(std::make_unique<ParsedSet>(parse_sset(v, n, cap, where + ".values." + n)));
        out->at[Z(c)] = out->owned.back().get();
    }
    for (int c = 0; c < C.num_objects(); ++c) {
        if (alias[Z(c)].empty()) continue;
        int o = object_named(C, alias[Z(c)], where + ".values." + C.object_name(c));
        if (!out->at[Z(o)]) bad(where + ".values." + C.object_name(c), "alias of an alias");
        out->at[Z(c)] = out->at[Z(o)];
    }
    json maps = j.contains("maps") ? j["maps"] : json::object();
    if (!maps.is_object()) bad(where + ".maps", "expected an object keyed by morphism names");
    for (auto it = maps.begin(); it != maps.end(); ++it) morphism_named(C, it.key(), where + ".maps");
    std::vector<std::optional<SimplicialMap>> along(Z(C.num_morphisms()));
    for (int m = 0; m < C.num_morphisms(); ++m) {
        const auto& mm = C.morphism(m);
        const auto* s = out->at[Z(mm.src)];
        const auto* t = out->at[Z(mm.tgt)];
        if (C.is_identity(m)) {
            along[Z(m)] = SimplicialMap::identity(s->x);
        } else if (maps.contains(mm.name)) {
            along[Z(m)] = parse_map(*s, *t, maps[mm.name], where + ".maps." + mm.name);
        }
    }
    // missing maps: composites of given ones, then identities between shared values
    for (bool changed = true; changed;) {
        changed = false;
        for (int m = 0; m < C.num_morphisms(); ++m) {
            if (along[Z(m)]) continue;
            for (int g = 0; g < C.num_morphisms() && !along[Z(m)]; ++g) {
                for (int f = 0; f < C.num_morphisms(); ++f) {
                    if (C.is_identity(g) || C.is_identity(f) || C.tgt(f) != C.src(g) || !along[Z(g)] || !along[Z(f)]) continue;
                    if (C.compose(g, f) != m) continue;
                    along[Z(m)] = along[Z(f)]->then(*along[Z(g)]);
                    changed = true;
                    break;
                }
            }
        }
    }
    std::vector<SimplicialMap> maps_out;
    std::vector<SSetPtr> sets;
    for (int c = 0; c < C.num_objects(); ++c) sets.push_back(out->at[Z(c)]->x);
    for (int m = 0; m < C.num_morphisms(); ++m) {
        if (!along[Z(m)]) {
            if (out->at[Z(C.src(m))] != out->at[Z(C.tgt(m))]) bad(where + ".maps", "no map for morphism \"" + C.morphism(m).name + "\"");
            along[Z(m)] = SimplicialMap::identity(sets[Z(C.src(m))]);
        }
        maps_out.push_back(*along[Z(m)]);
    }
    out->diagram = make_diagram(cat, sets, maps_out);
    return out;
}

CatFunctor parse_functor(const CatPtr& src, const CatPtr& tgt, const json& j, const std::string& where) {
    CatFunctor F{src, tgt, {}, {}};
    const auto& objs = field(j, "objects", where);
    for (int c = 0; c < src->num_objects(); ++c) {
        const auto& n = src->object_name(c);
        if (!objs.contains(n)) bad(where + ".objects", "no image for object \"" + n + "\"");
        F.obj.push_back(object_named(*tgt, str(objs[n], where + ".objects." + n), where + ".objects." + n));
    }
    json mors = j.contains("morphisms") ? j["morphisms"] : json::object();
    for (int m = 0; m < src->num_morphisms(); ++m) {
        const auto& mm = src->morphism(m);
        int a = F.obj[Z(mm.src)];
        int b = F.obj[Z(mm.tgt)];
        if (src->is_identity(m)) {
            F.mor.push_back(tgt->id(a));
        } else if (mors.contains(mm.name)) {
            F.mor.push_back(morphism_named(*tgt, str(mors[mm.name], where + ".morphisms"), where + ".morphisms." + mm.name));
        } else if (tgt->hom(a, b).size() == 1) {
            F.mor.push_back(tgt->hom(a, b)[0]);
        } else {
            bad(where + ".morphisms", "no image for morphism \"" + mm.name + "\"");
        }
    }
    if (auto e = F.check()) throw InvariantError(where + ": not a functor: " + *e);
    return F;
}

std::vector<std::string> simplex_names(const SSet& x) {
    std::vector<std::string> names;
    std::set<std::string> seen;
    bool unique = true;
    for (int n = 0; n <= x.cap(); ++n) {
        for (int s : x.nondegenerate_at(n)) {
            names.push_back(simplex_name(x, n, s));
            unique = unique && seen.insert(names.back()).second;
        }
    }
    if (unique) return names;
    names.clear();
    for (int n = 0; n <= x.cap(); ++n) {
        for (int s : x.nondegenerate_at(n)) names.push_back("s" + std::to_string(n) + "_" + std::to_string(s));
    }
    return names;
}

json ref_json(const SSet& x, const std::vector<std::string>& names, const std::map<std::pair<int, int>, int>& gen, int n, int s) {
    auto nf = x.normalize(n, s);
    const auto& nm = names[Z(gen.at({nf.level, nf.index}))];
    if (nf.level == n) return nm;
    return json{{"of", nm}, {"surj", nf.surj.values()}};
}

std::map<std::pair<int, int>, int> generator_positions(const SSet& x) {
    std::map<std::pair<int, int>, int> gen;
    for (int n = 0; n <= x.cap(); ++n) {
        for (int s : x.nondegenerate_at(n)) gen.emplace(std::make_pair(n, s), static_cast<int>(gen.size()));
    }
    return gen;
}

}  // namespace

std::string simplex_name(const SSet& x, int n, int s) {
    const auto& k = x.key(n, s);
    bool digits = true;
    for (int v : k) digits = digits && v >= 0 && v <= 9;
    std::string out;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (!digits && i > 0) out += "_";
        out += std::to_string(k[i]);
    }
    return out;
}

Instance parse_instance(const std::string& text, std::optional<int> cap) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("instance: ") + e.what());
    }
    if (!doc.is_object()) bad("instance", "expected a JSON object");
    try {
        Instance inst;
        if (doc.contains("cap")) inst.cap = integer(doc["cap"], "cap");
        if (cap) inst.cap = *cap;
        if (inst.cap < 0) bad("cap", "must be nonnegative");
        if (doc.contains("category")) inst.cat = parse_category(doc["category"], "category");
        std::unique_ptr<ParsedDiagram> diag;
        if (doc.contains("diagram")) {
            if (!inst.cat) bad("diagram", "needs a \"category\" section");
            diag = parse_diagram(inst.cat, doc["diagram"], inst.cap, "diagram");
            inst.diagram = diag->diagram;
        }
        if (doc.contains("functor")) {
            if (!inst.cat) bad("functor", "needs a \"category\" section");
            const auto& j = doc["functor"];
            auto tgt = parse_category(field(j, "target", "functor"), "functor.target");
            inst.functor = parse_functor(inst.cat, tgt, j, "functor");
            if (j.contains("diagram")) inst.functor_diagram = parse_diagram(tgt, j["diagram"], inst.cap, "functor.diagram")->diagram;
        }
        if (doc.contains("nat_trans")) {
            if (!diag) bad("nat_trans", "needs a \"diagram\" section");
            const auto& j = doc["nat_trans"];
            auto tgt = parse_diagram(inst.cat, field(j, "target", "nat_trans"), inst.cap, "nat_trans.target");
            const auto& comps = field(j, "components", "nat_trans");
            NatTrans f{inst.diagram, tgt->diagram, {}};
            for (int c = 0; c < inst.cat->num_objects(); ++c) {
                const auto& n = inst.cat->object_name(c);
                if (!comps.contains(n)) bad("nat_trans.components", "no component at \"" + n + "\"");
                f.comp.push_back(parse_map(*diag->at[Z(c)], *tgt->at[Z(c)], comps[n], "nat_trans.components." + n));
            }
            if (auto e = f.check()) throw InvariantError("nat_trans: f is not natural: " + *e);
            inst.nat_trans = f;
        }
        if (doc.contains("sset")) inst.sset = parse_sset(doc["sset"], "X", inst.cap, "sset").x;
        if (doc.contains("map")) {
            const auto& j = doc["map"];
            auto s = parse_sset(field(j, "source", "map"), "X", inst.cap, "map.source");
            auto t = parse_sset(field(j, "target", "map"), "Y", inst.cap, "map.target");
            inst.map = parse_map(s, t, field(j, "images", "map"), "map.images");
        }
        if (!inst.diagram && !inst.sset && !inst.map) bad("instance", "needs a \"diagram\", \"sset\" or \"map\" section");
        return inst;
    } catch (const json::exception& e) {
        throw ParseError(std::string("instance: ") + e.what());
    }
}

Instance load_instance(const std::string& path, std::optional<int> cap) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str(), cap);
}

json category_json(const FinCategory& c) {
    json objects = json::array();
    for (int o = 0; o < c.num_objects(); ++o) objects.push_back(c.object_name(o));
    json mors = json::array();
    json comp = json::array();
    for (int m = 0; m < c.num_morphisms(); ++m) {
        if (c.is_identity(m)) continue;
        mors.push_back({{"name", c.morphism(m).name}, {"src", c.object_name(c.src(m))}, {"tgt", c.object_name(c.tgt(m))}});
        for (int g = 0; g < c.num_morphisms(); ++g) {
            if (c.is_identity(g) || c.src(g) != c.tgt(m)) continue;
            comp.push_back({c.morphism(g).name, c.morphism(m).name, c.morphism(c.compose(g, m)).name});
        }
    }
    return {{"name", c.name()}, {"objects", objects}, {"morphisms", mors}, {"composition", comp}};
}

json sset_json(const SSet& x) {
    auto names = simplex_names(x);
    auto gen = generator_positions(x);
    json out = json::array();
    for (const auto& [ns, g] : gen) {
        (void)g;
        auto [n, s] = ns;
        json e{{"name", names[Z(gen.at(ns))]}, {"dim", n}};
        if (n > 0) {
            json faces = json::array();
            for (int i = 0; i <= n; ++i) faces.push_back(ref_json(x, names, gen, n - 1, x.face(n, i, s)));
            e["faces"] = faces;
        }
        out.push_back(e);
    }
    return out;
}

json map_json(const SimplicialMap& f) {
    const auto& x = *f.source();
    const auto& y = *f.target();
    auto xn = simplex_names(x);
    auto yn = simplex_names(y);
    auto xg = generator_positions(x);
    auto yg = generator_positions(y);
    json out = json::object();
    for (const auto& [ns, g] : xg) out[xn[Z(g)]] = ref_json(y, yn, yg, ns.first, f(ns.first, ns.second));
    return out;
}

json diagram_instance_json(const DiagramPtr& f) {
    const auto& C = *f->cat;
    json values = json::object();
    for (int c = 0; c < C.num_objects(); ++c) {
        std::optional<int> same;
        for (int o = 0; o < c && !same; ++o) {
            if (f->at[Z(o)] == f->at[Z(c)]) same = o;
        }
        values[C.object_name(c)] = same ? json(C.object_name(*same)) : sset_json(f->value(c));
    }
    json maps = json::object();
    for (int m = 0; m < C.num_morphisms(); ++m) {
        if (!C.is_identity(m)) maps[C.morphism(m).name] = map_json(f->along[Z(m)]);
    }
    return {{"cap", f->cap()}, {"category", category_json(C)}, {"diagram", {{"values", values}, {"maps", maps}}}};
}

}  // namespace ssr

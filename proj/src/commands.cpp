#include "ssr/commands.hpp"

#include <chrono>
#include <sstream>

#include "ssr/classify.hpp"
#include "ssr/error.hpp"
#include "ssr/fibcheck.hpp"
#include "ssr/hoalg.hpp"
#include "ssr/rectify.hpp"

namespace ssr {

using nlohmann::json;

namespace {

std::size_t Z(int x) { return static_cast<std::size_t>(x); }

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string key_text(const Key& k) {
    std::string s = "(";
    for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
    return s + ")";
}

Check verdict(std::string name, const std::optional<std::string>& failure, std::string detail = "") {
    Check c{std::move(name), !failure, failure.value_or(""), std::move(detail), ""};
    return c;
}

const DiagramPtr& need_diagram(const Instance& inst, const char* cmd) {
    if (!inst.diagram) throw ParseError(std::string(cmd) + ": the instance has no \"diagram\" section");
    return inst.diagram;
}

// Level tables of a simplicial set over a base: keys, faces, projection.
void dump_slice(Report& r, const SliceObject& s) {
    const auto& x = *s.total;
    const auto& b = *s.base();
    json levels = json::array();
    for (int n = 0; n <= x.cap(); ++n) {
        r.lines.push_back("level " + std::to_string(n) + ": " + std::to_string(x.size(n)) + " simplices");
        json level = json::array();
        for (int i = 0; i < x.size(n); ++i) {
            std::vector<int> faces;
            for (int k = 0; n > 0 && k <= n; ++k) faces.push_back(x.face(n, k, i));
            const auto& over = b.key(n, s.proj(n, i));
            std::string line = "  " + std::to_string(i) + " " + key_text(x.key(n, i));
            if (n > 0) line += " faces " + key_text(faces);
            line += " over " + key_text(over);
            if (!x.nondegenerate(n, i)) line += " degenerate";
            r.lines.push_back(line);
            level.push_back({{"key", x.key(n, i)}, {"faces", faces}, {"over", over}, {"nondegenerate", x.nondegenerate(n, i)}});
        }
        levels.push_back(level);
    }
    r.data["levels"] = levels;
}

std::optional<std::string> presentation_failure(const Presentation& p, const Rectified& m) {
    if (auto e = check_presheaf_laws(*p.slice.total)) return e;
    if (auto e = p.to_minimal.check()) return "to minimal: " + *e;
    if (auto e = p.from_minimal.check()) return "from minimal: " + *e;
    if (!p.to_minimal.bijective()) return std::string("comparison is not bijective");
    if (!(p.from_minimal.then(p.to_minimal) == SimplicialMap::identity(m.total()))) return std::string("comparisons are not inverse");
    if (!(p.to_minimal.then(m.slice.proj) == p.slice.proj)) return std::string("comparison is not over N C");
    return std::nullopt;
}

FibKind parse_kind(const std::string& k) {
    if (k == "left") return FibKind::Left;
    if (k == "kan") return FibKind::Kan;
    if (k == "trivial") return FibKind::Trivial;
    throw ParseError("unknown fibration kind \"" + k + "\"");
}

std::string yes(bool b) { return b ? "yes" : "no"; }

}  // namespace

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return 2;
    if (dynamic_cast<const InvariantError*>(&e)) return 3;
    if (dynamic_cast<const ResourceError*>(&e)) return 4;
    return 3;
}

Report cmd_rectify(const Instance& inst, const CommandOptions& opt) {
    auto start = Clock::now();
    const auto& F = need_diagram(inst, "rectify");
    Report r;
    r.command = opt.echo;
    r.trusted = "levels 0.." + std::to_string(inst.cap);
    auto m = rectify(F, inst.cap);
    std::optional<Presentation> sig, lam;
    const SliceObject* shown = &m.slice;
    if (opt.presentation == "sigma") {
        sig = rectify_sigma(m);
        shown = &sig->slice;
    } else if (opt.presentation == "lambda") {
        lam = rectify_lambda(m);
        shown = &lam->slice;
    } else if (opt.presentation != "full") {
        throw ParseError("unknown presentation \"" + opt.presentation + "\"");
    }
    r.lines.push_back("presentation: " + opt.presentation + " over N " + F->cat->name());
    dump_slice(r, *shown);
    r.lines.push_back("projection to N C bijective: " + yes(shown->proj.bijective()));
    r.data["presentation"] = opt.presentation;
    r.data["projection_bijective"] = shown->proj.bijective();
    r.checks.push_back(verdict("matching", check_matching(m)));
    r.checks.push_back(verdict("presheaf-laws", check_presheaf_laws(*shown->total)));
    r.checks.push_back(verdict("projection-simplicial", shown->proj.check()));
    if (F->cat->num_objects() == 1 && F->cat->num_morphisms() == 1) {
        // over the terminal category r*F is the value itself
        auto last = SimplicialMap::from_fn(m.total(), F->at[0], [&](int n, int s) { return m.decode(n, s).z.back(); });
        std::optional<std::string> e = last.check();
        if (!e && !last.bijective()) e = "r*F -> F(*) is not bijective";
        r.checks.push_back(verdict("terminal-index", e, "r*F = F(*)"));
    }
    if (opt.verify) {
        if (!sig) sig = rectify_sigma(m);
        if (!lam) lam = rectify_lambda(m);
        r.checks.push_back(verdict("sigma-presentation", presentation_failure(*sig, m), "bijection over N C"));
        r.checks.push_back(verdict("lambda-presentation", presentation_failure(*lam, m), "bijection over N C"));
    }
    r.seconds = since(start);
    return r;
}

Report cmd_check_fib(const Instance& inst, const CommandOptions& opt) {
    auto start = Clock::now();
    Report r;
    r.command = opt.echo;
    auto kind = parse_kind(opt.kind);
    SimplicialMap p;
    std::string what;
    std::optional<Rectified> rect;
    if (inst.map) {
        p = *inst.map;
        what = "the given map";
    } else if (inst.diagram) {
        rect = rectify(inst.diagram, inst.cap);
        p = rect->slice.proj;
        what = "r*F -> N " + inst.diagram->cat->name();
    } else {
        auto pt = point(inst.sset->cap());
        p = SimplicialMap::from_fn(inst.sset, pt, [](int, int) { return 0; });
        what = "X -> point";
    }
    int d = opt.max_dim.value_or(std::min(p.source()->cap(), p.target()->cap()) - 1);
    r.trusted = "horns and boundaries up to dimension " + std::to_string(d) + ", cap " + std::to_string(inst.cap);
    auto v = check_fibration(p, kind, d);
    Check c{to_string(kind) + "-fibration", v.ok, "", what + ", " + std::to_string(v.problems) + " lifting problems", ""};
    if (v.witness) c.witness = v.witness->describe(*p.source(), *p.target());
    r.checks.push_back(c);
    r.data["problems"] = v.problems;
    r.data["max_dim"] = d;
    r.seconds = since(start);
    return r;
}

Report cmd_holim(const Instance& inst, const CommandOptions& opt) {
    auto start = Clock::now();
    const auto& F = need_diagram(inst, "holim");
    Report r;
    r.command = opt.echo;
    r.trusted = "levels 0.." + std::to_string(inst.cap);
    auto h = holim(F, inst.cap);
    json sizes = json::array();
    for (int n = 0; n <= inst.cap; ++n) {
        r.lines.push_back("level " + std::to_string(n) + ": " + std::to_string(h.space->size(n)) + " sections");
        sizes.push_back(h.space->size(n));
    }
    r.data["sizes"] = sizes;
    bool kan = true;
    for (const auto& x : F->at) kan = kan && (inst.cap == 0 || is_kan_complex(x, inst.cap - 1).ok);
    r.lines.push_back("values Kan up to dimension " + std::to_string(inst.cap - 1) + ": " + yes(kan) +
                      (kan ? "" : " (the section space is then not a homotopy limit)"));
    r.data["values_kan"] = kan;
    r.checks.push_back(verdict("presheaf-laws", check_presheaf_laws(*h.space)));
    const auto& C = *F->cat;
    if (C.num_morphisms() == C.num_objects()) {
        // discrete index: sections are tuples
        std::optional<std::string> e;
        for (int n = 0; n <= inst.cap && !e; ++n) {
            long long prod = 1;
            for (const auto& x : F->at) prod *= x->size(n);
            if (h.space->size(n) != prod) e = "level " + std::to_string(n) + ": " + std::to_string(h.space->size(n)) + " != " + std::to_string(prod);
        }
        r.checks.push_back(verdict("discrete-product", e, "holim = product of the values"));
    }
    r.seconds = since(start);
    return r;
}

Report cmd_gamma_verify(const Instance& inst, const CommandOptions& opt) {
    auto start = Clock::now();
    const auto& F = need_diagram(inst, "gamma-verify");
    Report r;
    r.command = opt.echo;
    r.trusted = "levels 0.." + std::to_string(inst.cap) + ", Kan values checked up to dimension " + std::to_string(inst.cap - 1);
    auto P = on_point_times(F);
    auto G = gamma_C(P, inst.cap);
    r.checks.push_back(verdict("family-consistency", G.family.check_consistency(), "A(a; v) = A(a v), squares paste"));
    r.checks.push_back(verdict("strict-commutativity", compare_families(G.family, gamma_after_nerve(P, inst.cap)),
                               "gamma_C F = gamma after N F"));
    auto cl = classify_rectification(F, inst.cap);
    r.checks.push_back(verdict("rep-fib-round-trip", cl.verify(), "rep_fib(gamma_C F) = r*F"));
    json sizes = json::array();
    for (int n = 0; n <= inst.cap; ++n) {
        r.lines.push_back("rep_fib level " + std::to_string(n) + ": " + std::to_string(cl.rep.total->size(n)) + " simplices");
        sizes.push_back(cl.rep.total->size(n));
    }
    r.data["rep_fib_sizes"] = sizes;
    r.seconds = since(start);
    return r;
}

Report cmd_adjunction(const Instance& inst, const CommandOptions& opt) {
    auto start = Clock::now();
    const auto& F = need_diagram(inst, "adjunction");
    Report r;
    r.command = opt.echo;
    r.trusted = "levels 0.." + std::to_string(inst.cap) + ", exact enumeration";
    auto G = inst.nat_trans ? inst.nat_trans->target : F;
    auto ms = mapping_space_steps(F, G, inst.cap);
    r.lines.push_back("Hom over N C (r*F, r*G): " + std::to_string(ms.slice_maps));
    r.lines.push_back("Hom(r_! r*F, G): " + std::to_string(ms.shriek_maps));
    r.lines.push_back("Hom(QF, G): " + std::to_string(ms.dugger_maps));
    r.data["slice_maps"] = ms.slice_maps;
    r.data["shriek_maps"] = ms.shriek_maps;
    r.data["dugger_maps"] = ms.dugger_maps;
    std::optional<std::string> e;
    if (!ms.adjunction_bijective || ms.slice_maps != ms.shriek_maps) {
        e = std::to_string(ms.slice_maps) + " maps over N C, " + std::to_string(ms.shriek_maps) + " out of r_! r*F";
    }
    r.checks.push_back(verdict("rshriek-adjunction", e, "flat and sharp are inverse"));
    if (inst.functor && inst.functor_diagram) {
        const auto& pi = *inst.functor;
        auto l = check_lan_adjunction(pi, lan(pi, F), inst.functor_diagram);
        auto ra = check_ran_adjunction(pi, ran(pi, F), inst.functor_diagram);
        r.checks.push_back({"lan-adjunction", l.bijective, l.witness, std::to_string(l.left) + " maps", ""});
        r.checks.push_back({"ran-adjunction", ra.bijective, ra.witness, std::to_string(ra.left) + " maps", ""});
    }
    r.seconds = since(start);
    return r;
}

Report cmd_homology(const Instance& inst, const CommandOptions& opt) {
    auto start = Clock::now();
    Report r;
    r.command = opt.echo;
    int d = opt.max_dim.value_or(inst.cap - 1);
    r.trusted = "H_0..H_" + std::to_string(d) + " exact from levels 0.." + std::to_string(d + 1);
    std::vector<std::pair<std::string, SSetPtr>> spaces;
    if (inst.sset) spaces.emplace_back("X", inst.sset);
    if (inst.map) {
        spaces.emplace_back("source", inst.map->source());
        spaces.emplace_back("target", inst.map->target());
    }
    if (inst.diagram) {
        const auto& C = *inst.diagram->cat;
        for (int c = 0; c < C.num_objects(); ++c) spaces.emplace_back("F(" + C.object_name(c) + ")", inst.diagram->at[Z(c)]);
        spaces.emplace_back("r*F", rectify(inst.diagram, inst.cap).total());
    }
    json out = json::object();
    for (const auto& [name, x] : spaces) {
        auto h = homology(*x, d);
        r.lines.push_back(name + ": " + h.str());
        out[name] = h.str();
    }
    r.data["homology"] = out;
    r.checks.push_back({"homology", true, "", std::to_string(spaces.size()) + " spaces", ""});
    r.seconds = since(start);
    return r;
}

}  // namespace ssr

#include "flatcurve/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "flatcurve/builders.hpp"
#include "flatcurve/segments.hpp"

namespace flatcurve {

using json = nlohmann::ordered_json;

namespace {

// Rounded to 1e-12 so that reports do not carry last-bit noise; negative zero is folded.
double clean(double x) {
    const double r = std::round(x * 1e12) / 1e12;
    return r == 0.0 ? 0.0 : r;
}

json vec(Vec2 v) { return json::array({clean(v.x), clean(v.y)}); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json family_json(const SurfaceFamily& f) { return {{"kind", f.kind}, {"n", f.n}, {"m", f.m}}; }

json curve_json(const CurveSummary& c) {
    json comps = json::array();
    for (size_t i = 0; i < c.components.size(); ++i)
        comps.push_back({{"connection", c.components[i]},
                         {"start_singularity", c.singularities[i]},
                         {"length", clean(c.component_lengths[i])},
                         {"holonomy", vec(c.holonomies[i])}});
    return {{"components", comps}, {"length", clean(c.length)}, {"all_sides", c.all_sides}};
}

json pair_json(const PairRecord& p) {
    return {{"curve_a", p.curve_a},   {"curve_b", p.curve_b},         {"algebraic", p.algebraic},
            {"interior", p.interior}, {"singular", p.singular_signs}, {"ratio", clean(p.ratio)},
            {"validated", p.validated}};
}

json kvol_object(const KVolReport& r) {
    json j;
    j["schema"] = "flatcurve.kvol/1";
    j["surface"] = r.surface;
    j["parameters"] = {{"lmax", r.lmax}, {"max_components", r.max_components}, {"tolerance", r.tolerance}};
    j["saddle_connections"] = r.saddle_connections;
    j["curves"] = r.curves;
    j["pairs_evaluated"] = r.pairs_evaluated;
    j["pairs_excluded"] = r.pairs_excluded;
    json ex = json::array();
    for (const auto& [a, b] : r.exclusion_log) ex.push_back({a, b});
    j["exclusion_log"] = ex;
    j["max_ratio"] = clean(r.max_ratio);
    j["area"] = clean(r.area);
    j["area_times_sup"] = clean(r.area_times_sup);
    if (r.has_closed_forms)
        j["closed_forms"] = {{"n_over_8tan", clean(r.closed_form_cot)}, {"n_tan_over_8", clean(r.closed_form_tan)}};
    j["witness"] = {{"pair", pair_json(r.witness)},
                    {"curve_a", curve_json(r.witness_a)},
                    {"curve_b", curve_json(r.witness_b)},
                    {"recomputed", r.witness_recomputed}};
    json ach = json::array();
    for (const auto& p : r.achievers) ach.push_back(pair_json(p));
    j["achievers"] = ach;
    j["achievers_validated"] = r.achievers_validated;
    json curves = json::object();
    for (size_t i = 0; i < r.achiever_curve_ids.size(); ++i)
        curves[std::to_string(r.achiever_curve_ids[i])] = curve_json(r.achiever_curves[i]);
    j["achiever_curves"] = curves;
    return j;
}

json closed_curve_json(const TranslationSurface& s, const ClosedCurve& c) {
    json comps = json::array();
    for (const auto& sc : c.components)
        comps.push_back({{"start_singularity", sc.start_sing},
                         {"end_singularity", sc.end_sing},
                         {"length", clean(sc.length / s.l0())},
                         {"holonomy", vec(sc.holonomy / s.l0())},
                         {"start_angle", clean(sc.start_angle)},
                         {"end_angle", clean(sc.end_angle)}});
    return {{"components", comps}, {"length", clean(c.length() / s.l0())}};
}

json intersection_object(const IntersectionReport& r, int id_a, int id_b) {
    json interior = json::array();
    for (const auto& c : r.interior)
        interior.push_back({{"x", clean(c.point.x)}, {"y", clean(c.point.y)}, {"sign", c.sign}, {"polygon", c.polygon}});
    json singular = json::array();
    for (const auto& c : r.singular) singular.push_back({{"sing", c.singularity}, {"sign", c.sign}});
    return {{"intA_id", id_a},   {"intB_id", id_b},         {"interior", interior}, {"singular", singular},
            {"algebraic", r.algebraic}, {"geometric", r.geometric}, {"overlap", r.overlap}, {"degenerate", r.degenerate}};
}

std::string fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, clean(x));
    std::string s = buf;
    if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
    return s;
}

std::string join(const std::vector<std::string>& v, char sep) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

}  // namespace

TranslationSurface parse_surface(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("surface document is not valid JSON: ") + e.what());
    }
    try {
        SurfaceSpec spec;
        for (const auto& p : j.at("polygons")) {
            PolygonSpec ps;
            ps.id = p.at("id").get<int>();
            for (const auto& v : p.at("vertices")) ps.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
            if (p.contains("labels")) ps.labels = p.at("labels").get<std::vector<std::string>>();
            spec.polygons.push_back(std::move(ps));
        }
        for (const auto& g : j.at("gluings"))
            spec.gluings.push_back({{g.at(0).at(0).get<int>(), g.at(0).at(1).get<int>()},
                                    {g.at(1).at(0).get<int>(), g.at(1).at(1).get<int>()}});
        SurfaceFamily fam;
        if (j.contains("family")) {
            const auto& f = j.at("family");
            fam.kind = f.value("kind", std::string("custom"));
            fam.n = f.value("n", 0);
            fam.m = f.value("m", 0);
        }
        return build_surface(spec, fam);
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed surface document: ") + e.what());
    }
}

TranslationSurface read_surface_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_surface(ss.str());
}

TranslationSurface load_surface(const std::string& name_or_path) {
    if (is_builtin_name(name_or_path)) return builtin_surface(name_or_path);
    return read_surface_file(name_or_path);
}

std::string surface_json(const TranslationSurface& s) {
    json polys = json::array();
    for (const auto& p : s.spec().polygons) {
        json verts = json::array();
        for (const auto& v : p.vertices) verts.push_back(vec(v));
        polys.push_back({{"id", p.id}, {"vertices", verts}, {"labels", p.labels}});
    }
    json glue = json::array();
    for (const auto& [a, b] : s.spec().gluings)
        glue.push_back(json::array({json::array({a.polygon, a.edge}), json::array({b.polygon, b.edge})}));
    json sing = json::array();
    for (const auto& z : s.singularities())
        sing.push_back({{"id", z.id}, {"cone_angle", clean(z.cone_angle)}, {"corners", z.fan.size()}});
    json j;
    j["schema"] = "flatcurve.surface/1";
    j["family"] = family_json(s.family());
    j["polygons"] = polys;
    j["gluings"] = glue;
    j["derived"] = {{"area", clean(s.area())}, {"l0", clean(s.l0())}, {"singularities", sing}};
    return dump(j);
}

namespace {

// Per-connection columns shared by the CSV and JSON tables. Family-specific cells stay empty elsewhere.
struct Row {
    std::string sector, n_count, p_count, q_count, type, trips, odd_flag, bm_classes;
};

std::vector<Row> augment(const TranslationSurface& s, const std::vector<SaddleConnection>& scs) {
    std::vector<Row> rows(scs.size());
    const std::string& kind = s.family().kind;
    if (kind == "ngon") {
        const NgonAnalyzer an(s);
        for (size_t i = 0; i < scs.size(); ++i) {
            const Subdivision sub = an.subdivide(scs[i]);
            Row& r = rows[i];
            r.sector = sub.sector ? std::to_string(*sub.sector) : "";
            r.n_count = std::to_string(sub.counts.n);
            r.p_count = std::to_string(sub.counts.p);
            r.q_count = std::to_string(sub.counts.q);
            r.type = std::to_string(an.classify_type(scs[i], sub));
            std::vector<std::string> t;
            for (const auto& tr : sub.trips) t.push_back(std::to_string(tr.p) + ":" + std::to_string(tr.q));
            r.trips = join(t, ' ');
        }
    } else if (kind == "bm") {
        const BmAnalyzer an(s);
        for (size_t i = 0; i < scs.size(); ++i) {
            const BmSubdivision sub = an.subdivide(scs[i]);
            Row& r = rows[i];
            r.n_count = std::to_string(sub.counts.n);
            r.p_count = std::to_string(sub.counts.p);
            r.q_count = std::to_string(sub.counts.q);
            r.odd_flag = sub.odd_strict ? "1" : "0";
            for (const auto& sg : sub.segments) r.bm_classes += sg.bm_class;
        }
    }
    return rows;
}

json cell(const std::string& v, bool numeric) {
    if (v.empty()) return nullptr;
    return numeric ? json(std::stoi(v)) : json(v);
}

}  // namespace

std::string enumeration_csv(const TranslationSurface& s, const std::vector<SaddleConnection>& scs) {
    const std::vector<Row> rows = augment(s, scs);
    std::ostringstream o;
    o << "id,start,end,hx,hy,length,angle,cutting_sequence,sector,n_count,p_count,q_count,type,trips,odd_flag,"
         "bm_classes\n";
    for (size_t i = 0; i < scs.size(); ++i) {
        const auto& c = scs[i];
        const Row& r = rows[i];
        o << i << ',' << c.start_sing << ',' << c.end_sing << ',' << fixed(c.holonomy.x, 9) << ','
          << fixed(c.holonomy.y, 9) << ',' << fixed(c.length, 9) << ',' << fixed(c.direction, 9) << ','
          << join(c.cutting_sequence, ' ') << ',' << r.sector << ',' << r.n_count << ',' << r.p_count << ','
          << r.q_count << ',' << r.type << ',' << r.trips << ',' << r.odd_flag << ',' << r.bm_classes << "\n";
    }
    return o.str();
}

std::string enumeration_json(const TranslationSurface& s, const std::vector<SaddleConnection>& scs, double lmax) {
    const std::vector<Row> rows = augment(s, scs);
    json list = json::array();
    for (size_t i = 0; i < scs.size(); ++i) {
        const auto& c = scs[i];
        const Row& r = rows[i];
        list.push_back({{"id", i},
                        {"start", c.start_sing},
                        {"end", c.end_sing},
                        {"hx", clean(c.holonomy.x)},
                        {"hy", clean(c.holonomy.y)},
                        {"length", clean(c.length)},
                        {"angle", clean(c.direction)},
                        {"cutting_sequence", c.cutting_sequence},
                        {"sector", cell(r.sector, true)},
                        {"n_count", cell(r.n_count, true)},
                        {"p_count", cell(r.p_count, true)},
                        {"q_count", cell(r.q_count, true)},
                        {"type", cell(r.type, true)},
                        {"trips", cell(r.trips, false)},
                        {"odd_flag", r.odd_flag.empty() ? json(nullptr) : json(r.odd_flag == "1")},
                        {"bm_classes", cell(r.bm_classes, false)}});
    }
    json j;
    j["schema"] = "flatcurve.enumeration/1";
    j["family"] = family_json(s.family());
    j["lmax"] = lmax;
    j["count"] = scs.size();
    j["saddle_connections"] = list;
    return dump(j);
}

std::string kvol_json(const KVolReport& r) { return dump(kvol_object(r)); }

std::string conjecture_json(const ConjectureReport& r) {
    json j;
    j["schema"] = "flatcurve.conjecture/1";
    j["m"] = r.m;
    j["n"] = r.n;
    j["conjectured_ratio"] = r.conjectured;
    j["equals_conjectured"] = r.equals_conjectured;
    j["once_intersecting_side_witness"] = r.once_intersecting_side_witness;
    j["exceeds_conjectured"] = r.exceeds_conjectured;
    j["search"] = kvol_object(r.search);
    return dump(j);
}

std::string witness_json(const WitnessPair& w, int m, int n) {
    const TranslationSurface s = bouw_moller(m, n);
    json j;
    j["schema"] = "flatcurve.witness/1";
    j["m"] = m;
    j["n"] = n;
    j["alpha"] = closed_curve_json(s, w.alpha);
    j["beta"] = closed_curve_json(s, w.beta);
    j["intersection"] = intersection_object(w.intersection, 0, 1);
    j["ratio"] = clean(w.ratio);
    return dump(j);
}

std::string suite_json(const SuiteReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"gating", c.gating}, {"detail", c.detail}});
    json j;
    j["schema"] = "flatcurve.verify/1";
    j["suite"] = r.suite;
    j["passed"] = r.passed();
    j["checks"] = checks;
    return dump(j);
}

std::string cylinders_json(const TranslationSurface& s, const CylinderDecomposition& d) {
    json cyls = json::array();
    for (const auto& c : d.cylinders)
        cyls.push_back({{"circumference", clean(c.circumference)},
                        {"height", clean(c.height)},
                        {"area", clean(c.circumference * c.height)},
                        {"modulus", clean(c.height / c.circumference)},
                        {"boundary", c.boundary}});
    json seps = json::array();
    for (const auto& sc : d.separatrices)
        seps.push_back({{"start_singularity", sc.start_sing},
                        {"end_singularity", sc.end_sing},
                        {"length", clean(sc.length)},
                        {"holonomy", vec(sc.holonomy)}});
    json j;
    j["schema"] = "flatcurve.cylinders/1";
    j["direction"] = clean(d.direction);
    j["surface_area"] = clean(s.area());
    j["cylinders"] = cyls;
    j["separatrices"] = seps;
    return dump(j);
}

std::string intersection_json(const TranslationSurface& s, const ClosedCurve& a, const ClosedCurve& b,
                              const IntersectionReport& r, int id_a, int id_b) {
    json j;
    j["schema"] = "flatcurve.intersection/1";
    j["curve_a"] = closed_curve_json(s, a);
    j["curve_b"] = closed_curve_json(s, b);
    j["intersection"] = intersection_object(r, id_a, id_b);
    const double l0 = s.l0();
    j["ratio"] = clean(std::abs(r.algebraic) * l0 * l0 / (a.length() * b.length()));
    return dump(j);
}

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string manifest_json(const RunManifest& m) {
    json j;
    j["schema"] = "flatcurve.manifest/1";
    j["command"] = m.command;
    j["config_hash"] = m.config_hash;
    j["surface_hash"] = m.surface_hash;
    j["version"] = m.version;
    j["wall_seconds"] = m.wall_seconds;
    j["result_digest"] = m.result_digest;
    return dump(j);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace flatcurve

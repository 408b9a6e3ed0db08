#include "flatcurve/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "flatcurve/builders.hpp"
#include "flatcurve/parallel.hpp"

namespace flatcurve {

namespace {

constexpr double kTol = 1e-9;

struct Classified {
    int type = 0;
    int n = 1;
    int q = 0;
    bool big_cylinder = false;
};

// Analyzer data for every connection, computed in parallel.
std::vector<Classified> classify_all(const NgonAnalyzer& an, const std::vector<SaddleConnection>& scs) {
    std::vector<Classified> out(scs.size());
    parallel_for(scs.size(), [&](size_t i) {
        const Subdivision sub = an.subdivide(scs[i]);
        out[i].type = an.classify_type(scs[i], sub);
        out[i].n = sub.counts.n;
        out[i].q = sub.counts.q;
        out[i].big_cylinder = an.strictly_in_big_cylinder(scs[i], sub);
    });
    return out;
}

std::vector<int> unoriented(const std::vector<SaddleConnection>& scs) {
    const std::vector<int> rev = reverse_index(scs);
    std::vector<int> reps;
    for (size_t i = 0; i < scs.size(); ++i)
        if (static_cast<int>(i) <= rev[i]) reps.push_back(static_cast<int>(i));
    return reps;
}

std::string fmt(double x) {
    std::ostringstream o;
    o.precision(9);
    o << x;
    return o.str();
}

}  // namespace

double length_class_bound(int type, int segments, int n) {
    const double r2 = std::sqrt(2.0);
    switch (type) {
        case 1: return 1.0;
        case 2: return std::sqrt(5.0 + 4.0 * std::cos(kTwoPi / n));
        case 3: return 2.0 * r2 * segments + (r2 - 1.0);
        default: return r2 * segments + (2.0 * std::cos(kPi / 10.0) - r2);
    }
}

LengthStudy study_lengths(const TranslationSurface& s, double lmax) {
    const NgonAnalyzer an(s);
    LengthStudy out;
    out.n = an.n();
    out.lmax = lmax;
    const auto scs = enumerate_saddle_connections(s, lmax * s.l0() * (1 + 1e-12));
    out.connections = scs.size();
    const auto info = classify_all(an, scs);
    for (size_t i = 0; i < scs.size(); ++i) {
        const auto& sc = scs[i];
        const int t = info[i].type;
        ++out.per_type[t];
        LengthFinding f;
        f.id = static_cast<int>(i);
        f.type = t;
        f.segments = info[i].n;
        f.length = sc.length;
        f.bound = length_class_bound(t, info[i].n, out.n);
        f.what = an.is_side(sc)             ? "side"
                 : an.is_short_diagonal(sc) ? "short diagonal"
                 : an.is_long_diagonal(sc)  ? "long diagonal"
                 : an.is_diagonal(sc)       ? "diagonal"
                                            : "other";
        const double margin = f.length - f.bound;
        if (t <= 2) {
            if (std::abs(margin) > kTol) out.violations.push_back(f);
            continue;
        }
        if (margin < -kTol) out.violations.push_back(f);
        else if (margin <= kTol) out.equalities.push_back(f);
    }
    return out;
}

int intersection_table_bound(int type_a, int n_a, int type_b, int n_b) {
    if (type_a < type_b) {
        std::swap(type_a, type_b);
        std::swap(n_a, n_b);
    }
    switch (type_b) {
        case 1:
            if (type_a == 1) return 0;
            if (type_a == 2) return 1;
            return n_a - 1;
        case 2:
            if (type_a == 2) return 2;
            if (type_a == 3) return 2 * n_a;
            return 2 * n_a - 1;
        case 3:
            if (type_a == 3) return n_a * n_b;
            return 2 * n_a * n_b - 1;
        case 4: return n_a * n_b;
        default: return -1;
    }
}

IntersectionStudy study_intersections(const TranslationSurface& s, double lmax) {
    const NgonAnalyzer an(s);
    IntersectionStudy out;
    out.n = an.n();
    out.lmax = lmax;
    const auto scs = enumerate_saddle_connections(s, lmax * s.l0() * (1 + 1e-12));
    out.connections = scs.size();
    const auto info = classify_all(an, scs);
    const auto reps = unoriented(scs);

    struct Row {
        long long pairs = 0;
        std::vector<IntersectionFinding> findings;
        std::map<std::string, int> max_seen;
        std::map<std::string, long long> cells;
    };
    std::vector<Row> rows(reps.size());
    parallel_for(reps.size(), [&](size_t i) {
        Row& row = rows[i];
        const int a = reps[i];
        const Classified& ia = info[a];
        for (size_t j = i + 1; j < reps.size(); ++j) {
            const int b = reps[j];
            const Classified& ib = info[b];
            const int count = static_cast<int>(transverse_crossings(s, scs[a], scs[b]).crossings.size());
            ++row.pairs;
            const std::string cell = std::to_string(std::max(ia.type, ib.type)) + "/" +
                                     std::to_string(std::min(ia.type, ib.type));
            row.max_seen[cell] = std::max(row.max_seen[cell], count);
            ++row.cells[cell];
            const int tb = intersection_table_bound(ia.type, ia.n, ib.type, ib.n);
            if (count > tb) row.findings.push_back({a, b, ia.type, ib.type, count, tb, "table"});
            int cb = ia.n * ib.n;
            if (ia.big_cylinder && ib.big_cylinder) cb = std::max(ia.n * (ib.n + ib.q), ib.n * (ia.n + ia.q));
            else if (ia.big_cylinder) cb = ia.n * (ib.n + ib.q);
            else if (ib.big_cylinder) cb = ib.n * (ia.n + ia.q);
            if (count > cb) row.findings.push_back({a, b, ia.type, ib.type, count, cb, "big-cylinder"});
        }
    });
    for (auto& r : rows) {
        out.pairs += r.pairs;
        for (const auto& [k, v] : r.max_seen) out.max_seen[k] = std::max(out.max_seen[k], v);
        for (const auto& [k, v] : r.cells) out.cell_pairs[k] += v;
        for (auto& f : r.findings) {
            (f.rule == "table" ? out.table_violations : out.cylinder_violations)++;
            if (out.findings.size() < 50) out.findings.push_back(f);
        }
    }
    return out;
}

TripStudy study_trips(const TranslationSurface& s, double lmax) {
    const NgonAnalyzer an(s);
    TripStudy out;
    out.n = an.n();
    out.lmax = lmax;
    const auto scs = enumerate_saddle_connections(s, lmax * s.l0() * (1 + 1e-12));
    out.connections = scs.size();
    out.worst_margin = 1e300;
    const double long_min = 2.0 * std::cos(kPi / out.n);
    for (const auto& sc : scs) {
        const Subdivision sub = an.subdivide(sc);
        for (const Trip& t : sub.trips) {
            ++out.trips;
            const double margin = t.length - trip_lower_bound(t.p, t.q, out.n);
            out.worst_margin = std::min(out.worst_margin, margin);
            if (margin < -kTol) ++out.violations;
            out.max_p = std::max(out.max_p, t.p);
            out.max_q = std::max(out.max_q, t.q);
        }
        for (const Segment& sg : sub.segments) {
            if (sg.length < 1.0 - kTol) ++out.short_segments_below_one;
            if (an.long_segment_check(sg) && sg.length < long_min - kTol) ++out.long_segment_violations;
        }
    }
    if (out.trips == 0) out.worst_margin = 0.0;
    return out;
}

BmLengthStudy study_bm_lengths(const TranslationSurface& s, double lmax) {
    const BmAnalyzer an(s);
    BmLengthStudy out;
    out.m = an.m();
    out.n = an.n();
    out.lmax = lmax;
    const double l0 = s.l0();
    const auto scs = enumerate_saddle_connections(s, lmax * l0 * (1 + 1e-12));
    out.connections = scs.size();
    out.worst_margin = 1e300;
    std::vector<BmSubdivision> subs(scs.size());
    parallel_for(scs.size(), [&](size_t i) { subs[i] = an.subdivide(scs[i]); });
    for (size_t i = 0; i < scs.size(); ++i) {
        const BmSubdivision& sub = subs[i];
        if (sub.extremal_side) {
            ++out.extremal_sides;
            continue;
        }
        ++out.checked;
        const double margin = scs[i].length / l0 - bm_group_bound(sub.counts.n);
        out.worst_margin = std::min(out.worst_margin, margin);
        if (margin < -kTol) {
            ++out.violations;
            if (out.findings.size() < 30)
                out.findings.push_back("connection " + std::to_string(i) + " length " + fmt(scs[i].length / l0) +
                                       " below bound " + fmt(bm_group_bound(sub.counts.n)));
        }
        for (const auto& f : sub.findings) {
            ++out.group_findings;
            if (f.rfind("overlap", 0) == 0) ++out.overlaps;
            if (out.findings.size() < 30) out.findings.push_back("connection " + std::to_string(i) + ": " + f);
        }
        for (const auto& g : sub.groups)
            if (!g.meets_bound) ++out.group_bound_failures;
        for (const auto& sg : sub.segments) ++out.class_counts[sg.bm_class];
        if (sub.odd_strict) ++out.odd_connections;
    }
    if (out.checked == 0) out.worst_margin = 0.0;
    return out;
}

bool SuiteReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.gating || c.passed; });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"decagon", "ngon14", "ngon-mod4", "bm", "structure"};
    return names;
}

namespace {

CheckResult length_check(const TranslationSurface& s, double lmax, const std::string& name) {
    const LengthStudy st = study_lengths(s, lmax);
    CheckResult c;
    c.name = name;
    std::ostringstream d;
    d << st.connections << " connections, " << st.violations.size() << " violations, " << st.equalities.size()
      << " equalities";
    for (const auto& v : st.violations) {
        if (&v - st.violations.data() >= 3) break;
        d << "; " << v.what << " type " << v.type << " length " << fmt(v.length) << " < " << fmt(v.bound);
    }
    c.passed = st.violations.empty();
    c.detail = d.str();
    return c;
}

CheckResult lemma_check(const TranslationSurface& s, double lmax, const std::string& name) {
    CheckResult c;
    c.name = name;
    c.passed = true;
    std::ostringstream d;
    for (const auto& l : verify_case_lemmas(s, lmax)) {
        c.passed = c.passed && l.passed();
        d << l.name << ": " << l.pairs << " pairs, " << l.violations << " violations; ";
    }
    c.detail = d.str();
    return c;
}

// Maximum ratio and the shape of its achievers.
CheckResult kvol_check(const TranslationSurface& s, double lmax, int comps, double expected, int expected_int,
                       const std::string& name) {
    SearchConfig cfg;
    cfg.lmax = lmax;
    cfg.max_components = comps;
    const KVolReport r = sup_ratio(s, cfg);
    bool shape = !r.achievers.empty() && r.achievers_validated;
    for (const auto& a : r.achievers) {
        const auto& ids = r.achiever_curve_ids;
        const auto& ca = r.achiever_curves[std::lower_bound(ids.begin(), ids.end(), a.curve_a) - ids.begin()];
        const auto& cb = r.achiever_curves[std::lower_bound(ids.begin(), ids.end(), a.curve_b) - ids.begin()];
        shape = shape && ca.all_sides && cb.all_sides && a.interior == 0 && std::abs(a.algebraic) == expected_int;
        if (expected_int == 2)
            shape = shape && ca.components.size() == 2 && cb.components.size() == 2 && a.singular_signs.size() == 2 &&
                    a.singular_signs[0] == a.singular_signs[1];
    }
    CheckResult c;
    c.name = name;
    c.passed = std::abs(r.max_ratio - expected) <= cfg.tolerance && shape;
    c.detail = "max ratio " + fmt(r.max_ratio) + " over " + std::to_string(r.pairs_evaluated) + " pairs, " +
               std::to_string(r.achievers.size()) + " achievers" + (shape ? "" : " (unexpected achiever shape)");
    return c;
}

CheckResult cylinder_check(const TranslationSurface& s, std::size_t expected, const std::string& name) {
    const CylinderDecomposition d = cylinder_decomposition(s, 0.0);
    double area = 0.0;
    for (const auto& cyl : d.cylinders) area += cyl.circumference * cyl.height;
    CheckResult c;
    c.name = name;
    c.passed = d.cylinders.size() == expected && std::abs(area - s.area()) <= kTol * s.area();
    c.detail = std::to_string(d.cylinders.size()) + " cylinders, area " + fmt(area) + " of " + fmt(s.area());
    return c;
}

}  // namespace

SuiteReport run_suite(const std::string& name) {
    SuiteReport rep;
    rep.suite = name;
    if (name == "decagon") {
        const auto s = regular_ngon(10);
        rep.checks.push_back(length_check(s, 8.0, "length proposition, L <= 8"));
        const IntersectionStudy is = study_intersections(s, 5.0);
        rep.checks.push_back({"intersection table and big-cylinder bound, L <= 5",
                              is.table_violations == 0 && is.cylinder_violations == 0, true,
                              std::to_string(is.pairs) + " pairs, " + std::to_string(is.table_violations) +
                                  " table violations, " + std::to_string(is.cylinder_violations) +
                                  " big-cylinder violations"});
        const TripStudy ts = study_trips(s, 8.0);
        rep.checks.push_back({"maximal trip bound, L <= 8", ts.violations == 0, true,
                              std::to_string(ts.trips) + " trips, " + std::to_string(ts.violations) +
                                  " violations, worst margin " + fmt(ts.worst_margin)});
        rep.checks.push_back(lemma_check(s, 6.0, "case lemmas, L <= 6"));
        rep.checks.push_back(kvol_check(s, 6.0, 2, 0.5, 2, "max ratio 1/2 by two-side curves, L <= 6"));
    } else if (name == "ngon14") {
        const auto s = regular_ngon(14);
        rep.checks.push_back(length_check(s, 8.0, "length proposition, L <= 8"));
        rep.checks.push_back(lemma_check(s, 5.0, "case lemmas, L <= 5"));
        rep.checks.push_back(kvol_check(s, 6.0, 2, 0.5, 2, "max ratio 1/2 by two-side curves, L <= 6"));
        rep.checks.push_back(cylinder_check(s, 3, "three horizontal cylinders"));
    } else if (name == "ngon-mod4") {
        for (int n : {8, 12})
            rep.checks.push_back(kvol_check(regular_ngon(n), 6.0, 0, 1.0, 1,
                                            std::to_string(n) + "-gon max ratio 1 by sides meeting once, L <= 6"));
    } else if (name == "bm") {
        for (auto [m, n] : std::vector<std::pair<int, int>>{{4, 8}, {6, 8}}) {
            const WitnessPair w = construct_witness_pair_bm(m, n);
            const double l0 = bouw_moller(m, n).l0();
            const bool ok = std::abs(w.intersection.algebraic) == 2 &&
                            std::abs(w.alpha.length() - 2 * l0) <= kTol * l0 &&
                            std::abs(w.beta.length() - 2 * l0) <= kTol * l0 && std::abs(w.ratio - 0.5) <= kTol;
            rep.checks.push_back({"witness pair S_{" + std::to_string(m) + "," + std::to_string(n) + "}", ok, true,
                                  "Int " + std::to_string(w.intersection.algebraic) + ", ratio " + fmt(w.ratio)});
        }
        {
            SearchConfig cfg;
            cfg.lmax = 5.0;
            cfg.max_components = 2;
            const KVolReport r = sup_ratio(bouw_moller(4, 8), cfg);
            rep.checks.push_back({"S_{4,8} no pair above 1/2, L <= 5", r.max_ratio <= 0.5 + cfg.tolerance, true,
                                  "max ratio " + fmt(r.max_ratio) + " over " + std::to_string(r.pairs_evaluated) +
                                      " pairs"});
        }
        for (auto [m, n, gating] : std::vector<std::tuple<int, int, bool>>{{8, 8, true}, {4, 8, false}}) {
            const BmLengthStudy st = study_bm_lengths(bouw_moller(m, n), 6.0);
            rep.checks.push_back({"length bound S_{" + std::to_string(m) + "," + std::to_string(n) + "}, L <= 6",
                                  st.violations == 0 && st.overlaps == 0, gating,
                                  std::to_string(st.checked) + " checked, " + std::to_string(st.violations) +
                                      " violations, " + std::to_string(st.overlaps) + " overlaps"});
        }
        bool refused = false;
        try {
            construct_witness_pair_bm(8, 4);
        } catch (const InvalidArgument&) {
            refused = true;
        }
        rep.checks.push_back({"S_{8,4} witness refused", refused, true, refused ? "gcd equals n" : "constructed"});
    } else if (name == "structure") {
        auto sing = [](const TranslationSurface& s) { return s.singularities().size(); };
        bool cone_ok = true;
        for (int n : {10, 14})
            for (const auto& z : regular_ngon(n).singularities())
                cone_ok = cone_ok && std::abs(z.cone_angle - 2 * kTwoPi) <= kTol;
        rep.checks.push_back({"decagon and 14-gon: 2 singularities of angle 4pi",
                              sing(regular_ngon(10)) == 2 && sing(regular_ngon(14)) == 2 && cone_ok, true,
                              "cone angles " + fmt(regular_ngon(10).singularities()[0].cone_angle) + ", " +
                                  fmt(regular_ngon(14).singularities()[0].cone_angle)});
        rep.checks.push_back({"octagon and 12-gon: 1 singularity",
                              sing(regular_ngon(8)) == 1 && sing(regular_ngon(12)) == 1, true, ""});
        bool bm_ok = true;
        std::ostringstream d;
        for (auto [m, n] : std::vector<std::pair<int, int>>{{4, 8}, {6, 8}, {8, 4}, {6, 9}}) {
            const std::size_t k = sing(bouw_moller(m, n));
            bm_ok = bm_ok && k == static_cast<std::size_t>(std::gcd(m, n));
            d << "S_{" << m << "," << n << "}: " << k << "; ";
        }
        rep.checks.push_back({"Bouw-Moller: gcd(m,n) singularities", bm_ok, true, d.str()});
        rep.checks.push_back(cylinder_check(regular_ngon(10), 2, "decagon: two horizontal cylinders"));
        rep.checks.push_back(cylinder_check(regular_ngon(14), 3, "14-gon: three horizontal cylinders"));
    } else {
        throw InvalidArgument("unknown suite '" + name + "'");
    }
    return rep;
}

}  // namespace flatcurve

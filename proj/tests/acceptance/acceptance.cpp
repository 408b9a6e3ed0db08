// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "flatcurve/builders.hpp"
#include "flatcurve/kvolsearch.hpp"
#include "flatcurve/parallel.hpp"
#include "flatcurve/report.hpp"
#include "flatcurve/verify.hpp"

using namespace flatcurve;

namespace {

const double tol = 1e-9;

struct Outcome {
    bool passed = false;
    std::string detail;
};

SearchConfig search(double lmax, int comps) {
    SearchConfig cfg;
    cfg.lmax = lmax;
    cfg.max_components = comps;
    return cfg;
}

// Achievers must be two-side curves meeting only at the two singularities, with equal signs.
bool two_side_achievers(const KVolReport& r) {
    if (r.achievers.empty() || !r.achievers_validated) return false;
    auto summary = [&](int id) -> const CurveSummary* {
        for (size_t i = 0; i < r.achiever_curve_ids.size(); ++i)
            if (r.achiever_curve_ids[i] == id) return &r.achiever_curves[i];
        return nullptr;
    };
    for (const auto& p : r.achievers) {
        const auto *a = summary(p.curve_a), *b = summary(p.curve_b);
        if (!a || !b || !a->all_sides || !b->all_sides) return false;
        if (a->components.size() != 2 || b->components.size() != 2) return false;
        if (p.interior != 0 || p.singular_signs.size() != 2 || p.singular_signs[0] != p.singular_signs[1]) return false;
    }
    return true;
}

Outcome extremal_ratio(int n) {
    const auto r = sup_ratio(regular_ngon(n), search(6.0, 2));
    char buf[160];
    std::snprintf(buf, sizeof buf, "max ratio %.12f, %zu achievers, %lld pairs", r.max_ratio, r.achievers.size(),
                  r.pairs_evaluated);
    return {std::abs(r.max_ratio - 0.5) <= tol && r.witness_recomputed && two_side_achievers(r), buf};
}

Outcome singularity_structure() {
    std::string detail;
    bool ok = true;
    auto expect = [&](const std::string& name, const TranslationSurface& s, size_t count, double cone) {
        bool good = s.singularities().size() == count;
        for (const auto& sg : s.singularities())
            if (cone > 0 && std::abs(sg.cone_angle - cone) > tol) good = false;
        detail += name + ":" + std::to_string(s.singularities().size());
        if (!s.singularities().empty())
            detail += "@" + std::to_string(s.singularities()[0].cone_angle / std::acos(-1.0)).substr(0, 4) + "pi";
        detail += good ? " " : "(!) ";
        ok = ok && good;
    };
    const double four_pi = 4 * std::acos(-1.0);
    expect("ngon10", regular_ngon(10), 2, four_pi);
    expect("ngon14", regular_ngon(14), 2, four_pi);
    expect("ngon8", regular_ngon(8), 1, 0);
    expect("ngon12", regular_ngon(12), 1, 0);
    for (auto [m, n] : {std::pair{4, 8}, {6, 8}, {8, 4}, {6, 9}})
        expect("bm" + std::to_string(m) + "_" + std::to_string(n), bouw_moller(m, n),
               static_cast<size_t>(std::gcd(m, n)), 0);
    return {ok, detail};
}

Outcome length_suite() {
    const auto d = study_lengths(regular_ngon(10), 8.0);
    const auto f = study_lengths(regular_ngon(14), 8.0);
    bool long_equal = false, short_equal = false;
    for (const auto& e : d.equalities) {
        if (e.type == 3 && std::abs(e.length - (3 * std::sqrt(2.0) - 1)) <= tol) long_equal = true;
        if (e.type == 4 && std::abs(e.length - 2 * std::cos(std::acos(-1.0) / 10)) <= tol) short_equal = true;
    }
    std::string detail = "decagon " + std::to_string(d.violations.size()) + " violations, ngon14 " +
                         std::to_string(f.violations.size()) + " violations, type-3 equality " +
                         (long_equal ? "seen" : "absent") + ", type-4 equality " + (short_equal ? "seen" : "absent");
    if (!d.violations.empty()) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "; first: %s length %.9f < %.9f", d.violations[0].what.c_str(),
                      d.violations[0].length, d.violations[0].bound);
        detail += buf;
    }
    return {d.violations.empty() && f.violations.empty() && long_equal && short_equal, detail};
}

Outcome intersection_suite() {
    const auto st = study_intersections(regular_ngon(10), 5.0);
    return {st.table_violations == 0 && st.cylinder_violations == 0 && st.pairs > 0,
            std::to_string(st.pairs) + " pairs, " + std::to_string(st.table_violations) + " table and " +
                std::to_string(st.cylinder_violations) + " big-cylinder violations"};
}

Outcome trip_formula() {
    const auto st = study_trips(regular_ngon(10), 8.0);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%lld trips over %zu connections, %lld violations, worst margin %.3g", st.trips,
                  st.connections, st.violations, st.worst_margin);
    return {st.trips > 0 && st.violations == 0, buf};
}

Outcome bm_witness() {
    bool ok = true;
    std::string detail;
    for (auto [m, n] : {std::pair{4, 8}, {6, 8}}) {
        const auto w = construct_witness_pair_bm(m, n);
        const bool good = std::abs(w.intersection.algebraic) == 2 && std::abs(w.alpha.length() - 2) <= tol &&
                          std::abs(w.beta.length() - 2) <= tol && std::abs(w.ratio - 0.5) <= tol;
        ok = ok && good;
        detail += "S" + std::to_string(m) + std::to_string(n) + " |Int| " +
                  std::to_string(std::abs(w.intersection.algebraic)) + (good ? "; " : "(!); ");
    }
    const auto r = sup_ratio(bouw_moller(4, 8), search(5.0, 2));
    char buf[64];
    std::snprintf(buf, sizeof buf, "S48 search max %.12f", r.max_ratio);
    detail += buf;
    return {ok && r.max_ratio <= 0.5 + tol, detail};
}

Outcome bm_lengths() {
    const auto gate = study_bm_lengths(bouw_moller(8, 8), 6.0);
    const auto info = study_bm_lengths(bouw_moller(4, 8), 6.0);
    return {gate.violations == 0 && gate.overlaps == 0 && gate.checked > 0,
            "S88 " + std::to_string(gate.checked) + " checked, " + std::to_string(gate.violations) + " violations, " +
                std::to_string(gate.overlaps) + " overlaps; S48 (reporting only) " + std::to_string(info.violations) +
                " violations"};
}

Outcome cylinder_counts() {
    bool ok = true;
    std::string detail;
    for (auto [name, count] : {std::pair{"ngon14", 3u}, {"ngon10", 2u}}) {
        const auto s = builtin_surface(name);
        const auto d = cylinder_decomposition(s, 0.0);
        double total = 0;
        for (const auto& c : d.cylinders) total += c.circumference * c.height;
        const bool good = d.cylinders.size() == count && std::abs(total - s.area()) <= tol * s.area();
        ok = ok && good;
        detail += std::string(name) + " " + std::to_string(d.cylinders.size()) + " cylinders" + (good ? "; " : "(!); ");
    }
    return {ok, detail};
}

Outcome zero_mod_four() {
    bool ok = true;
    std::string detail;
    for (int n : {8, 12}) {
        const auto r = sup_ratio(regular_ngon(n), search(6.0, 0));
        bool good = std::abs(r.max_ratio - 1.0) <= tol && r.achievers_validated && !r.achievers.empty();
        for (const auto& p : r.achievers) good = good && std::abs(p.algebraic) == 1;
        for (const auto& c : r.achiever_curves) good = good && c.all_sides;
        ok = ok && good;
        char buf[64];
        std::snprintf(buf, sizeof buf, "ngon%d max %.12f%s; ", n, r.max_ratio, good ? "" : "(!)");
        detail += buf;
    }
    return {ok, detail};
}

Outcome determinism() {
    auto kvol = [](int threads) {
        set_worker_count(threads);
        auto r = sup_ratio(regular_ngon(10), search(6.0, 2));
        r.surface = "ngon10";
        return kvol_json(r);
    };
    auto suite = [](int threads) {
        set_worker_count(threads);
        return suite_json(run_suite("bm"));
    };
    const auto s = regular_ngon(14);
    const auto enumeration = [&](int threads) {
        set_worker_count(threads);
        return enumeration_json(s, enumerate_saddle_connections(s, 6.0), 6.0);
    };
    const bool kv = kvol(1) == kvol(4) && kvol(4) == kvol(4);
    const bool su = suite(1) == suite(3);
    const bool en = enumeration(1) == enumeration(4);
    const auto witness = [] { return witness_json(construct_witness_pair_bm(4, 8), 4, 8); };
    const bool wi = witness() == witness();
    set_worker_count(0);
    return {kv && su && en && wi, std::string("kvol ") + (kv ? "same" : "differs") + ", verify " +
                                      (su ? "same" : "differs") + ", enumerate " + (en ? "same" : "differs") +
                                      ", witness " + (wi ? "same" : "differs")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"decagon extremal ratio", [] { return extremal_ratio(10); }},
        {"14-gon extremal ratio", [] { return extremal_ratio(14); }},
        {"singularity structure", singularity_structure},
        {"length-class suite", length_suite},
        {"intersection-table suite", intersection_suite},
        {"maximal-trip formula", trip_formula},
        {"Bouw-Moller witness", bm_witness},
        {"Bouw-Moller length bound", bm_lengths},
        {"cylinder counts", cylinder_counts},
        {"n = 0 mod 4 cross-check", zero_mod_four},
        {"determinism", determinism},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %2zu %s (%.1fs): %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                    o.detail.c_str());
        std::fflush(stdout);
        failed += !o.passed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

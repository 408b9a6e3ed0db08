#pragma once

#include <map>
#include <string>
#include <vector>

#include "flatcurve/kvolsearch.hpp"
#include "flatcurve/segments.hpp"

namespace flatcurve {

struct LengthFinding {
    int id = -1;
    int type = 0;
    int segments = 0;
    double length = 0.0;
    double bound = 0.0;
    std::string what;  // "side", "short diagonal", "long diagonal", "diagonal" or "other"
};

// Type-class length bounds over the enumerated saddle connections of a regular n-gon.
struct LengthStudy {
    int n = 0;
    double lmax = 0.0;
    std::size_t connections = 0;
    std::map<int, std::size_t> per_type;
    std::vector<LengthFinding> violations;
    std::vector<LengthFinding> equalities;
};

double length_class_bound(int type, int segments, int n);
LengthStudy study_lengths(const TranslationSurface& s, double lmax);

struct IntersectionFinding {
    int a = -1;
    int b = -1;
    int type_a = 0;
    int type_b = 0;
    int count = 0;
    int bound = 0;
    std::string rule;  // "table" or "big-cylinder"
};

// Pairwise non-singular intersection counts against the type table and the big-cylinder bound.
struct IntersectionStudy {
    int n = 0;
    double lmax = 0.0;
    std::size_t connections = 0;
    long long pairs = 0;
    long long table_violations = 0;
    long long cylinder_violations = 0;
    std::map<std::string, int> max_seen;   // "ta/tb" -> largest count seen
    std::map<std::string, long long> cell_pairs;
    std::vector<IntersectionFinding> findings;
};

// Table entry for |alpha cap beta| by types and segment counts; -1 when no bound applies.
int intersection_table_bound(int type_a, int n_a, int type_b, int n_b);
IntersectionStudy study_intersections(const TranslationSurface& s, double lmax);

struct TripStudy {
    int n = 0;
    double lmax = 0.0;
    std::size_t connections = 0;
    long long trips = 0;
    long long violations = 0;
    double worst_margin = 0.0;
    int max_p = 0;
    int max_q = 0;
    long long short_segments_below_one = 0;
    long long long_segment_violations = 0;
};

TripStudy study_trips(const TranslationSurface& s, double lmax);

// Length bound l >= (sqrt(2) n_alpha + sqrt(2) - 1) l0 on a Bouw-Moller surface.
struct BmLengthStudy {
    int m = 0;
    int n = 0;
    double lmax = 0.0;  // units of l0
    std::size_t connections = 0;
    std::size_t extremal_sides = 0;
    std::size_t checked = 0;
    long long violations = 0;
    long long group_findings = 0;
    long long overlaps = 0;
    long long group_bound_failures = 0;
    long long odd_connections = 0;
    std::map<char, long long> class_counts;
    double worst_margin = 0.0;  // units of l0
    std::vector<std::string> findings;
};

BmLengthStudy study_bm_lengths(const TranslationSurface& s, double lmax);

struct CheckResult {
    std::string name;
    bool passed = false;
    bool gating = true;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool passed() const;
};

// Suites: "decagon", "ngon14", "ngon-mod4", "bm", "structure".
SuiteReport run_suite(const std::string& name);
const std::vector<std::string>& suite_names();

}  // namespace flatcurve

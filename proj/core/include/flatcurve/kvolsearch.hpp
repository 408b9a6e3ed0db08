#pragma once

#include <string>
#include <utility>
#include <vector>

#include "flatcurve/intersect.hpp"

namespace flatcurve {

struct SearchConfig {
    double lmax = 6.0;        // per component, in units of l0
    int max_components = 0;   // 0: number of singularities
    double tolerance = 1e-9;  // ratio comparison, in units of 1/l0^2
    long max_copies = 5'000'000;
    long long max_pairs = 2'000'000'000LL;
    std::size_t exclusion_log_limit = 20;
    int validation_samples = 400;  // per piece, for the sampled recount of achievers
};

// One closed curve as a cyclic chain of enumerated saddle connections (indices into `scs`).
struct CurveChain {
    std::vector<int> components;
    double length = 0.0;
};

// Every cyclic chain of 1..max_components connections through distinct singularities, one per unoriented curve.
// Chains start at their smallest component index; of the two orientations the lexicographically smaller is kept.
std::vector<CurveChain> enumerate_closed_curves(const std::vector<SaddleConnection>& scs, int max_components);

ClosedCurve to_closed_curve(const std::vector<SaddleConnection>& scs, const CurveChain& chain);

// True when the connection runs along one polygon edge.
bool is_polygon_side(const TranslationSurface& s, const SaddleConnection& sc);

struct CurveSummary {
    std::vector<int> components;
    std::vector<int> singularities;
    std::vector<double> component_lengths;  // units of l0
    std::vector<Vec2> holonomies;           // units of l0
    double length = 0.0;                    // units of l0
    bool all_sides = false;
};

struct PairRecord {
    int curve_a = -1;
    int curve_b = -1;
    int algebraic = 0;
    int interior = 0;
    std::vector<int> singular_signs;
    double ratio = 0.0;  // |Int| l0^2 / (l(a) l(b))
    bool validated = false;
};

struct KVolReport {
    std::string surface;
    double lmax = 0.0;
    int max_components = 0;
    double tolerance = 0.0;
    std::size_t saddle_connections = 0;
    std::size_t curves = 0;
    long long pairs_evaluated = 0;
    long long pairs_excluded = 0;
    std::vector<std::pair<int, int>> exclusion_log;  // first excluded pairs (curves sharing a connection)

    double max_ratio = 0.0;  // units of 1/l0^2
    PairRecord witness;
    CurveSummary witness_a;
    CurveSummary witness_b;
    std::vector<PairRecord> achievers;
    std::vector<CurveSummary> achiever_curves;  // every curve that appears in an achiever, indexed by achiever_curve_ids
    std::vector<int> achiever_curve_ids;
    bool witness_recomputed = false;  // ratio matches an independent recomputation
    bool achievers_validated = false;

    double area = 0.0;       // units of l0^2
    double area_times_sup = 0.0;
    bool has_closed_forms = false;
    double closed_form_cot = 0.0;  // n / (8 tan(pi/n))
    double closed_form_tan = 0.0;  // (n/8) tan(pi/n)
};

KVolReport sup_ratio(const TranslationSurface& s, const SearchConfig& cfg);

struct WitnessPair {
    ClosedCurve alpha;
    ClosedCurve beta;
    IntersectionReport intersection;
    double ratio = 0.0;  // units of 1/l0^2
};

// Two sides of P(0) against two sides of P(m-1) meeting twice. Needs 1 < gcd(m, n) < n.
WitnessPair construct_witness_pair_bm(int m, int n);

struct ConjectureReport {
    int m = 0;
    int n = 0;
    KVolReport search;
    double conjectured = 0.25;
    bool equals_conjectured = false;
    bool once_intersecting_side_witness = false;
    bool exceeds_conjectured = false;
};

// Exploratory search for gcd(m, n) = n; never gating.
ConjectureReport explore_conjecture(int m, int n, const SearchConfig& cfg);

struct LemmaCheck {
    std::string name;
    long long pairs = 0;
    long long equalities = 0;
    long long violations = 0;
    double worst_margin = 0.0;  // min of bound - value over the checked pairs
    std::vector<std::string> findings;
    bool passed() const { return violations == 0; }
};

// Numerical checks of the case inequalities for a closed curve made of two connections against a third.
std::vector<LemmaCheck> verify_case_lemmas(const TranslationSurface& s, double lmax);

}  // namespace flatcurve

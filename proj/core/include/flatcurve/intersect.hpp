#pragma once

#include <vector>

#include "flatcurve/geodesics.hpp"

namespace flatcurve {

struct InteriorCrossing {
    int polygon = 0;
    Vec2 point;  // polygon coordinates
    int sign = 0;
    int component_a = 0;
    int component_b = 0;
};

struct PairCrossings {
    std::vector<InteriorCrossing> crossings;
    bool overlap = false;  // collinear pieces sharing positive length
    int signed_sum() const;
};

// Transverse crossings away from singularities. A crossing on a glued side is reported once.
PairCrossings transverse_crossings(const TranslationSurface& s, const SaddleConnection& a, const SaddleConnection& b);

struct SingularSign {
    int sign = 0;
    bool degenerate = false;  // two of the four rays coincide
};

// +1 for counter-clockwise order (a_out, b_out, a_in, b_in), -1 for (a_out, b_in, a_in, b_out), else 0.
SingularSign singular_sign(double cone_angle, double a_in, double a_out, double b_in, double b_out);

struct ClosedCurve {
    std::vector<SaddleConnection> components;
    std::vector<int> ids;  // enumeration ids of the components, when known
    double length() const;
    std::vector<int> singularities() const;  // visited in order
};

// Validates the chain: consecutive components meet, no singularity visited twice.
ClosedCurve make_closed_curve(std::vector<SaddleConnection> components);

struct SingularContribution {
    int singularity = 0;
    int sign = 0;
};

struct IntersectionReport {
    std::vector<InteriorCrossing> interior;
    std::vector<SingularContribution> singular;
    int algebraic = 0;
    int geometric = 0;
    bool overlap = false;
    bool degenerate = false;
};

std::vector<SingularContribution> singular_contributions(const TranslationSurface& s, const ClosedCurve& a,
                                                         const ClosedCurve& b, bool* degenerate = nullptr);

IntersectionReport algebraic_intersection(const TranslationSurface& s, const ClosedCurve& a, const ClosedCurve& b);

// Independent recount by marching along the pieces of `a` and testing side changes against `b`.
int sampled_crossing_count(const TranslationSurface& s, const SaddleConnection& a, const SaddleConnection& b,
                           int samples_per_piece = 4000);

}  // namespace flatcurve

#include "flatcurve/intersect.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace flatcurve {

int PairCrossings::signed_sum() const {
    int t = 0;
    for (const auto& c : crossings) t += c.sign;
    return t;
}

namespace {

bool near_vertex(const TranslationSurface& s, int polygon, Vec2 x, double tol) {
    for (int v = 0; v < s.vertex_count(polygon); ++v)
        if (norm(x - s.vertex(polygon, v)) < tol) return true;
    return false;
}

// A point on a glued side is represented in the polygon holding the smaller edge of the pair.
std::pair<int, Vec2> canonical_point(const TranslationSurface& s, int polygon, Vec2 x, double tol) {
    for (int e = 0; e < s.vertex_count(polygon); ++e) {
        const Vec2 p0 = s.vertex(polygon, e), d = s.edge_vector(polygon, e);
        const double l = norm(d), t = dot(x - p0, d) / (l * l);
        if (t < 0 || t > 1 || std::abs(cross(d, x - p0)) / l > tol) continue;
        const EdgeRef here{polygon, e}, there = s.glued(here);
        if (there < here) return {there.polygon, x + s.translation(here)};
        break;
    }
    return {polygon, x};
}

bool same_component(const SaddleConnection& a, const SaddleConnection& b) {
    return a.start_sing == b.start_sing && std::abs(a.start_angle - b.start_angle) < 1e-9 &&
           norm(a.holonomy - b.holonomy) < 1e-7 * std::max(1.0, a.length);
}

}  // namespace

PairCrossings transverse_crossings(const TranslationSurface& s, const SaddleConnection& a, const SaddleConnection& b) {
    PairCrossings out;
    const double eps = s.eps();
    const double ptol = 1e-9;
    for (const Piece& pa : a.pieces) {
        const Vec2 da = pa.to - pa.from;
        const double la = norm(da);
        for (const Piece& pb : b.pieces) {
            if (pa.polygon != pb.polygon) continue;
            const Vec2 db = pb.to - pb.from;
            const double lb = norm(db);
            const double den = cross(da, db);
            const Vec2 w = pb.from - pa.from;
            if (std::abs(den) <= kEpsAng * la * lb) {
                if (std::abs(cross(w, da)) / la < eps * 10) {
                    const Vec2 ua = da / la;
                    double b0 = dot(pb.from - pa.from, ua), b1 = dot(pb.to - pa.from, ua);
                    if (b0 > b1) std::swap(b0, b1);
                    if (std::min(la, b1) - std::max(0.0, b0) > eps * 10) out.overlap = true;
                }
                continue;
            }
            const double t = cross(w, db) / den;
            const double u = cross(w, da) / den;
            if (t < -ptol || t > 1 + ptol || u < -ptol || u > 1 + ptol) continue;
            const Vec2 x = pa.from + da * t;
            if (near_vertex(s, pa.polygon, x, eps * 100)) continue;

            // A crossing on a glued side can be found from both copies of the side; keep one.
            const auto [poly, at] = canonical_point(s, pa.polygon, x, eps * 10);
            const bool seen = std::any_of(out.crossings.begin(), out.crossings.end(), [&](const InteriorCrossing& c) {
                return c.polygon == poly && norm(c.point - at) < eps * 100;
            });
            if (seen) continue;

            InteriorCrossing c;
            c.polygon = poly;
            c.point = at;
            c.sign = den > 0 ? 1 : -1;
            out.crossings.push_back(c);
        }
    }
    return out;
}

SingularSign singular_sign(double cone_angle, double a_in, double a_out, double b_in, double b_out) {
    SingularSign r;
    const double rays[4] = {a_in, a_out, b_in, b_out};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const double d = std::abs(wrap(rays[i] - rays[j], cone_angle));
            if (d < 1e-9 || cone_angle - d < 1e-9) r.degenerate = true;
        }
    if (r.degenerate) return r;
    const double ai = wrap(a_in - a_out, cone_angle);
    const double bi = wrap(b_in - a_out, cone_angle);
    const double bo = wrap(b_out - a_out, cone_angle);
    if (bo < ai && ai < bi) r.sign = 1;
    else if (bi < ai && ai < bo) r.sign = -1;
    return r;
}

double ClosedCurve::length() const {
    double l = 0.0;
    for (const auto& c : components) l += c.length;
    return l;
}

std::vector<int> ClosedCurve::singularities() const {
    std::vector<int> out;
    for (const auto& c : components) out.push_back(c.start_sing);
    return out;
}

ClosedCurve make_closed_curve(std::vector<SaddleConnection> components) {
    if (components.empty()) throw InvalidArgument("closed curve needs at least one component");
    const size_t k = components.size();
    std::set<int> seen;
    for (size_t j = 0; j < k; ++j) {
        const auto& c = components[j];
        const auto& next = components[(j + 1) % k];
        if (c.end_sing != next.start_sing) throw InvalidArgument("curve components do not chain");
        if (!seen.insert(c.start_sing).second)
            throw InvalidArgument("curve passes a singularity more than once");
        if (std::abs(c.end_angle - next.start_angle) < 1e-9)
            throw InvalidArgument("curve doubles back along a separatrix");
    }
    ClosedCurve curve;
    for (const auto& c : components) curve.ids.push_back(c.id);
    curve.components = std::move(components);
    return curve;
}

std::vector<SingularContribution> singular_contributions(const TranslationSurface& s, const ClosedCurve& a,
                                                         const ClosedCurve& b, bool* degenerate) {
    // (incoming ray, outgoing ray) at every singularity a curve passes.
    auto passes = [](const ClosedCurve& c) {
        std::vector<std::tuple<int, double, double>> out;
        const size_t k = c.components.size();
        for (size_t j = 0; j < k; ++j) {
            const auto& in = c.components[(j + k - 1) % k];
            const auto& o = c.components[j];
            out.emplace_back(o.start_sing, in.end_angle, o.start_angle);
        }
        return out;
    };
    std::vector<SingularContribution> out;
    for (const auto& [za, ain, aout] : passes(a)) {
        for (const auto& [zb, bin, bout] : passes(b)) {
            if (za != zb) continue;
            const SingularSign sg = singular_sign(s.singularities()[za].cone_angle, ain, aout, bin, bout);
            if (sg.degenerate && degenerate) *degenerate = true;
            out.push_back({za, sg.sign});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const SingularContribution& x, const SingularContribution& y) { return x.singularity < y.singularity; });
    return out;
}

IntersectionReport algebraic_intersection(const TranslationSurface& s, const ClosedCurve& a, const ClosedCurve& b) {
    IntersectionReport r;
    if (&a == &b) return r;
    if (a.components.size() == b.components.size()) {
        bool same = true;
        for (size_t i = 0; i < a.components.size() && same; ++i)
            same = same_component(a.components[i], b.components[i]);
        if (same) return r;
    }
    for (size_t i = 0; i < a.components.size(); ++i) {
        for (size_t j = 0; j < b.components.size(); ++j) {
            PairCrossings pc = transverse_crossings(s, a.components[i], b.components[j]);
            if (pc.overlap) r.overlap = true;
            for (auto& c : pc.crossings) {
                c.component_a = static_cast<int>(i);
                c.component_b = static_cast<int>(j);
                r.interior.push_back(c);
            }
        }
    }
    r.singular = singular_contributions(s, a, b, &r.degenerate);
    for (const auto& c : r.interior) r.algebraic += c.sign;
    r.geometric = static_cast<int>(r.interior.size());
    for (const auto& c : r.singular) {
        r.algebraic += c.sign;
        if (c.sign != 0) ++r.geometric;
    }
    return r;
}

int sampled_crossing_count(const TranslationSurface& s, const SaddleConnection& a, const SaddleConnection& b,
                           int samples_per_piece) {
    const double vtol = 1e3 * s.eps();
    // Crossings of the short step [p, q] (polygon coordinates) with b's pieces in that polygon,
    // restricted to step parameters in [lo, hi).
    auto count_step = [&](int polygon, Vec2 p, Vec2 q, double lo, double hi) {
        int c = 0;
        const Vec2 d = q - p;
        for (const Piece& pb : b.pieces) {
            if (pb.polygon != polygon) continue;
            const Vec2 e = pb.to - pb.from;
            if (std::abs(cross(e, d)) <= kEpsAng * norm(e) * norm(d)) continue;
            const double fp = cross(e, p - pb.from), fq = cross(e, q - pb.from);
            if ((fp > 0) == (fq > 0) || fp == fq) continue;
            const double sp = fp / (fp - fq);
            if (sp < lo || sp >= hi) continue;
            const Vec2 x = p + d * sp;
            const double along = dot(x - pb.from, e) / dot(e, e);
            if (along < 0 || along > 1) continue;
            if (near_vertex(s, polygon, x, vtol)) continue;
            ++c;
        }
        return c;
    };

    int total = 0;
    const size_t np = a.pieces.size();
    std::vector<std::vector<Vec2>> pts(np);
    for (size_t i = 0; i < np; ++i) {
        const Piece& pa = a.pieces[i];
        if (i == 0) pts[i].push_back(pa.from);
        for (int k = 0; k < samples_per_piece; ++k)
            pts[i].push_back(pa.from + (pa.to - pa.from) * ((k + 0.5) / samples_per_piece));
        if (i + 1 == np) pts[i].push_back(pa.to);
        for (size_t k = 0; k + 1 < pts[i].size(); ++k)
            total += count_step(pa.polygon, pts[i][k], pts[i][k + 1], 0.0, 1.0);
    }
    for (size_t i = 0; i + 1 < np; ++i) {
        const Piece& pa = a.pieces[i];
        const Vec2 shift = s.translation({pa.polygon, pa.to_edge});
        const Vec2 p = pts[i].back();
        const Vec2 q_here = pts[i + 1].front() - shift;
        const double split = norm(pa.to - p) / norm(q_here - p);
        total += count_step(pa.polygon, p, q_here, 0.0, split + 1e-12);
        total += count_step(a.pieces[i + 1].polygon, p + shift, pts[i + 1].front(), split + 1e-12, 1.0);
    }
    return total;
}

}  // namespace flatcurve

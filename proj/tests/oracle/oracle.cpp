#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace oracle {

using flatcurve::EdgeRef;

namespace {

constexpr double kPi = 3.14159265358979323846;

double cross2(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double len(Vec2 a) { return std::sqrt(a.x * a.x + a.y * a.y); }

long long key(double x) { return std::llround(x * 1e6); }

}  // namespace

double ngon_area(int n) { return n / (4.0 * std::tan(kPi / n)); }

int ngon_singularity_count(int n) { return n % 4 == 0 ? 1 : 2; }

double ngon_cone_angle(int n) { return (n - 2) * kPi / ngon_singularity_count(n); }

int ngon_genus(int n) {
    const double excess = ngon_singularity_count(n) * (ngon_cone_angle(n) / (2 * kPi) - 1.0);
    return static_cast<int>(std::lround(1.0 + excess / 2.0));
}

double trip_bound(int p, int q, int n) {
    const double c = std::cos(2 * kPi / n), s = std::sin(2 * kPi / n);
    const double x = p + (p - 1) * c;
    const double y = (q + 1) * s;
    return std::sqrt(x * x + y * y);
}

TraceResult trace(const TranslationSurface& s, int polygon, int vertex, Vec2 dir, double max_length) {
    TraceResult r;
    const double scale = s.l0();
    const double d_len = len(dir);
    dir = {dir.x / d_len, dir.y / d_len};
    Vec2 at = s.vertex(polygon, vertex);
    int p = polygon;
    int entered = -1;
    for (int step = 0; step < 100000; ++step) {
        const int k = s.vertex_count(p);
        double best_t = 1e300, best_u = 0;
        int best_e = -1;
        for (int e = 0; e < k; ++e) {
            if (e == entered) continue;
            const Vec2 a = s.vertex(p, e), b = s.vertex(p, e + 1);
            const Vec2 ab{b.x - a.x, b.y - a.y};
            const double den = cross2(dir, ab);
            if (std::abs(den) < 1e-14 * len(ab)) continue;
            const Vec2 ap{a.x - at.x, a.y - at.y};
            const double t = cross2(ap, ab) / den;
            const double u = cross2(ap, dir) / den;
            if (t <= 1e-9 * scale || u < -1e-9 || u > 1 + 1e-9) continue;
            if (t < best_t) {
                best_t = t;
                best_u = u;
                best_e = e;
            }
        }
        if (best_e < 0) return r;
        r.length += best_t;
        if (r.length > max_length + 1e-7 * scale) return r;
        const Vec2 hit{at.x + dir.x * best_t, at.y + dir.y * best_t};
        const Vec2 a = s.vertex(p, best_e), b = s.vertex(p, best_e + 1);
        const double edge_len = len({b.x - a.x, b.y - a.y});
        if (best_u * edge_len < 1e-7 * scale || (1 - best_u) * edge_len < 1e-7 * scale) {
            r.reached = true;
            r.end_polygon = p;
            r.end_vertex = best_u < 0.5 ? best_e : (best_e + 1) % k;
            return r;
        }
        const EdgeRef next = s.glued({p, best_e});
        const Vec2 shift = s.translation({p, best_e});
        at = {hit.x + shift.x, hit.y + shift.y};
        p = next.polygon;
        entered = next.edge;
        ++r.crossings;
    }
    return r;
}

std::vector<Candidate> brute_force_connections(const TranslationSurface& s, double lmax, int bound) {
    // Side vectors up to sign.
    std::vector<Vec2> basis;
    std::set<std::pair<long long, long long>> seen_basis;
    for (int p = 0; p < s.polygon_count(); ++p)
        for (int e = 0; e < s.vertex_count(p); ++e) {
            Vec2 v = s.edge_vector(p, e);
            if (v.y < -1e-12 || (std::abs(v.y) <= 1e-12 && v.x < 0)) v = {-v.x, -v.y};
            if (seen_basis.insert({key(v.x), key(v.y)}).second) basis.push_back(v);
        }

    std::map<std::pair<long long, long long>, Vec2> vectors;
    std::vector<int> coeff(basis.size(), -bound);
    while (true) {
        Vec2 v{0, 0};
        for (size_t i = 0; i < basis.size(); ++i) {
            v.x += coeff[i] * basis[i].x;
            v.y += coeff[i] * basis[i].y;
        }
        const double l = len(v);
        if (l > 1e-9 && l <= lmax + 1e-9) vectors.emplace(std::make_pair(key(v.x), key(v.y)), v);
        size_t i = 0;
        while (i < coeff.size() && coeff[i] == bound) coeff[i++] = -bound;
        if (i == coeff.size()) break;
        ++coeff[i];
    }

    std::vector<Candidate> out;
    for (int p = 0; p < s.polygon_count(); ++p) {
        const int k = s.vertex_count(p);
        for (int v = 0; v < k; ++v) {
            const Vec2 here = s.vertex(p, v);
            const Vec2 next = s.vertex(p, v + 1), prev = s.vertex(p, v + k - 1);
            const Vec2 out_edge{next.x - here.x, next.y - here.y};
            const Vec2 back_edge{prev.x - here.x, prev.y - here.y};
            const double opening = std::atan2(cross2(out_edge, back_edge), out_edge.x * back_edge.x + out_edge.y * back_edge.y);
            const double interior = opening < 0 ? opening + 2 * kPi : opening;
            for (const auto& [unused, hol] : vectors) {
                double a = std::atan2(cross2(out_edge, hol), out_edge.x * hol.x + out_edge.y * hol.y);
                if (a < -1e-10) a += 2 * kPi;
                if (a < 0) a = 0;
                if (a >= interior - 1e-10) continue;
                const double l = len(hol);
                const TraceResult r = trace(s, p, v, hol, l);
                if (r.reached && std::abs(r.length - l) < 1e-7 * s.l0()) out.push_back({p, v, hol});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) {
        return std::make_tuple(x.polygon, x.vertex, key(x.holonomy.x), key(x.holonomy.y)) <
               std::make_tuple(y.polygon, y.vertex, key(y.holonomy.x), key(y.holonomy.y));
    });
    return out;
}

long primitive_vectors(double lmax) {
    const long r = static_cast<long>(std::floor(lmax));
    long count = 0;
    for (long a = -r; a <= r; ++a)
        for (long b = -r; b <= r; ++b) {
            if (a == 0 && b == 0) continue;
            if (std::gcd(std::abs(a), std::abs(b)) != 1) continue;
            if (static_cast<double>(a * a + b * b) <= lmax * lmax + 1e-9) ++count;
        }
    return count;
}

int interleave_sign(double cone, double a_in, double a_out, double b_in, double b_out) {
    struct Ray {
        double angle;
        char tag;
    };
    auto norm_angle = [cone](double t) {
        t = std::fmod(t, cone);
        return t < 0 ? t + cone : t;
    };
    std::vector<Ray> rays{{0.0, 'A'},
                          {norm_angle(a_in - a_out), 'a'},
                          {norm_angle(b_in - a_out), 'b'},
                          {norm_angle(b_out - a_out), 'B'}};
    std::sort(rays.begin(), rays.end(), [](const Ray& x, const Ray& y) { return x.angle < y.angle; });
    std::string order;
    for (const auto& r : rays) order += r.tag;
    if (order == "ABab") return 1;
    if (order == "AbaB") return -1;
    return 0;
}

IntersectionCount intersect(const TranslationSurface& s, const ClosedCurve& a, const ClosedCurve& b) {
    IntersectionCount out;
    const double scale = s.l0();
    std::set<std::tuple<int, long long, long long, size_t, size_t>> points;
    for (size_t ia = 0; ia < a.components.size(); ++ia)
        for (size_t ib = 0; ib < b.components.size(); ++ib)
            for (const auto& pa : a.components[ia].pieces)
                for (const auto& pb : b.components[ib].pieces) {
                    if (pa.polygon != pb.polygon) continue;
                    const Vec2 da{pa.to.x - pa.from.x, pa.to.y - pa.from.y};
                    const Vec2 db{pb.to.x - pb.from.x, pb.to.y - pb.from.y};
                    const double den = cross2(da, db);
                    if (std::abs(den) < 1e-12 * len(da) * len(db)) continue;
                    const Vec2 w{pb.from.x - pa.from.x, pb.from.y - pa.from.y};
                    const double t = cross2(w, db) / den, u = cross2(w, da) / den;
                    if (t < -1e-9 || t > 1 + 1e-9 || u < -1e-9 || u > 1 + 1e-9) continue;
                    Vec2 x{pa.from.x + da.x * t, pa.from.y + da.y * t};
                    int poly = pa.polygon;
                    bool at_vertex = false;
                    for (int v = 0; v < s.vertex_count(poly); ++v) {
                        const Vec2 c = s.vertex(poly, v);
                        if (len({x.x - c.x, x.y - c.y}) < 1e-6 * scale) at_vertex = true;
                    }
                    if (at_vertex) continue;
                    // A point on a glued side is moved to the copy across the smaller edge reference.
                    for (int e = 0; e < s.vertex_count(poly); ++e) {
                        const Vec2 p0 = s.vertex(poly, e), p1 = s.vertex(poly, e + 1);
                        const Vec2 d{p1.x - p0.x, p1.y - p0.y};
                        if (std::abs(cross2(d, {x.x - p0.x, x.y - p0.y})) / len(d) > 1e-9 * scale) continue;
                        const EdgeRef here{poly, e}, there = s.glued(here);
                        if (there < here) {
                            const Vec2 sh = s.translation(here);
                            x = {x.x + sh.x, x.y + sh.y};
                            poly = there.polygon;
                        }
                        break;
                    }
                    if (!points.insert({poly, key(x.x), key(x.y), ia, ib}).second) continue;
                    const int sign = den > 0 ? 1 : -1;
                    out.interior_signed += sign;
                    ++out.interior_count;
                }

    const size_t ka = a.components.size(), kb = b.components.size();
    for (size_t i = 0; i < ka; ++i)
        for (size_t j = 0; j < kb; ++j) {
            const auto& ea = a.components[i];
            const auto& eb = b.components[j];
            if (ea.end_sing != eb.end_sing) continue;
            const double cone = s.singularities()[ea.end_sing].cone_angle;
            const double a_in = ea.end_angle, a_out = a.components[(i + 1) % ka].start_angle;
            const double b_in = eb.end_angle, b_out = b.components[(j + 1) % kb].start_angle;
            out.singular_signed += interleave_sign(cone, a_in, a_out, b_in, b_out);
        }
    return out;
}

}  // namespace oracle

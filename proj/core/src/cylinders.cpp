#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "flatcurve/geodesics.hpp"

namespace flatcurve {

namespace {

// Slab of one polygon between two consecutive vertex heights.
struct Trapezoid {
    int polygon = 0;
    double lo = 0.0;
    double hi = 0.0;
    double area = 0.0;
};

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Width of the horizontal chord of polygon p at height h (in rotated coordinates) and its exit edge.
struct Chord {
    double left = 0.0;
    double right = 0.0;
    int exit_edge = -1;
};

Chord chord_at(const TranslationSurface& s, int p, Vec2 dir, Vec2 up, double h) {
    Chord c;
    bool have_l = false, have_r = false;
    for (int e = 0; e < s.vertex_count(p); ++e) {
        const Vec2 a = s.vertex(p, e), b = s.vertex(p, e + 1);
        const double ha = dot(a, up), hb = dot(b, up);
        if ((h - ha) * (h - hb) >= 0 || ha == hb) continue;
        const double t = (h - ha) / (hb - ha);
        const double w = dot(a + (b - a) * t, dir);
        if (hb > ha) {
            c.right = w;
            c.exit_edge = e;
            have_r = true;
        } else {
            c.left = w;
            have_l = true;
        }
    }
    if (!have_l || !have_r) throw GeometryError("height outside polygon slab");
    return c;
}

}  // namespace

CylinderDecomposition cylinder_decomposition(const TranslationSurface& s, double direction, double search_length) {
    const Vec2 dir{std::cos(direction), std::sin(direction)};
    const Vec2 up{-dir.y, dir.x};
    const double eps = s.eps();
    if (search_length <= 0) search_length = 100.0 * s.diameter();

    CylinderDecomposition out;
    out.direction = wrap(direction, kTwoPi);

    // Separatrices leaving every singularity in the given direction.
    std::map<std::pair<int, long long>, bool> seen;
    for (int p = 0; p < s.polygon_count(); ++p) {
        for (int v = 0; v < s.vertex_count(p); ++v) {
            const Corner c{p, v};
            const double a = ccw_angle(s.edge_vector(p, v), dir);
            const double inner = s.interior_angle(c);
            if (a > inner + kEpsAng && a < kTwoPi - kEpsAng) continue;
            auto sc = trace_ray(s, c, dir, search_length);
            if (!sc) throw GeometryError("direction is not periodic within the search bound");
            const auto key = std::make_pair(sc->start_sing, std::llround(sc->start_angle * 1e7));
            if (!seen.emplace(key, true).second) continue;
            sc->id = static_cast<int>(out.separatrices.size());
            out.separatrices.push_back(std::move(*sc));
        }
    }

    std::vector<Trapezoid> traps;
    std::vector<std::vector<int>> traps_of(s.polygon_count());
    for (int p = 0; p < s.polygon_count(); ++p) {
        std::vector<double> hs;
        for (const auto& v : s.polygon(p).vertices) hs.push_back(dot(v, up));
        std::sort(hs.begin(), hs.end());
        std::vector<double> levels;
        for (double h : hs)
            if (levels.empty() || h - levels.back() > eps) levels.push_back(h);
        for (size_t i = 0; i + 1 < levels.size(); ++i) {
            Trapezoid t{p, levels[i], levels[i + 1], 0.0};
            const Chord c = chord_at(s, p, dir, up, 0.5 * (t.lo + t.hi));
            t.area = (c.right - c.left) * (t.hi - t.lo);
            traps_of[p].push_back(static_cast<int>(traps.size()));
            traps.push_back(t);
        }
    }
    auto locate = [&](int p, double h) {
        for (int i : traps_of[p])
            if (h > traps[i].lo && h < traps[i].hi) return i;
        throw GeometryError("no slab at the glued height");
    };

    DisjointSets ds(static_cast<int>(traps.size()));
    for (size_t i = 0; i < traps.size(); ++i) {
        const Trapezoid& t = traps[i];
        const double h = 0.5 * (t.lo + t.hi);
        const Chord c = chord_at(s, t.polygon, dir, up, h);
        const EdgeRef ex{t.polygon, c.exit_edge};
        const double h2 = h + dot(s.translation(ex), up);
        ds.unite(static_cast<int>(i), locate(s.glued(ex).polygon, h2));
    }

    std::map<int, std::vector<int>> classes;
    for (size_t i = 0; i < traps.size(); ++i) classes[ds.find(static_cast<int>(i))].push_back(static_cast<int>(i));

    std::map<int, int> cylinder_of_root;
    for (const auto& [root, members] : classes) {
        double area = 0.0;
        for (int i : members) area += traps[i].area;

        // Follow one closed leaf through the middle of the first slab.
        const Trapezoid& t0 = traps[members.front()];
        int p = t0.polygon;
        double h = 0.5 * (t0.lo + t0.hi);
        Chord c = chord_at(s, p, dir, up, h);
        double w = c.left;
        const double w_start = w;
        double circ = 0.0;
        for (size_t steps = 0;; ++steps) {
            if (steps > 4 * traps.size() + 4) throw GeometryError("leaf does not close");
            c = chord_at(s, p, dir, up, h);
            circ += c.right - w;
            const EdgeRef ex{p, c.exit_edge};
            const Vec2 shift = s.translation(ex);
            h += dot(shift, up);
            w = c.right + dot(shift, dir);
            p = s.glued(ex).polygon;
            if (p == t0.polygon && std::abs(h - 0.5 * (t0.lo + t0.hi)) < 1e3 * eps &&
                std::abs(w - w_start) < 1e3 * eps)
                break;
        }
        Cylinder cyl;
        cyl.direction = out.direction;
        cyl.circumference = circ;
        cyl.height = area / circ;
        for (int i : members) cyl.slabs.push_back({traps[i].polygon, traps[i].lo, traps[i].hi});
        for (int i : members)
            if (traps[i].hi - traps[i].lo > cyl.height + 1e3 * eps)
                throw GeometryError("slab taller than its cylinder");
        cylinder_of_root[root] = static_cast<int>(out.cylinders.size());
        out.cylinders.push_back(cyl);
    }

    // Attach each separatrix to the cylinders directly above and below it.
    for (const auto& sep : out.separatrices) {
        for (const auto& piece : sep.pieces) {
            const double h = dot(0.5 * (piece.from + piece.to), up);
            for (int i : traps_of[piece.polygon]) {
                if (std::abs(traps[i].lo - h) < 1e3 * eps || std::abs(traps[i].hi - h) < 1e3 * eps) {
                    auto& b = out.cylinders[cylinder_of_root[ds.find(i)]].boundary;
                    if (std::find(b.begin(), b.end(), sep.id) == b.end()) b.push_back(sep.id);
                }
            }
        }
    }
    for (auto& cyl : out.cylinders) std::sort(cyl.boundary.begin(), cyl.boundary.end());
    std::stable_sort(out.cylinders.begin(), out.cylinders.end(), [](const Cylinder& a, const Cylinder& b) {
        if (std::abs(a.height - b.height) > 1e-9) return a.height < b.height;
        return a.circumference < b.circumference;
    });
    return out;
}

}  // namespace flatcurve

#include "flatcurve/builders.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <regex>

namespace flatcurve {

SurfaceSpec regular_ngon_spec(int n) {
    if (n < 8 || n % 2 != 0) throw InvalidArgument("regular n-gon requires n even and n >= 8");
    const int half = n / 2;
    const double r = 0.5 / std::sin(kPi / n);
    const Vec2 center{0.5, r * std::cos(kPi / n)};
    PolygonSpec p;
    p.id = 0;
    for (int k = 0; k < n; ++k) {
        const double phi = -kPi / 2 - kPi / n + kTwoPi * k / n;
        p.vertices.push_back(center + Vec2{r * std::cos(phi), r * std::sin(phi)});
        const int r_k = k % half;
        p.labels.push_back(std::to_string(r_k == 0 ? 1 : half + 1 - r_k));
    }
    p.vertices[0] = {0.0, 0.0};
    SurfaceSpec spec;
    spec.polygons.push_back(std::move(p));
    for (int k = 0; k < half; ++k) spec.gluings.push_back({{0, k}, {0, k + half}});
    return spec;
}

TranslationSurface regular_ngon(int n) {
    return build_surface(regular_ngon_spec(n), SurfaceFamily{"ngon", n, 0});
}

namespace {

constexpr double kDegenerate = 1e-12;

// Parity of the edges of P(i) glued to P(i+1).
int up_parity(int i, int n) {
    int u = 0;
    for (int k = 0; k < i; ++k) u = (1 + u + n) % 2;
    return u;
}

struct BmEdge {
    int dir = 0;  // direction index j, edge points along j*pi/n
    double length = 0.0;
};

std::vector<BmEdge> bm_edges(int i, int m, int n, bool normalized) {
    if (m < 2 || n < 2 || (m == 2 && n == 2)) throw InvalidArgument("Bouw-Moller requires m, n >= 2 and (m,n) != (2,2)");
    if (i < 0 || i >= m) throw InvalidArgument("polygon index out of range");
    const double scale = normalized ? 1.0 / std::sin(kPi / m) : 1.0;
    const double up = std::sin((i + 1) * kPi / m), down = std::sin(i * kPi / m);
    const int u = up_parity(i, n);
    std::vector<BmEdge> out;
    for (int j = 0; j < 2 * n; ++j) {
        const double len = (j % 2 == u) ? up : down;
        if (len < kDegenerate) continue;
        out.push_back({j, len * scale});
    }
    return out;
}

PolygonSpec polygon_from_edges(int id, const std::vector<BmEdge>& edges, int n) {
    PolygonSpec p;
    p.id = id;
    Vec2 cur{0, 0};
    for (const auto& e : edges) {
        p.vertices.push_back(cur);
        const double t = e.dir * kPi / n;
        cur += Vec2{std::cos(t), std::sin(t)} * e.length;
        p.labels.push_back("");
    }
    return p;
}

}  // namespace

PolygonSpec semi_regular_polygon(int i, int m, int n, bool normalized) {
    auto edges = bm_edges(i, m, n, normalized);
    if (edges.size() < 3) throw InvalidArgument("polygon degenerates for n = 2");
    return polygon_from_edges(i, edges, n);
}

SurfaceSpec bouw_moller_spec(int m, int n, bool normalized) {
    std::vector<std::vector<BmEdge>> edges(m);
    for (int i = 0; i < m; ++i) edges[i] = bm_edges(i, m, n, normalized);
    auto index_of = [&](int i, int dir) {
        for (size_t k = 0; k < edges[i].size(); ++k)
            if (edges[i][k].dir == dir) return static_cast<int>(k);
        throw GeometryError("Bouw-Moller builder: missing edge");
    };
    // With n = 2 the extremal polygons collapse to segments; their two neighbours' edges are glued directly.
    auto present = [&](int i) { return edges[i].size() >= 3; };

    SurfaceSpec spec;
    double cursor = 0.0;
    for (int i = 0; i < m; ++i) {
        if (!present(i)) continue;
        PolygonSpec p = polygon_from_edges(i, edges[i], n);
        double lo = 1e300, hi = -1e300;
        for (const auto& v : p.vertices) {
            lo = std::min(lo, v.x);
            hi = std::max(hi, v.x);
        }
        for (auto& v : p.vertices) v.x += cursor - lo;
        cursor += (hi - lo) + 0.5;
        spec.polygons.push_back(std::move(p));
    }
    auto poly = [&](int i) -> PolygonSpec& {
        for (auto& p : spec.polygons)
            if (p.id == i) return p;
        throw GeometryError("Bouw-Moller builder: missing polygon");
    };
    for (int i = 0; i + 1 < m; ++i) {
        const int u = up_parity(i, n);
        for (int j = u; j < 2 * n; j += 2) {
            const int jd = (j + n) % (2 * n);
            const std::string label = std::to_string(i) + "." + std::to_string(j);
            if (present(i) && present(i + 1)) {
                const int a = index_of(i, j), b = index_of(i + 1, jd);
                poly(i).labels[a] = label;
                poly(i + 1).labels[b] = label;
                spec.gluings.push_back({{i, a}, {i + 1, b}});
            } else if (!present(i) && j == u) {
                const int a = index_of(i + 1, jd), b = index_of(i + 1, (jd + 2) % (2 * n));
                poly(i + 1).labels[a] = poly(i + 1).labels[b] = label;
                spec.gluings.push_back({{i + 1, a}, {i + 1, b}});
            } else if (!present(i + 1) && j == u) {
                const int a = index_of(i, j), b = index_of(i, j + 2);
                poly(i).labels[a] = poly(i).labels[b] = label;
                spec.gluings.push_back({{i, a}, {i, b}});
            }
        }
    }
    return spec;
}

TranslationSurface bouw_moller(int m, int n, bool normalized) {
    return build_surface(bouw_moller_spec(m, n, normalized), SurfaceFamily{"bm", n, m});
}

TranslationSurface square_torus() {
    SurfaceSpec spec;
    spec.polygons.push_back({0, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {"a", "b", "a", "b"}});
    spec.gluings = {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}};
    return build_surface(spec, SurfaceFamily{"torus", 4, 0});
}

TranslationSurface scaled(const TranslationSurface& s, double factor) {
    SurfaceSpec spec = s.spec();
    for (auto& p : spec.polygons)
        for (auto& v : p.vertices) v = v * factor;
    return build_surface(spec, s.family());
}

bool is_builtin_name(const std::string& name) {
    static const std::regex re(R"(^(ngon\d+|bm\d+[_x]\d+|torus)$)");
    return std::regex_match(name, re);
}

TranslationSurface builtin_surface(const std::string& name) {
    std::smatch mt;
    static const std::regex ngon(R"(^ngon(\d+)$)"), bm(R"(^bm(\d+)[_x](\d+)$)");
    if (std::regex_match(name, mt, ngon)) return regular_ngon(std::stoi(mt[1]));
    if (std::regex_match(name, mt, bm)) return bouw_moller(std::stoi(mt[1]), std::stoi(mt[2]));
    if (name == "torus") return square_torus();
    throw InvalidArgument("unknown built-in surface '" + name + "'");
}

bool rotation_is_automorphism(const TranslationSurface& s, int n) {
    const double eps = s.eps() * 100;
    std::vector<int> shift(s.polygon_count());
    for (int p = 0; p < s.polygon_count(); ++p) {
        const int k = s.vertex_count(p);
        if (k % n != 0) return false;
        shift[p] = k / n;
        for (int e = 0; e < k; ++e) {
            const Vec2 turned = rotate(s.edge_vector(p, e), kTwoPi / n);
            if (norm(turned - s.edge_vector(p, (e + shift[p]) % k)) > eps) return false;
        }
    }
    for (const auto& g : s.gluings()) {
        const EdgeRef a{g.a.polygon, (g.a.edge + shift[g.a.polygon]) % s.vertex_count(g.a.polygon)};
        const EdgeRef b{g.b.polygon, (g.b.edge + shift[g.b.polygon]) % s.vertex_count(g.b.polygon)};
        if (!(s.glued(a) == b)) return false;
    }
    return true;
}

}  // namespace flatcurve

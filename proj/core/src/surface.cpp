#include "flatcurve/surface.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace flatcurve {

double polygon_area(const std::vector<Vec2>& v) {
    double a = 0.0;
    for (size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * a;
}

int TranslationSurface::polygon_index(int id) const {
    for (int i = 0; i < polygon_count(); ++i)
        if (polygons_[i].id == id) return i;
    throw GeometryError("unknown polygon id " + std::to_string(id));
}

Vec2 TranslationSurface::vertex(int p, int v) const {
    const auto& vs = polygons_[p].vertices;
    const int k = static_cast<int>(vs.size());
    return vs[((v % k) + k) % k];
}

double TranslationSurface::interior_angle(Corner c) const {
    const Vec2 out = vertex(c.polygon, c.vertex + 1) - vertex(c.polygon, c.vertex);
    const Vec2 back = vertex(c.polygon, c.vertex - 1) - vertex(c.polygon, c.vertex);
    return ccw_angle(out, back);
}

Corner TranslationSurface::next_corner(Corner c) const {
    const int k = vertex_count(c.polygon);
    const EdgeRef in{c.polygon, ((c.vertex - 1) % k + k) % k};
    const EdgeRef g = glued(in);
    return {g.polygon, g.edge};
}

namespace {

void validate_polygon(const PolygonSpec& p) {
    const auto& v = p.vertices;
    const std::string tag = "polygon " + std::to_string(p.id);
    if (v.size() < 3) throw GeometryError(tag + ": fewer than 3 vertices");
    if (p.labels.size() != v.size()) throw GeometryError(tag + ": one label per edge required");
    if (polygon_area(v) <= 0) throw GeometryError(tag + ": vertices are not counter-clockwise");
    const size_t k = v.size();
    for (size_t i = 0; i < k; ++i) {
        const Vec2 e0 = v[(i + 1) % k] - v[i];
        const Vec2 e1 = v[(i + 2) % k] - v[(i + 1) % k];
        if (norm(e0) <= 0) throw GeometryError(tag + ": repeated vertex");
        if (cross(e0, e1) <= kEpsAng * norm(e0) * norm(e1))
            throw GeometryError(tag + ": polygon is not strictly convex");
    }
}

}  // namespace

TranslationSurface build_surface(const SurfaceSpec& spec, SurfaceFamily family) {
    TranslationSurface s;
    s.spec_ = spec;
    s.family_ = std::move(family);
    s.polygons_ = spec.polygons;
    std::sort(s.polygons_.begin(), s.polygons_.end(),
              [](const PolygonSpec& a, const PolygonSpec& b) { return a.id < b.id; });
    for (size_t i = 1; i < s.polygons_.size(); ++i)
        if (s.polygons_[i].id == s.polygons_[i - 1].id)
            throw GeometryError("duplicate polygon id " + std::to_string(s.polygons_[i].id));
    if (s.polygons_.empty()) throw GeometryError("surface has no polygons");

    double l0 = -1;
    for (const auto& p : s.polygons_) {
        validate_polygon(p);
        const int k = static_cast<int>(p.vertices.size());
        for (int i = 0; i < k; ++i) {
            const double len = norm(p.vertices[(i + 1) % k] - p.vertices[i]);
            if (l0 < 0 || len < l0) l0 = len;
        }
        double dia = 0;
        for (const auto& a : p.vertices)
            for (const auto& b : p.vertices) dia = std::max(dia, norm(a - b));
        s.diameter_ = std::max(s.diameter_, dia);
        s.area_ += polygon_area(p.vertices);
    }
    s.l0_ = l0;
    const double eps = s.eps();

    const int np = s.polygon_count();
    s.partner_.resize(np);
    s.shift_.resize(np);
    std::vector<std::vector<bool>> used(np);
    for (int p = 0; p < np; ++p) {
        const int k = s.vertex_count(p);
        s.partner_[p].assign(k, EdgeRef{-1, -1});
        s.shift_[p].assign(k, Vec2{});
        used[p].assign(k, false);
    }
    auto resolve = [&](EdgeRef e) {
        EdgeRef r{s.polygon_index(e.polygon), e.edge};
        if (r.edge < 0 || r.edge >= s.vertex_count(r.polygon))
            throw GeometryError("edge index out of range in gluing");
        return r;
    };
    for (const auto& [ga, gb] : spec.gluings) {
        const EdgeRef a = resolve(ga), b = resolve(gb);
        for (const EdgeRef& e : {a, b}) {
            if (used[e.polygon][e.edge])
                throw GeometryError("edge (" + std::to_string(s.polygons_[e.polygon].id) + "," +
                                    std::to_string(e.edge) + ") glued twice");
            used[e.polygon][e.edge] = true;
        }
        if (a == b) throw GeometryError("edge glued to itself");
        const Vec2 va = s.edge_vector(a.polygon, a.edge), vb = s.edge_vector(b.polygon, b.edge);
        if (norm(va + vb) > eps * 10)
            throw GeometryError("glued edges are not parallel, opposite and of equal length");
        const Vec2 t = s.vertex(b.polygon, b.edge) - s.vertex(a.polygon, a.edge + 1);
        s.partner_[a.polygon][a.edge] = b;
        s.partner_[b.polygon][b.edge] = a;
        s.shift_[a.polygon][a.edge] = t;
        s.shift_[b.polygon][b.edge] = -t;
        s.gluings_.push_back({a, b, t});
    }
    for (int p = 0; p < np; ++p)
        for (int e = 0; e < s.vertex_count(p); ++e)
            if (!used[p][e])
                throw GeometryError("edge (" + std::to_string(s.polygons_[p].id) + "," +
                                    std::to_string(e) + ") is not glued");

    s.sing_of_.resize(np);
    s.corner_start_.resize(np);
    for (int p = 0; p < np; ++p) {
        s.sing_of_[p].assign(s.vertex_count(p), -1);
        s.corner_start_[p].assign(s.vertex_count(p), 0.0);
    }
    for (int p = 0; p < np; ++p) {
        for (int v = 0; v < s.vertex_count(p); ++v) {
            if (s.sing_of_[p][v] >= 0) continue;
            Singularity sing = corner_walk(s, p, v);
            sing.id = static_cast<int>(s.singularities_.size());
            const double turns = sing.cone_angle / kTwoPi;
            if (std::abs(turns - std::round(turns)) * kTwoPi > kEpsAng * 10 || std::round(turns) < 1) {
                std::ostringstream os;
                os << "cone angle " << sing.cone_angle << " at corner (" << s.polygons_[p].id << ","
                   << v << ") is not a positive multiple of 2pi";
                throw GeometryError(os.str());
            }
            for (const auto& f : sing.fan) {
                s.sing_of_[f.corner.polygon][f.corner.vertex] = sing.id;
                s.corner_start_[f.corner.polygon][f.corner.vertex] = f.start;
            }
            s.singularities_.push_back(std::move(sing));
        }
    }
    return s;
}

Singularity corner_walk(const TranslationSurface& s, int polygon, int vertex) {
    if (polygon < 0 || polygon >= s.polygon_count() || vertex < 0 || vertex >= s.vertex_count(polygon))
        throw GeometryError("invalid corner reference");
    std::vector<Corner> cycle;
    std::set<Corner> seen;
    Corner c{polygon, vertex};
    while (!seen.count(c)) {
        seen.insert(c);
        cycle.push_back(c);
        c = s.next_corner(c);
    }
    if (!(c == cycle.front())) throw GeometryError("corner walk does not close");
    const auto rep_it = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), rep_it, cycle.end());
    Singularity sing;
    sing.representative = cycle.front();
    double acc = 0.0;
    for (const Corner& k : cycle) {
        const double a = s.interior_angle(k);
        sing.fan.push_back({k, acc, a});
        acc += a;
    }
    sing.cone_angle = acc;
    return sing;
}

double angular_coordinate(const TranslationSurface& s, Corner c, Vec2 dir) {
    const Vec2 out = s.edge_vector(c.polygon, c.vertex);
    double a = ccw_angle(out, dir);
    if (a > kTwoPi - kEpsAng) a = 0.0;
    const double inner = s.interior_angle(c);
    if (a > inner + kEpsAng) throw GeometryError("ray lies outside the corner's sector");
    const double cone = s.singularities()[s.singularity_of(c)].cone_angle;
    const double t = wrap(s.corner_start(c) + a, cone);
    return t > cone - kEpsAng ? 0.0 : t;
}

Placement develop_across(const TranslationSurface& s, const Placement& placement, int edge) {
    const EdgeRef e{placement.polygon, edge};
    const EdgeRef g = s.glued(e);
    return {g.polygon, placement.offset - s.translation(e)};
}

}  // namespace flatcurve

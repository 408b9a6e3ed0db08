#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "flatcurve/errors.hpp"
#include "flatcurve/geometry.hpp"

namespace flatcurve {

struct PolygonSpec {
    int id = 0;
    std::vector<Vec2> vertices;       // counter-clockwise
    std::vector<std::string> labels;  // labels[k] names the edge vertices[k] -> vertices[k+1]
};

// In a SurfaceSpec `polygon` is a polygon id; inside a TranslationSurface it is an index.
struct EdgeRef {
    int polygon = 0;
    int edge = 0;
    auto operator<=>(const EdgeRef&) const = default;
};

struct Corner {
    int polygon = 0;
    int vertex = 0;
    auto operator<=>(const Corner&) const = default;
};

struct SurfaceSpec {
    std::vector<PolygonSpec> polygons;
    std::vector<std::pair<EdgeRef, EdgeRef>> gluings;
};

// Points of edge `a` plus `translation` are the matching points of edge `b`.
struct SideGluing {
    EdgeRef a;
    EdgeRef b;
    Vec2 translation;
};

struct FanEntry {
    Corner corner;
    double start = 0.0;  // angular coordinate of the corner's outgoing edge
    double angle = 0.0;  // interior angle
};

struct Singularity {
    int id = 0;
    Corner representative;
    double cone_angle = 0.0;
    std::vector<FanEntry> fan;  // counter-clockwise, starting at the representative
};

struct Placement {
    int polygon = 0;
    Vec2 offset;
};

struct SurfaceFamily {
    std::string kind = "custom";  // "ngon", "bm", "torus" or "custom"
    int n = 0;
    int m = 0;
};

class TranslationSurface {
public:
    TranslationSurface() = default;

    int polygon_count() const { return static_cast<int>(polygons_.size()); }
    const PolygonSpec& polygon(int index) const { return polygons_[index]; }
    int polygon_index(int id) const;
    int vertex_count(int p) const { return static_cast<int>(polygons_[p].vertices.size()); }
    Vec2 vertex(int p, int v) const;
    Vec2 edge_vector(int p, int e) const { return vertex(p, e + 1) - vertex(p, e); }
    const std::string& label(EdgeRef e) const { return polygons_[e.polygon].labels[e.edge]; }

    EdgeRef glued(EdgeRef e) const { return partner_[e.polygon][e.edge]; }
    Vec2 translation(EdgeRef e) const { return shift_[e.polygon][e.edge]; }
    const std::vector<SideGluing>& gluings() const { return gluings_; }

    double interior_angle(Corner c) const;
    Corner next_corner(Corner c) const;  // counter-clockwise neighbour around the vertex class

    const std::vector<Singularity>& singularities() const { return singularities_; }
    int singularity_of(Corner c) const { return sing_of_[c.polygon][mod(c)]; }
    double corner_start(Corner c) const { return corner_start_[c.polygon][mod(c)]; }

    double area() const { return area_; }
    double l0() const { return l0_; }
    double diameter() const { return diameter_; }
    double eps() const { return kEpsLen * l0_; }

    const SurfaceSpec& spec() const { return spec_; }
    const SurfaceFamily& family() const { return family_; }

private:
    friend TranslationSurface build_surface(const SurfaceSpec&, SurfaceFamily);
    int mod(Corner c) const {
        const int k = vertex_count(c.polygon);
        return ((c.vertex % k) + k) % k;
    }

    SurfaceSpec spec_;
    SurfaceFamily family_;
    std::vector<PolygonSpec> polygons_;
    std::vector<std::vector<EdgeRef>> partner_;
    std::vector<std::vector<Vec2>> shift_;
    std::vector<SideGluing> gluings_;
    std::vector<Singularity> singularities_;
    std::vector<std::vector<int>> sing_of_;
    std::vector<std::vector<double>> corner_start_;
    double area_ = 0.0;
    double l0_ = 0.0;
    double diameter_ = 0.0;
};

TranslationSurface build_surface(const SurfaceSpec& spec, SurfaceFamily family = {});

// Walks the vertex class of the given corner and returns its singularity record.
Singularity corner_walk(const TranslationSurface& s, int polygon, int vertex);

// Angular coordinate at the corner's singularity of a ray leaving the corner in direction `dir`.
double angular_coordinate(const TranslationSurface& s, Corner c, Vec2 dir);

// Placement of the copy glued across `edge` of the placed polygon.
Placement develop_across(const TranslationSurface& s, const Placement& placement, int edge);

double polygon_area(const std::vector<Vec2>& v);

}  // namespace flatcurve

#include "flatcurve/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace flatcurve {

namespace {

constexpr double kGap = 0.25;      // between polygons, in units of l0
constexpr double kMargin = 0.2;

const char* const kFill[] = {"#8ecae6", "#ffb703", "#90be6d", "#f4a261", "#cdb4db", "#e9c46a"};
const char* const kStroke[] = {"#d62828", "#1d3557", "#2a9d8f", "#6a4c93", "#e76f51", "#264653"};

std::string num(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    std::string s = buf;
    if (s == "-0.000000") s.erase(0, 1);
    return s;
}

std::vector<Vec2> clip_half_plane(const std::vector<Vec2>& poly, Vec2 normal, double bound, bool keep_above) {
    std::vector<Vec2> out;
    const auto inside = [&](Vec2 p) {
        const double h = dot(p, normal);
        return keep_above ? h >= bound : h <= bound;
    };
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec2 a = poly[i], b = poly[(i + 1) % poly.size()];
        const bool ia = inside(a), ib = inside(b);
        if (ia) out.push_back(a);
        if (ia != ib) {
            const double ha = dot(a, normal), hb = dot(b, normal);
            out.push_back(a + (b - a) * ((bound - ha) / (hb - ha)));
        }
    }
    return out;
}

struct Layout {
    std::vector<Vec2> offset;  // per polygon index
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
};

Layout layout(const TranslationSurface& s) {
    Layout L;
    const double unit = s.l0();
    double cursor = 0.0;
    bool first = true;
    for (int p = 0; p < s.polygon_count(); ++p) {
        double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
        for (const auto& v : s.polygon(p).vertices) {
            lo_x = std::min(lo_x, v.x);
            hi_x = std::max(hi_x, v.x);
            lo_y = std::min(lo_y, v.y);
            hi_y = std::max(hi_y, v.y);
        }
        const Vec2 off{cursor - lo_x, 0.0};
        L.offset.push_back(off);
        cursor += (hi_x - lo_x) + kGap * unit;
        if (first) {
            L.min_x = lo_x + off.x;
            L.min_y = lo_y;
            L.max_y = hi_y;
            first = false;
        }
        L.max_x = hi_x + off.x;
        L.min_y = std::min(L.min_y, lo_y);
        L.max_y = std::max(L.max_y, hi_y);
    }
    return L;
}

// Screen coordinates: y flipped so the picture reads like the polygon coordinates.
std::string point(Vec2 p) { return num(p.x) + "," + num(-p.y); }

std::string path_of(const std::vector<Vec2>& pts, Vec2 off) {
    std::string d;
    for (size_t i = 0; i < pts.size(); ++i) d += (i ? " L" : "M") + point(pts[i] + off);
    return d + " Z";
}

void draw_connection(std::ostringstream& o, const SaddleConnection& sc, const Layout& L, const char* colour,
                     double width, const std::string& cls) {
    for (const auto& pc : sc.pieces) {
        const Vec2 off = L.offset[pc.polygon];
        o << "    <line class=\"" << cls << "\" x1=\"" << num(pc.from.x + off.x) << "\" y1=\"" << num(-pc.from.y)
          << "\" x2=\"" << num(pc.to.x + off.x) << "\" y2=\"" << num(-pc.to.y) << "\" stroke=\"" << colour
          << "\" stroke-width=\"" << num(width) << "\"/>\n";
    }
}

}  // namespace

std::string render_svg(const TranslationSurface& s, const SvgOverlay& overlay) {
    const Layout L = layout(s);
    const double unit = s.l0();
    const double margin = kMargin * unit;
    const double w = L.max_x - L.min_x + 2 * margin;
    const double h = L.max_y - L.min_y + 2 * margin;
    const double stroke = 0.02 * unit;

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(L.min_x - margin) << ' '
      << num(-L.max_y - margin) << ' ' << num(w) << ' ' << num(h) << "\" width=\"" << num(200 * w / unit)
      << "\" height=\"" << num(200 * h / unit) << "\">\n";

    o << "  <g id=\"cylinders\">\n";
    if (overlay.cylinders) {
        const auto& d = *overlay.cylinders;
        const Vec2 up{-std::sin(d.direction), std::cos(d.direction)};
        for (size_t c = 0; c < d.cylinders.size(); ++c) {
            for (const auto& slab : d.cylinders[c].slabs) {
                auto poly = s.polygon(slab.polygon).vertices;
                poly = clip_half_plane(poly, up, slab.lo, true);
                poly = clip_half_plane(poly, up, slab.hi, false);
                if (poly.size() < 3) continue;
                o << "    <path class=\"cylinder\" data-cylinder=\"" << c << "\" d=\""
                  << path_of(poly, L.offset[slab.polygon]) << "\" fill=\"" << kFill[c % 6]
                  << "\" fill-opacity=\"0.6\" stroke=\"none\"/>\n";
            }
        }
    }
    o << "  </g>\n";

    o << "  <g id=\"polygons\">\n";
    for (int p = 0; p < s.polygon_count(); ++p) {
        const auto& poly = s.polygon(p);
        o << "    <path class=\"polygon\" data-polygon=\"" << poly.id << "\" d=\"" << path_of(poly.vertices, L.offset[p])
          << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" << num(stroke) << "\"/>\n";
    }
    for (int p = 0; p < s.polygon_count(); ++p) {
        const int k = s.vertex_count(p);
        for (int e = 0; e < k; ++e) {
            const Vec2 a = s.vertex(p, e), b = s.vertex(p, e + 1);
            const Vec2 out = rotate(b - a, -kPi / 2) / norm(b - a);
            const Vec2 at = (a + b) * 0.5 + out * (0.08 * unit) + L.offset[p];
            o << "    <text class=\"label\" x=\"" << num(at.x) << "\" y=\"" << num(-at.y) << "\" font-size=\""
              << num(0.12 * unit) << "\" text-anchor=\"middle\" dominant-baseline=\"middle\">"
              << s.label({p, e}) << "</text>\n";
        }
    }
    o << "  </g>\n";

    o << "  <g id=\"connections\">\n";
    for (size_t i = 0; i < overlay.connections.size(); ++i)
        draw_connection(o, overlay.connections[i], L, kStroke[i % 6], 1.5 * stroke, "connection");
    o << "  </g>\n";

    o << "  <g id=\"curves\">\n";
    for (size_t i = 0; i < overlay.curves.size(); ++i)
        for (const auto& sc : overlay.curves[i].components)
            draw_connection(o, sc, L, kStroke[(i + 3) % 6], 2.0 * stroke, "curve");
    o << "  </g>\n";

    o << "  <g id=\"singularities\">\n";
    for (int p = 0; p < s.polygon_count(); ++p)
        for (int v = 0; v < s.vertex_count(p); ++v) {
            const Vec2 at = s.vertex(p, v) + L.offset[p];
            o << "    <circle class=\"singularity\" data-singularity=\"" << s.singularity_of({p, v}) << "\" cx=\""
              << num(at.x) << "\" cy=\"" << num(-at.y) << "\" r=\"" << num(0.03 * unit) << "\" fill=\""
              << kStroke[s.singularity_of({p, v}) % 6] << "\"/>\n";
        }
    o << "  </g>\n";
    o << "</svg>\n";
    return o.str();
}

void emit_svg(const TranslationSurface& s, const SvgOverlay& overlay, const std::string& path) {
    const std::string text = render_svg(s, overlay);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace flatcurve

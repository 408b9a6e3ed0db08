#include "flatcurve/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "flatcurve/parallel.hpp"

namespace flatcurve {

namespace {

// Polygon copy in the development of one starting corner.
struct Node {
    int polygon = 0;
    Vec2 offset;
    int entry_edge = -1;  // edge of `polygon` shared with the parent copy
    int parent = -1;
    int parent_exit = -1;  // edge of the parent crossed to reach this copy
};

struct Window {
    int node = 0;
    Vec2 lo;  // clockwise boundary point
    Vec2 hi;  // counter-clockwise boundary point
};

long long quant(double x, double step) { return std::llround(x / step); }

class Developer {
public:
    Developer(const TranslationSurface& s, double lmax, long budget) : s_(s), lmax_(lmax), budget_(budget) {}

    std::vector<SaddleConnection> run(Corner c) {
        start_ = c;
        base_ = s_.vertex(c.polygon, c.vertex);
        nodes_.clear();
        out_.clear();
        nodes_.push_back({c.polygon, {0, 0}, -1, -1, -1});
        const int k = s_.vertex_count(c.polygon);
        const int v_next = (c.vertex + 1) % k;
        if (norm(s_.edge_vector(c.polygon, c.vertex)) <= lmax_ + s_.eps()) record(0, v_next);

        std::vector<Window> stack;
        stack.push_back({0, s_.vertex(c.polygon, c.vertex + 1), s_.vertex(c.polygon, c.vertex - 1)});
        while (!stack.empty()) {
            const Window w = stack.back();
            stack.pop_back();
            expand(w, stack);
        }
        return std::move(out_);
    }

private:
    // Signed angular separation of w from z seen from the base point, scaled to a length.
    double sep(Vec2 z, Vec2 w) const {
        const Vec2 a = z - base_, b = w - base_;
        return cross(a, b) / std::max(norm(a), norm(b));
    }

    void expand(const Window& w, std::vector<Window>& stack) {
        const Node node = nodes_[w.node];
        const int q = node.polygon;
        const int k = s_.vertex_count(q);
        const double eps = s_.eps();
        const bool is_base = w.node == 0;
        auto excluded_vertex = [&](int j) {
            if (is_base) return j == start_.vertex || j == (start_.vertex + 1) % k || j == (start_.vertex + k - 1) % k;
            return j == node.entry_edge || j == (node.entry_edge + 1) % k;
        };
        for (int j = 0; j < k; ++j) {
            if (excluded_vertex(j)) continue;
            const Vec2 p = s_.vertex(q, j) + node.offset;
            if (sep(w.lo, p) > eps && sep(p, w.hi) > eps && norm(p - base_) <= lmax_ + eps) record(w.node, j);
        }
        for (int e = 0; e < k; ++e) {
            if (is_base ? (e == start_.vertex || e == (start_.vertex + k - 1) % k) : e == node.entry_edge) continue;
            const Vec2 a = s_.vertex(q, e) + node.offset, b = s_.vertex(q, e + 1) + node.offset;
            if (cross(a - base_, b - base_) <= 0) continue;
            const Vec2 lo = cross(w.lo - base_, a - base_) > 0 ? a : w.lo;
            const Vec2 hi = cross(b - base_, w.hi - base_) > 0 ? b : w.hi;
            if (sep(lo, hi) <= eps) continue;
            if (dist_point_segment(base_, a, b) > lmax_ + eps) continue;
            if (++copies_ > budget_)
                throw ResourceError("saddle connection enumeration exceeded the copy budget of " +
                                    std::to_string(budget_));
            const Placement next = develop_across(s_, {q, node.offset}, e);
            const int entry = s_.glued({q, e}).edge;
            nodes_.push_back({next.polygon, next.offset, entry, w.node, e});
            stack.push_back({static_cast<int>(nodes_.size()) - 1, lo, hi});
        }
    }

    void record(int node_index, int vertex) {
        std::vector<int> chain;
        for (int i = node_index; i >= 0; i = nodes_[i].parent) chain.push_back(i);
        std::reverse(chain.begin(), chain.end());

        const Node& last = nodes_[chain.back()];
        const Vec2 target = s_.vertex(last.polygon, vertex) + last.offset;
        const Vec2 u = target - base_;

        SaddleConnection sc;
        sc.start_corner = start_;
        sc.end_corner = {last.polygon, vertex};
        sc.start_sing = s_.singularity_of(start_);
        sc.end_sing = s_.singularity_of(sc.end_corner);
        sc.holonomy = u;
        sc.length = norm(u);
        sc.direction = direction_angle(u);
        sc.start_angle = angular_coordinate(s_, start_, u);
        sc.end_angle = angular_coordinate(s_, sc.end_corner, -u);

        Vec2 from = base_;
        int from_edge = -1;
        int from_vertex = start_.vertex;
        for (size_t i = 0; i < chain.size(); ++i) {
            const Node& n = nodes_[chain[i]];
            Piece piece;
            piece.polygon = n.polygon;
            piece.from = from - n.offset;
            piece.from_edge = from_edge;
            piece.from_vertex = from_vertex;
            if (i + 1 < chain.size()) {
                const Node& child = nodes_[chain[i + 1]];
                const int exit = child.parent_exit;
                const Vec2 a = s_.vertex(n.polygon, exit) + n.offset;
                const Vec2 b = s_.vertex(n.polygon, exit + 1) + n.offset;
                const double t = cross(a - base_, b - a) / cross(u, b - a);
                const Vec2 x = base_ + u * t;
                piece.to = x - n.offset;
                piece.to_edge = exit;
                sc.crossings.push_back({n.polygon, exit});
                sc.cutting_sequence.push_back(s_.label({n.polygon, exit}));
                from = x;
                from_edge = child.entry_edge;
                from_vertex = -1;
            } else {
                piece.to = target - n.offset;
                piece.to_vertex = vertex;
            }
            sc.pieces.push_back(piece);
        }
        out_.push_back(std::move(sc));
    }

    const TranslationSurface& s_;
    double lmax_;
    long budget_;
    long copies_ = 0;
    Corner start_;
    Vec2 base_;
    std::vector<Node> nodes_;
    std::vector<SaddleConnection> out_;
};

auto sort_key(const SaddleConnection& sc, double unit) {
    return std::make_tuple(quant(sc.length, 1e-7 * unit), quant(sc.direction, 1e-7), sc.start_sing,
                           quant(sc.start_angle, 1e-7), sc.end_sing, quant(sc.end_angle, 1e-7));
}

}  // namespace

std::vector<SaddleConnection> enumerate_saddle_connections(const TranslationSurface& s,
                                                           const EnumerationConfig& cfg) {
    if (!(cfg.lmax > 0)) throw InvalidArgument("lmax must be positive");
    std::vector<Corner> corners;
    for (int p = 0; p < s.polygon_count(); ++p)
        for (int v = 0; v < s.vertex_count(p); ++v) corners.push_back({p, v});

    std::vector<std::vector<SaddleConnection>> per_corner(corners.size());
    parallel_for(corners.size(), [&](std::size_t i) {
        Developer dev(s, cfg.lmax, cfg.max_copies);
        per_corner[i] = dev.run(corners[i]);
    });

    const double unit = s.l0();
    std::vector<SaddleConnection> all;
    for (auto& v : per_corner)
        for (auto& sc : v) all.push_back(std::move(sc));

    std::stable_sort(all.begin(), all.end(), [&](const SaddleConnection& a, const SaddleConnection& b) {
        return sort_key(a, unit) < sort_key(b, unit);
    });

    using Key = std::tuple<int, int, long long, long long, long long, std::vector<std::string>>;
    std::map<Key, bool> seen;
    std::vector<SaddleConnection> out;
    out.reserve(all.size());
    for (auto& sc : all) {
        Key key{sc.start_sing,
                sc.end_sing,
                quant(sc.holonomy.x, 1e-7 * unit),
                quant(sc.holonomy.y, 1e-7 * unit),
                quant(sc.start_angle, 1e-7),
                sc.cutting_sequence};
        if (!seen.emplace(std::move(key), true).second) continue;
        sc.id = static_cast<int>(out.size());
        out.push_back(std::move(sc));
    }
    return out;
}

std::vector<SaddleConnection> enumerate_saddle_connections(const TranslationSurface& s, double lmax) {
    EnumerationConfig cfg;
    cfg.lmax = lmax;
    return enumerate_saddle_connections(s, cfg);
}

const std::vector<std::string>& cutting_sequence(const SaddleConnection& sc) { return sc.cutting_sequence; }

SaddleConnection reversed(const TranslationSurface& s, const SaddleConnection& sc) {
    SaddleConnection r;
    r.id = -1;
    r.start_sing = sc.end_sing;
    r.end_sing = sc.start_sing;
    r.start_angle = sc.end_angle;
    r.end_angle = sc.start_angle;
    r.start_corner = sc.end_corner;
    r.end_corner = sc.start_corner;
    r.holonomy = -sc.holonomy;
    r.length = sc.length;
    r.direction = direction_angle(r.holonomy);
    for (auto it = sc.crossings.rbegin(); it != sc.crossings.rend(); ++it) {
        const EdgeRef g = s.glued(*it);
        r.crossings.push_back(g);
        r.cutting_sequence.push_back(s.label(g));
    }
    for (auto it = sc.pieces.rbegin(); it != sc.pieces.rend(); ++it) {
        Piece p = *it;
        std::swap(p.from, p.to);
        std::swap(p.from_edge, p.to_edge);
        std::swap(p.from_vertex, p.to_vertex);
        r.pieces.push_back(p);
    }
    return r;
}

SaddleConnection side_connection(const TranslationSurface& s, Corner c) {
    const int k = s.vertex_count(c.polygon);
    c.vertex = ((c.vertex % k) + k) % k;
    const Vec2 e = s.edge_vector(c.polygon, c.vertex);
    SaddleConnection sc;
    sc.start_corner = c;
    sc.end_corner = {c.polygon, (c.vertex + 1) % k};
    sc.start_sing = s.singularity_of(sc.start_corner);
    sc.end_sing = s.singularity_of(sc.end_corner);
    sc.start_angle = angular_coordinate(s, sc.start_corner, e);
    sc.end_angle = angular_coordinate(s, sc.end_corner, -e);
    sc.holonomy = e;
    sc.length = norm(e);
    sc.direction = direction_angle(e);
    Piece p;
    p.polygon = c.polygon;
    p.from = s.vertex(c.polygon, c.vertex);
    p.to = s.vertex(c.polygon, c.vertex + 1);
    p.from_vertex = c.vertex;
    p.to_vertex = sc.end_corner.vertex;
    sc.pieces.push_back(p);
    return sc;
}

std::optional<SaddleConnection> trace_ray(const TranslationSurface& s, Corner c, Vec2 dir, double max_length) {
    const int k0 = s.vertex_count(c.polygon);
    c.vertex = ((c.vertex % k0) + k0) % k0;
    const Vec2 u = dir / norm(dir);
    const double start_angle = angular_coordinate(s, c, u);  // throws outside the sector
    const Vec2 out_edge = s.edge_vector(c.polygon, c.vertex);
    if (std::abs(cross(out_edge / norm(out_edge), u)) < kEpsAng && dot(out_edge, u) > 0) {
        if (norm(out_edge) > max_length + s.eps()) return std::nullopt;
        return side_connection(s, c);
    }
    const Vec2 back_edge = s.vertex(c.polygon, c.vertex - 1) - s.vertex(c.polygon, c.vertex);
    if (std::abs(cross(back_edge / norm(back_edge), u)) < kEpsAng && dot(back_edge, u) > 0) {
        const Corner prev{c.polygon, (c.vertex + k0 - 1) % k0};
        if (norm(back_edge) > max_length + s.eps()) return std::nullopt;
        SaddleConnection r = reversed(s, side_connection(s, prev));
        r.start_corner = c;
        r.start_angle = start_angle;
        return r;
    }

    SaddleConnection sc;
    sc.start_corner = c;
    sc.start_sing = s.singularity_of(c);
    sc.start_angle = start_angle;

    const double hit_tol = 1e-8 * s.l0();
    int q = c.polygon;
    Vec2 x = s.vertex(q, c.vertex);
    int from_edge = -1, from_vertex = c.vertex;
    double total = 0.0;
    for (;;) {
        const int k = s.vertex_count(q);
        double best_t = -1;
        int best_e = -1;
        for (int e = 0; e < k; ++e) {
            if (e == from_edge) continue;
            if (from_vertex >= 0 && (e == from_vertex || e == (from_vertex + k - 1) % k)) continue;
            const Vec2 a = s.vertex(q, e), b = s.vertex(q, e + 1);
            const double denom = cross(u, b - a);
            if (denom <= 0) continue;
            const double t = cross(a - x, b - a) / denom;
            if (t <= 0) continue;
            if (best_e < 0 || t < best_t) {
                best_t = t;
                best_e = e;
            }
        }
        if (best_e < 0) throw GeometryError("ray trace lost its exit edge");
        const Vec2 h = x + u * best_t;
        total += best_t;
        if (total > max_length + s.eps()) return std::nullopt;

        Piece piece;
        piece.polygon = q;
        piece.from = x;
        piece.from_edge = from_edge;
        piece.from_vertex = from_vertex;
        piece.to = h;

        const Vec2 a = s.vertex(q, best_e), b = s.vertex(q, best_e + 1);
        int hit_vertex = -1;
        if (norm(h - a) < hit_tol) hit_vertex = best_e;
        else if (norm(h - b) < hit_tol) hit_vertex = (best_e + 1) % k;
        if (hit_vertex >= 0) {
            piece.to = s.vertex(q, hit_vertex);
            piece.to_vertex = hit_vertex;
            sc.pieces.push_back(piece);
            sc.end_corner = {q, hit_vertex};
            sc.end_sing = s.singularity_of(sc.end_corner);
            break;
        }
        piece.to_edge = best_e;
        sc.pieces.push_back(piece);
        const EdgeRef ex{q, best_e};
        sc.crossings.push_back(ex);
        sc.cutting_sequence.push_back(s.label(ex));
        const EdgeRef g = s.glued(ex);
        x = h + s.translation(ex);
        q = g.polygon;
        from_edge = g.edge;
        from_vertex = -1;
    }

    Vec2 hol;
    for (const auto& p : sc.pieces) hol += p.to - p.from;
    sc.holonomy = hol;
    sc.length = norm(hol);
    sc.direction = direction_angle(hol);
    sc.end_angle = angular_coordinate(s, sc.end_corner, -u);
    return sc;
}

std::vector<int> reverse_index(const std::vector<SaddleConnection>& scs) {
    // Outgoing rays identify connections, so (start singularity, start angle) is a key.
    std::map<int, std::vector<std::pair<double, int>>> by_sing;
    for (const auto& sc : scs) by_sing[sc.start_sing].push_back({sc.start_angle, sc.id});
    for (auto& [_, v] : by_sing) std::sort(v.begin(), v.end());

    std::vector<int> rev(scs.size(), -1);
    const double tol = 1e-7;
    for (size_t i = 0; i < scs.size(); ++i) {
        const auto& sc = scs[i];
        auto it = by_sing.find(sc.end_sing);
        if (it == by_sing.end()) continue;
        const auto& v = it->second;
        auto match = [&](double a) {
            auto lb = std::lower_bound(v.begin(), v.end(), std::make_pair(a - tol, -1));
            for (; lb != v.end() && lb->first <= a + tol; ++lb) {
                const auto& cand = scs[static_cast<size_t>(lb->second)];
                if (std::abs(cand.length - sc.length) < tol * std::max(1.0, sc.length)) return lb->second;
            }
            return -1;
        };
        rev[i] = match(sc.end_angle);
    }
    return rev;
}

}  // namespace flatcurve

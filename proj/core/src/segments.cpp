#include "flatcurve/segments.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace flatcurve {

std::optional<int> sector_index(double theta, int n) {
    double t = wrap(theta, kPi);
    const double unit = kPi / n;
    const double x = t / unit;
    const double k = std::round(x);
    if (std::abs(x - k) * unit < kEpsAng * 10) return std::nullopt;
    return static_cast<int>(std::floor(x)) % n;
}

const char* to_string(SegmentKind k) {
    switch (k) {
        case SegmentKind::Whole: return "whole";
        case SegmentKind::Initial: return "initial";
        case SegmentKind::Terminal: return "terminal";
        case SegmentKind::Sandwiched: return "sandwiched";
        case SegmentKind::NonSandwiched: return "non-sandwiched";
    }
    return "?";
}

TransitionDiagram transition_diagram(const TranslationSurface& s, int sector, int samples_per_edge) {
    const int n = s.vertex_count(0);
    TransitionDiagram d;
    d.sector = sector;
    const double theta = (sector + 0.4) * kPi / n;
    const Vec2 u{std::cos(theta), std::sin(theta)};

    std::set<std::string> labels;
    std::set<std::pair<std::string, std::string>> links;
    for (int p = 0; p < s.polygon_count(); ++p) {
        const int k = s.vertex_count(p);
        for (int e = 0; e < k; ++e) {
            labels.insert(s.label({p, e}));
            const Vec2 a = s.vertex(p, e), b = s.vertex(p, e + 1);
            if (cross(b - a, u) <= 0) continue;  // flow leaves through this side
            for (int j = 0; j < samples_per_edge; ++j) {
                const Vec2 x = a + (b - a) * ((j + 0.5) / samples_per_edge);
                double best = -1;
                int exit = -1;
                for (int f = 0; f < k; ++f) {
                    if (f == e) continue;
                    const Vec2 c = s.vertex(p, f), dd = s.vertex(p, f + 1);
                    const double denom = cross(u, dd - c);
                    if (denom <= 0) continue;
                    const double t = cross(c - x, dd - c) / denom;
                    if (t > 0 && (exit < 0 || t < best)) {
                        best = t;
                        exit = f;
                    }
                }
                if (exit < 0) continue;
                std::string l1 = s.label({p, e}), l2 = s.label({p, exit});
                if (l2 < l1) std::swap(l1, l2);
                links.insert({l1, l2});
            }
        }
    }

    std::map<std::string, std::vector<std::string>> adj;
    std::vector<std::string> loops;
    for (const auto& [a, b] : links) {
        if (a == b) loops.push_back(a);
        else {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
    }
    const size_t h = labels.size();
    bool ok = loops.size() == 1 && links.size() == h;
    std::string first;
    if (ok) {
        for (const auto& l : labels) {
            const size_t deg = adj[l].size();
            if (deg > 2 || deg == 0) ok = false;
            if (deg == 1 && l != loops[0]) first = l;
        }
        if (h == 1) first = loops[0];
        if (first.empty()) ok = false;
    }
    if (ok) {
        std::string prev, cur = first;
        while (!cur.empty()) {
            d.sigma.push_back(cur);
            std::string next;
            for (const auto& c : adj[cur])
                if (c != prev) next = c;
            prev = cur;
            cur = next;
            if (d.sigma.size() > h) break;
        }
        ok = d.sigma.size() == h && d.sigma.back() == loops[0];
    }
    if (!ok) throw GeometryError("transition diagram of sector " + std::to_string(sector) + " is not a path with a loop");
    d.path_with_loop = true;
    for (size_t i = 0; i < d.sigma.size(); ++i) d.rank[d.sigma[i]] = static_cast<int>(i) + 1;
    return d;
}

double trip_lower_bound(int p, int q, int n) {
    const double c = std::cos(kTwoPi / n), sn = std::sin(kTwoPi / n);
    return std::hypot(p + (p - 1) * c, (q + 1) * sn);
}

NgonAnalyzer::NgonAnalyzer(const TranslationSurface& s) : s_(s) {
    if (s.family().kind != "ngon" || s.polygon_count() != 1)
        throw InvalidArgument("n-gon analysis requires a regular n-gon surface");
    n_ = s.vertex_count(0);
    for (int i = 0; i < n_; ++i) diagrams_.push_back(transition_diagram(s, i));
    const double a = kTwoPi / n_;
    const Vec2 base{2 + std::cos(a), std::sin(a)};
    const Vec2 mirrored{-base.x, base.y};
    for (int j = 0; j < n_; ++j) {
        delta_images_.push_back({j, rotate(base, a * j)});
        delta_images_.push_back({(1 + j) % n_, rotate(mirrored, a * j)});
    }
}

int NgonAnalyzer::vertex_step(const SaddleConnection& sc) const {
    if (sc.pieces.size() != 1) return 0;
    const auto& p = sc.pieces.front();
    return ((p.to_vertex - p.from_vertex) % n_ + n_) % n_;
}

bool NgonAnalyzer::is_side(const SaddleConnection& sc) const {
    const int k = vertex_step(sc);
    return k == 1 || k == n_ - 1;
}

bool NgonAnalyzer::is_diagonal(const SaddleConnection& sc) const {
    const int k = vertex_step(sc);
    return k > 1 && k < n_ - 1;
}

bool NgonAnalyzer::is_short_diagonal(const SaddleConnection& sc) const {
    const int k = vertex_step(sc);
    return k == 2 || k == n_ - 2;
}

bool NgonAnalyzer::is_long_diagonal(const SaddleConnection& sc) const { return vertex_step(sc) == n_ / 2; }

bool NgonAnalyzer::is_delta_image(const SaddleConnection& sc) const {
    const double tol = 1e-7;
    for (const auto& [v, h] : delta_images_)
        if (sc.start_corner.vertex == v && norm(sc.holonomy - h) < tol) return true;
    return false;
}

SegmentEnd NgonAnalyzer::vertex_end(int vertex, const TransitionDiagram* d) const {
    SegmentEnd e;
    e.singular = true;
    e.polygon = 0;
    e.vertex = vertex;
    e.point = s_.vertex(0, vertex);
    if (d) {
        const int r1 = d->rank.at(s_.label({0, ((vertex - 1) % n_ + n_) % n_}));
        const int r2 = d->rank.at(s_.label({0, vertex % n_}));
        e.rank = std::min(r1, r2);
    }
    return e;
}

Subdivision NgonAnalyzer::subdivide(const SaddleConnection& sc) const {
    Subdivision sub;
    if (sc.pieces.size() == 1 && (is_side(sc) || is_diagonal(sc))) {
        sub.boundary_direction = true;
        Segment seg;
        seg.kind = SegmentKind::Whole;
        seg.from = vertex_end(sc.pieces.front().from_vertex, nullptr);
        seg.to = vertex_end(sc.pieces.front().to_vertex, nullptr);
        seg.length = sc.length;
        sub.segments.push_back(seg);
        if (is_short_diagonal(sc)) sub.trips.push_back({0, 0, 1, 0, sc.length});
        return sub;
    }

    auto sec = sector_index(sc.direction, n_);
    if (!sec) {
        // Directions along a side or diagonal: use the diagram of the sector just counter-clockwise.
        sub.boundary_direction = true;
        sec = static_cast<int>(std::llround(wrap(sc.direction, kPi) / (kPi / n_))) % n_;
    }
    sub.sector = sec;
    const TransitionDiagram& d = diagrams_[*sec];
    const std::string& sandwiched = d.sigma.front();

    Segment cur;
    cur.first_piece = 0;
    cur.from = vertex_end(sc.pieces.front().from_vertex, &d);
    for (size_t i = 0; i < sc.pieces.size(); ++i) {
        const Piece& pc = sc.pieces[i];
        cur.length += pc.length();
        if (i + 1 == sc.pieces.size()) break;
        const EdgeRef ex = sc.crossings[i];
        const std::string& lab = s_.label(ex);
        if (lab == sandwiched) {
            ++cur.sandwiched_crossings;
            continue;
        }
        cur.last_piece = static_cast<int>(i);
        cur.to.singular = false;
        cur.to.polygon = ex.polygon;
        cur.to.edge = ex;
        cur.to.label = lab;
        cur.to.rank = d.rank.at(lab);
        cur.to.point = pc.to;
        sub.segments.push_back(cur);

        cur = Segment{};
        cur.first_piece = static_cast<int>(i) + 1;
        const EdgeRef in = s_.glued(ex);
        cur.from.polygon = in.polygon;
        cur.from.edge = in;
        cur.from.label = lab;
        cur.from.rank = d.rank.at(lab);
        cur.from.point = sc.pieces[i + 1].from;
    }
    cur.last_piece = static_cast<int>(sc.pieces.size()) - 1;
    cur.to = vertex_end(sc.pieces.back().to_vertex, &d);
    sub.segments.push_back(cur);

    const int k = static_cast<int>(sub.segments.size());
    for (int i = 0; i < k; ++i) {
        Segment& sg = sub.segments[i];
        sg.index = i;
        if (k == 1) sg.kind = SegmentKind::Whole;
        else if (i == 0) sg.kind = SegmentKind::Initial;
        else if (i == k - 1) sg.kind = SegmentKind::Terminal;
        else sg.kind = sg.sandwiched_crossings > 0 ? SegmentKind::Sandwiched : SegmentKind::NonSandwiched;
        sg.is_short = sg.kind == SegmentKind::Sandwiched || (!sg.from.singular && sg.from.rank == 2) ||
                      (!sg.to.singular && sg.to.rank == 2);
    }
    sub.counts.n = k;
    for (const auto& sg : sub.segments) {
        if (sg.kind == SegmentKind::Sandwiched) ++sub.counts.q;
        else ++sub.counts.p;
    }

    for (int i = 0; i < k;) {
        if (!sub.segments[i].is_short) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < k && sub.segments[j + 1].is_short) ++j;
        Trip t;
        t.first = i > 0 ? i - 1 : i;
        t.last = j + 1 < k ? j + 1 : j;
        t.p = t.last - t.first + 1;
        for (int x = t.first; x <= t.last; ++x) {
            if (sub.segments[x].kind == SegmentKind::Sandwiched) ++t.q;
            t.length += sub.segments[x].length;
        }
        sub.trips.push_back(t);
        i = j + 1;
    }
    return sub;
}

bool NgonAnalyzer::strictly_in_big_cylinder(const SaddleConnection& sc, const Subdivision& sub) const {
    if (is_long_diagonal(sc)) return true;
    if (!sub.sector || sc.cutting_sequence.empty()) return false;
    const TransitionDiagram& d = diagrams_[*sub.sector];
    const int h = n_ / 2;
    const std::set<std::string> big{d.sigma[h - 2], d.sigma[h - 1]};
    for (const auto& l : sc.cutting_sequence)
        if (!big.count(l)) return false;
    auto corner_sides = [&](int v) {
        return std::set<std::string>{s_.label({0, ((v - 1) % n_ + n_) % n_}), s_.label({0, v % n_})};
    };
    return corner_sides(sc.start_corner.vertex) == big && corner_sides(sc.end_corner.vertex) == big;
}

int NgonAnalyzer::classify_type(const SaddleConnection& sc, const Subdivision& sub) const {
    if (is_side(sc)) return 1;
    if (sub.counts.n == 2 && is_delta_image(sc)) return 2;
    if (strictly_in_big_cylinder(sc, sub)) return 3;
    return 4;
}

bool NgonAnalyzer::long_segment_check(const Segment& seg) const {
    if (seg.kind == SegmentKind::Sandwiched || seg.kind == SegmentKind::Whole) return false;
    return seg.from.rank >= 3 && seg.to.rank >= 3;
}

// ---------------------------------------------------------------------------

double bm_group_bound(int units) { return std::sqrt(2.0) * units + (std::sqrt(2.0) - 1.0); }

BmAnalyzer::BmAnalyzer(const TranslationSurface& s) : s_(s) {
    if (s.family().kind != "bm") throw InvalidArgument("Bouw-Moller analysis requires a Bouw-Moller surface");
    m_ = s.family().m;
    n_ = s.family().n;
    for (int p = 0; p < s.polygon_count(); ++p) index_of_polygon_.push_back(s.polygon(p).id);
}

int BmAnalyzer::level(int polygon) const {
    const int i = index_of_polygon_[polygon];
    return std::min(i, m_ - 1 - i);
}

bool BmAnalyzer::edge_is_long(int polygon, int edge) const {
    double shortest = 1e300;
    for (int e = 0; e < s_.vertex_count(polygon); ++e) shortest = std::min(shortest, norm(s_.edge_vector(polygon, e)));
    return norm(s_.edge_vector(polygon, edge)) > shortest * (1 + 1e-9);
}

bool BmAnalyzer::is_extremal_side(const SaddleConnection& sc) const {
    if (sc.pieces.size() != 1) return false;
    const Piece& p = sc.pieces.front();
    if (p.from_vertex < 0 || p.to_vertex < 0) return false;
    const int k = s_.vertex_count(p.polygon);
    int edge = -1;
    if ((p.from_vertex + 1) % k == p.to_vertex) edge = p.from_vertex;
    else if ((p.to_vertex + 1) % k == p.from_vertex) edge = p.to_vertex;
    if (edge < 0) return false;
    return level(p.polygon) == 0 || level(s_.glued({p.polygon, edge}).polygon) == 0;
}

namespace {

// Doubled boundary position: vertex v -> 2v, interior of side e -> 2e+1.
int boundary_position(const SegmentEnd& e) { return e.singular ? 2 * e.vertex : 2 * e.edge.edge + 1; }

// Sides strictly between two boundary positions, walking counter-clockwise from a to b.
std::vector<int> sides_between(int a, int b, int k) {
    std::vector<int> out;
    for (int x = (a + 1) % (2 * k); x != b; x = (x + 1) % (2 * k))
        if (x % 2 == 1) out.push_back(x / 2);
    return out;
}

}  // namespace

char BmAnalyzer::classify_single(const Segment& seg) const {
    const int k = s_.vertex_count(seg.polygon);
    const int a = boundary_position(seg.from), b = boundary_position(seg.to);
    const auto arc1 = sides_between(a, b, k), arc2 = sides_between(b, a, k);
    const size_t sep = std::min(arc1.size(), arc2.size());
    auto has_long = [&](const std::vector<int>& arc) {
        return std::any_of(arc.begin(), arc.end(), [&](int e) { return edge_is_long(seg.polygon, e); });
    };
    bool long_between;
    if (arc1.size() < arc2.size()) long_between = has_long(arc1);
    else if (arc2.size() < arc1.size()) long_between = has_long(arc2);
    else long_between = has_long(arc1) && has_long(arc2);

    const int r = level(seg.polygon);
    if (sep == 0 || r >= 3) return 'a';
    if (r == 2) return long_between ? 'c' : 'a';
    if (r == 1) {
        if (sep >= 2) return 'd';
        return long_between ? 'f' : 'g';
    }
    return sep >= 2 ? 'e' : 'h';
}

BmSubdivision BmAnalyzer::subdivide(const SaddleConnection& sc) const {
    BmSubdivision out;
    out.extremal_side = is_extremal_side(sc);
    const int count = static_cast<int>(sc.pieces.size());
    for (int i = 0; i < count; ++i) {
        const Piece& pc = sc.pieces[i];
        Segment seg;
        seg.index = i;
        seg.first_piece = seg.last_piece = i;
        seg.polygon = pc.polygon;
        seg.length = pc.length();
        auto end_of = [&](int vertex, int edge, Vec2 point) {
            SegmentEnd e;
            e.polygon = pc.polygon;
            e.point = point;
            if (vertex >= 0) {
                e.singular = true;
                e.vertex = vertex;
            } else {
                e.edge = {pc.polygon, edge};
                e.label = s_.label(e.edge);
            }
            return e;
        };
        seg.from = end_of(pc.from_vertex, pc.from_edge, pc.from);
        seg.to = end_of(pc.to_vertex, pc.to_edge, pc.to);
        seg.kind = count == 1 ? SegmentKind::Whole
                   : i == 0   ? SegmentKind::Initial
                   : i == count - 1 ? SegmentKind::Terminal
                                    : SegmentKind::NonSandwiched;
        const int k = s_.vertex_count(pc.polygon);
        if (!seg.from.singular && !seg.to.singular) {
            const int d = ((seg.to.edge.edge - seg.from.edge.edge) % k + k) % k;
            seg.adjacent = d == 1 || d == k - 1;
        }
        if (!seg.adjacent) seg.bm_class = classify_single(seg);
        out.segments.push_back(seg);
    }

    // Greedy pairing of consecutive adjacent segments.
    std::vector<int> pair_start;
    for (int i = 0; i < count;) {
        if (!out.segments[i].adjacent) {
            ++out.counts.p;
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < count && out.segments[j + 1].adjacent) ++j;
        for (int x = i; x + 1 <= j; x += 2) {
            const bool extremal = level(out.segments[x].polygon) == 0 || level(out.segments[x + 1].polygon) == 0;
            const char cls = extremal ? 'i' : 'b';
            out.segments[x].bm_class = out.segments[x + 1].bm_class = cls;
            pair_start.push_back(x);
            ++out.counts.q;
        }
        i = j + 1;
    }
    out.counts.n = out.counts.p + out.counts.q;

    std::vector<int> separations;
    int last_non_adjacent = -1;
    for (int i = 0; i < count; ++i) {
        if (out.segments[i].adjacent) continue;
        if (last_non_adjacent >= 0) separations.push_back(i - last_non_adjacent - 1);
        last_non_adjacent = i;
    }
    out.odd_strict = !separations.empty() &&
                     std::all_of(separations.begin(), separations.end(), [](int x) { return x % 2 == 1; });
    out.odd_allow_zero = std::all_of(separations.begin(), separations.end(), [](int x) { return x == 0 || x % 2 == 1; });

    // Grouping of the short classes with a long neighbour.
    std::vector<int> owner(count, -1);
    auto is_long_single = [&](int i) {
        const auto& sg = out.segments[i];
        return !sg.adjacent && sg.bm_class >= 'a' && sg.bm_class <= 'f';
    };
    auto add_group = [&](std::vector<int> members, int units, char anchor) {
        SegmentGroup g;
        g.anchor = anchor;
        g.units = units;
        for (int x : members) {
            g.length += out.segments[x].length;
            owner[x] = static_cast<int>(out.groups.size());
        }
        std::sort(members.begin(), members.end());
        g.segments = std::move(members);
        g.meets_bound = units == 0 || g.length >= bm_group_bound(units) - 1e-9;
        out.groups.push_back(std::move(g));
    };
    auto claim_partner = [&](int self_first, int self_last, int partner, char cls) {
        std::vector<int> members;
        for (int x = self_first; x <= self_last; ++x) members.push_back(x);
        if (partner < 0 || partner >= count) {
            out.findings.push_back(std::string("class ") + cls + " segment " + std::to_string(self_first) +
                                   " has no neighbour to pair with");
            add_group(members, cls == 'i' ? 1 : 1, cls);
            return;
        }
        if (!is_long_single(partner))
            out.findings.push_back(std::string("class ") + cls + " segment " + std::to_string(self_first) +
                                   " is paired with segment " + std::to_string(partner) + " which is not long");
        if (owner[partner] >= 0) {
            out.findings.push_back("overlap: segment " + std::to_string(partner) + " claimed by two groups");
            add_group(members, 1, cls);
            return;
        }
        members.push_back(partner);
        add_group(members, 2, cls);
    };

    for (int i = 0; i < count; ++i) {
        const Segment& sg = out.segments[i];
        if (sg.adjacent || (sg.bm_class != 'g' && sg.bm_class != 'h') || owner[i] >= 0) continue;
        const int k = s_.vertex_count(sg.polygon);
        const auto arc1 = sides_between(boundary_position(sg.from), boundary_position(sg.to), k);
        const auto arc2 = sides_between(boundary_position(sg.to), boundary_position(sg.from), k);
        const int support = arc1.size() == 1 ? arc1.front() : arc2.front();
        const Vec2 a = s_.vertex(sg.polygon, support), b = s_.vertex(sg.polygon, support + 1);
        const double d_from = dist_point_segment(sg.from.point, a, b);
        const double d_to = dist_point_segment(sg.to.point, a, b);
        const bool toward_to = sg.bm_class == 'g' ? d_to < d_from : d_to > d_from;
        int partner = toward_to ? i + 1 : i - 1;
        // At a singular end the rule points outside the connection; use the neighbour on the other side.
        if (partner < 0 || partner >= count) partner = toward_to ? i - 1 : i + 1;
        claim_partner(i, i, partner, sg.bm_class);
    }
    for (int x : pair_start) {
        if (out.segments[x].bm_class != 'i' || owner[x] >= 0) continue;
        const int partner = level(out.segments[x + 1].polygon) == 0 ? x + 2 : x - 1;
        claim_partner(x, x + 1, partner, 'i');
    }
    for (int x : pair_start)
        if (owner[x] < 0) add_group({x, x + 1}, 1, out.segments[x].bm_class);
    for (int i = 0; i < count; ++i) {
        if (owner[i] >= 0) continue;
        if (out.segments[i].adjacent) add_group({i}, 0, '-');
        else add_group({i}, 1, out.segments[i].bm_class);
    }
    std::sort(out.groups.begin(), out.groups.end(),
              [](const SegmentGroup& a, const SegmentGroup& b) { return a.segments.front() < b.segments.front(); });
    return out;
}

bool is_odd_saddle_connection(const BmSubdivision& sub) { return sub.odd_strict; }

}  // namespace flatcurve

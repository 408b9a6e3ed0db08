#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatcurve/geodesics.hpp"

namespace flatcurve {

// Sector i holds directions in (i*pi/n, (i+1)*pi/n) after reduction mod pi; multiples of pi/n give nullopt.
std::optional<int> sector_index(double theta, int n);

struct TransitionDiagram {
    int sector = 0;
    std::vector<std::string> sigma;     // sigma[0] is the sandwiched side; the loop sits on sigma.back()
    std::map<std::string, int> rank;    // label -> position in sigma, 1-based
    bool path_with_loop = false;
};

// Builds the "can follow" graph by shooting a generic direction of the sector from points on every side.
TransitionDiagram transition_diagram(const TranslationSurface& s, int sector, int samples_per_edge = 200);

enum class SegmentKind { Whole, Initial, Terminal, Sandwiched, NonSandwiched };
const char* to_string(SegmentKind k);

struct SegmentEnd {
    bool singular = false;
    int polygon = 0;
    int vertex = -1;      // when singular
    EdgeRef edge{-1, -1};  // when on a side
    std::string label;    // side label, or empty at a vertex
    int rank = 0;         // sigma-rank of the side; at a vertex the smaller rank of its two sides
    Vec2 point;
};

struct Segment {
    int index = 0;
    int first_piece = 0;
    int last_piece = 0;
    SegmentEnd from;
    SegmentEnd to;
    SegmentKind kind = SegmentKind::Whole;
    double length = 0.0;
    int sandwiched_crossings = 0;
    bool is_short = false;
    // Bouw-Moller decomposition only.
    bool adjacent = false;
    int polygon = -1;
    char bm_class = '-';
};

struct SegmentCounts {
    int n = 1;  // regular n-gon: number of segments; Bouw-Moller: p + q
    int p = 0;
    int q = 0;
};

struct Trip {
    int first = 0;  // segment indices, inclusive
    int last = 0;
    int p = 0;
    int q = 0;
    double length = 0.0;
};

struct Subdivision {
    std::optional<int> sector;  // sector whose diagram was used
    bool boundary_direction = false;
    std::vector<Segment> segments;
    SegmentCounts counts;
    std::vector<Trip> trips;
};

double trip_lower_bound(int p, int q, int n);

// Analysis of saddle connections on a regular n-gon built by regular_ngon().
class NgonAnalyzer {
public:
    explicit NgonAnalyzer(const TranslationSurface& s);

    int n() const { return n_; }
    const TransitionDiagram& diagram(int sector) const { return diagrams_.at(sector); }
    const std::vector<TransitionDiagram>& diagrams() const { return diagrams_; }

    Subdivision subdivide(const SaddleConnection& sc) const;
    int classify_type(const SaddleConnection& sc, const Subdivision& sub) const;
    int classify_type(const SaddleConnection& sc) const { return classify_type(sc, subdivide(sc)); }
    bool strictly_in_big_cylinder(const SaddleConnection& sc, const Subdivision& sub) const;

    // True iff both endpoint ranks are at least 3 on a non-sandwiched segment.
    bool long_segment_check(const Segment& seg) const;

    bool is_side(const SaddleConnection& sc) const;
    bool is_diagonal(const SaddleConnection& sc) const;
    bool is_short_diagonal(const SaddleConnection& sc) const;
    bool is_long_diagonal(const SaddleConnection& sc) const;
    bool is_delta_image(const SaddleConnection& sc) const;

private:
    int vertex_step(const SaddleConnection& sc) const;
    SegmentEnd vertex_end(int vertex, const TransitionDiagram* d) const;

    const TranslationSurface& s_;
    int n_ = 0;
    std::vector<TransitionDiagram> diagrams_;
    std::vector<std::pair<int, Vec2>> delta_images_;  // (start vertex, holonomy)
};

struct SegmentGroup {
    std::vector<int> segments;
    int units = 0;  // contribution to n_alpha
    double length = 0.0;
    char anchor = '-';  // class that formed the group
    bool meets_bound = true;
};

struct BmSubdivision {
    std::vector<Segment> segments;
    SegmentCounts counts;
    std::vector<SegmentGroup> groups;
    std::vector<std::string> findings;  // overlaps or partners that are not long
    bool extremal_side = false;         // side of P(0)/P(m-1), outside the length proposition
    bool odd_strict = false;            // at least one separation, all odd
    bool odd_allow_zero = false;        // every separation odd or zero
};

double bm_group_bound(int units);

// Analysis of saddle connections on a Bouw-Moller surface built by bouw_moller().
class BmAnalyzer {
public:
    explicit BmAnalyzer(const TranslationSurface& s);

    int m() const { return m_; }
    int n() const { return n_; }
    BmSubdivision subdivide(const SaddleConnection& sc) const;
    bool is_extremal_side(const SaddleConnection& sc) const;

private:
    int level(int polygon) const;  // min(i, m-1-i) of P(i)
    bool edge_is_long(int polygon, int edge) const;
    char classify_single(const Segment& seg) const;

    const TranslationSurface& s_;
    int m_ = 0;
    int n_ = 0;
    std::vector<int> index_of_polygon_;  // polygon index -> i
};

bool is_odd_saddle_connection(const BmSubdivision& sub);

}  // namespace flatcurve

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flatcurve/surface.hpp"

namespace flatcurve {

// Part of a saddle connection inside one polygon, in that polygon's coordinates.
// Endpoints lie either on an edge (edge >= 0) or at a vertex (vertex >= 0).
struct Piece {
    int polygon = 0;
    Vec2 from;
    Vec2 to;
    int from_edge = -1;
    int from_vertex = -1;
    int to_edge = -1;
    int to_vertex = -1;

    double length() const { return norm(to - from); }
};

struct SaddleConnection {
    int id = -1;
    int start_sing = 0;
    int end_sing = 0;
    double start_angle = 0.0;  // outgoing ray at the start singularity
    double end_angle = 0.0;    // ray at the end singularity pointing back along the connection
    Corner start_corner;       // corner containing the outgoing ray
    Corner end_corner;         // corner containing the returning ray
    Vec2 holonomy;
    double length = 0.0;
    double direction = 0.0;  // in [0, 2pi)
    std::vector<EdgeRef> crossings;  // edges exited, in order
    std::vector<std::string> cutting_sequence;
    std::vector<Piece> pieces;

    bool closed() const { return start_sing == end_sing; }
};

struct EnumerationConfig {
    double lmax = 6.0;           // absolute length bound
    long max_copies = 5'000'000;  // polygon copies explored before giving up
};

// Every oriented saddle connection of length <= lmax, sorted by (length, direction).
std::vector<SaddleConnection> enumerate_saddle_connections(const TranslationSurface& s,
                                                           const EnumerationConfig& cfg);
std::vector<SaddleConnection> enumerate_saddle_connections(const TranslationSurface& s, double lmax);

const std::vector<std::string>& cutting_sequence(const SaddleConnection& sc);

SaddleConnection reversed(const TranslationSurface& s, const SaddleConnection& sc);

// Straight-line flow from a corner in direction `dir`; empty if no singularity is reached within max_length.
std::optional<SaddleConnection> trace_ray(const TranslationSurface& s, Corner c, Vec2 dir, double max_length);

// The side leaving corner c along its outgoing edge.
SaddleConnection side_connection(const TranslationSurface& s, Corner c);

// Index of the reversed connection in a list produced by enumerate_saddle_connections, or -1.
std::vector<int> reverse_index(const std::vector<SaddleConnection>& scs);

// Part of a polygon between two heights measured along the normal of the cylinder direction.
struct Slab {
    int polygon = 0;
    double lo = 0.0;
    double hi = 0.0;
};

struct Cylinder {
    double direction = 0.0;
    double circumference = 0.0;
    double height = 0.0;
    std::vector<int> boundary;  // indices into `separatrices` of the decomposition
    std::vector<Slab> slabs;
};

struct CylinderDecomposition {
    double direction = 0.0;
    std::vector<SaddleConnection> separatrices;  // saddle connections parallel to the direction
    std::vector<Cylinder> cylinders;
};

CylinderDecomposition cylinder_decomposition(const TranslationSurface& s, double direction,
                                             double search_length = 0.0);

}  // namespace flatcurve

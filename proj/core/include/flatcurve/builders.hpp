#pragma once

#include <string>

#include "flatcurve/surface.hpp"

namespace flatcurve {

// Regular n-gon of unit side, opposite sides glued; n even, n >= 8.
// Sides carry labels "1".."n/2", assigned clockwise from the bottom side.
TranslationSurface regular_ngon(int n);
SurfaceSpec regular_ngon_spec(int n);

// Polygon P(i) of the Bouw-Moller surface S_{m,n}.
PolygonSpec semi_regular_polygon(int i, int m, int n, bool normalized = true);

TranslationSurface bouw_moller(int m, int n, bool normalized = true);
SurfaceSpec bouw_moller_spec(int m, int n, bool normalized = true);

TranslationSurface square_torus();

// Copy of the surface with every coordinate multiplied by `factor`.
TranslationSurface scaled(const TranslationSurface& s, double factor);

// "ngon10", "bm4_8", "torus"; throws InvalidArgument for anything else.
TranslationSurface builtin_surface(const std::string& name);
bool is_builtin_name(const std::string& name);

// True when rotating every polygon by 2pi/n maps each gluing onto a gluing.
bool rotation_is_automorphism(const TranslationSurface& s, int n);

}  // namespace flatcurve

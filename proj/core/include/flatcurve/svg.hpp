#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flatcurve/intersect.hpp"

namespace flatcurve {

struct SvgOverlay {
    std::vector<SaddleConnection> connections;
    std::optional<CylinderDecomposition> cylinders;
    std::vector<ClosedCurve> curves;
};

// Polygons in their own coordinates, y pointing up. Output is byte-stable: fixed element order, 6 decimals.
std::string render_svg(const TranslationSurface& s, const SvgOverlay& overlay = {});

void emit_svg(const TranslationSurface& s, const SvgOverlay& overlay, const std::string& path);

}  // namespace flatcurve

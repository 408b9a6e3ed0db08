#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flatcurve/kvolsearch.hpp"
#include "flatcurve/verify.hpp"

namespace flatcurve {

inline constexpr const char* kArtifactVersion = "1.0.0";

// Surface documents: {"polygons": [{"id", "vertices": [[x, y], ...], "labels"}], "gluings": [[[p, e], [p, e]], ...]}
// with an optional "family": {"kind", "n", "m"}. Throws IoError on malformed input.
TranslationSurface parse_surface(const std::string& text);
TranslationSurface read_surface_file(const std::string& path);
std::string surface_json(const TranslationSurface& s);

// A built-in name ("ngon10", "bm4_8", "torus") or a path to a surface document.
TranslationSurface load_surface(const std::string& name_or_path);

std::string enumeration_csv(const TranslationSurface& s, const std::vector<SaddleConnection>& scs);
std::string enumeration_json(const TranslationSurface& s, const std::vector<SaddleConnection>& scs, double lmax);
std::string kvol_json(const KVolReport& r);
std::string conjecture_json(const ConjectureReport& r);
std::string witness_json(const WitnessPair& w, int m, int n);
std::string suite_json(const SuiteReport& r);
std::string cylinders_json(const TranslationSurface& s, const CylinderDecomposition& d);
std::string intersection_json(const TranslationSurface& s, const ClosedCurve& a, const ClosedCurve& b,
                              const IntersectionReport& r, int id_a = 0, int id_b = 1);

std::string fnv1a_hex(std::string_view data);

struct RunManifest {
    std::string command;
    std::string config_hash;
    std::string surface_hash;
    std::string version = kArtifactVersion;
    double wall_seconds = 0.0;
    std::string result_digest;
};

std::string manifest_json(const RunManifest& m);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace flatcurve

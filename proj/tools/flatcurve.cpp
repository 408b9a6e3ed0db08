// flatcurve: command-line front end for the translation-surface library.
//
// Exit codes: 0 success, 1 a verification suite failed, 2 usage or input/output error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flatcurve/builders.hpp"
#include "flatcurve/report.hpp"
#include "flatcurve/svg.hpp"

namespace fc = flatcurve;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct Output {
    bool requested = false;
    std::string path;  // empty: stdout
};

CLI::Option* add_json_flag(CLI::App* cmd, Output& out) {
    return cmd->add_option("--json", out.path, "Write the JSON report to FILE, or to stdout without a value")
        ->expected(0, 1);
}

void publish(const Output& out, const std::string& json) {
    if (out.path.empty()) {
        std::cout << json;
        std::cout.flush();
    } else {
        fc::write_text_file(out.path, json);
    }
}

std::vector<int> parse_ids(const std::string& text) {
    std::vector<int> ids;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            size_t used = 0;
            ids.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw fc::InvalidArgument("not a connection id: '" + tok + "'");
        }
    }
    if (ids.empty()) throw fc::InvalidArgument("empty id list");
    return ids;
}

fc::ClosedCurve curve_from_ids(const std::vector<fc::SaddleConnection>& scs, const std::string& text) {
    std::vector<fc::SaddleConnection> comps;
    for (int id : parse_ids(text)) {
        if (id < 0 || id >= static_cast<int>(scs.size()))
            throw fc::InvalidArgument("unknown connection id " + std::to_string(id) + " (" +
                                      std::to_string(scs.size()) + " enumerated)");
        comps.push_back(scs[id]);
    }
    fc::ClosedCurve c = fc::make_closed_curve(std::move(comps));
    c.ids = parse_ids(text);
    return c;
}

std::vector<fc::SaddleConnection> enumerate_in_l0(const fc::TranslationSurface& s, double lmax) {
    return fc::enumerate_saddle_connections(s, lmax * s.l0());
}

std::string joined_argv(int argc, char** argv) {
    std::string out;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) out += ' ';
        out += argv[i];
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Translation surfaces: saddle connections, intersection numbers and extremal ratios"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(fc::kArtifactVersion));

    long seed = 0;
    app.add_option("--seed", seed, "Accepted for harness compatibility; the search is deterministic");
    std::string manifest_path;
    app.add_option("--manifest", manifest_path, "Write a run manifest (hashes, version, wall time) to FILE");

    std::string surface_arg = "ngon10";
    double lmax = 6.0;
    int max_components = 0;
    Output json_out;
    std::vector<CLI::Option*> json_flags;

    auto* build = app.add_subcommand("build", "Emit a surface document for a built-in family");
    std::string family = "ngon";
    int fam_n = 10, fam_m = 4;
    bool raw_lengths = false;
    std::string build_out;
    build->add_option("--family", family, "ngon, bm or torus")->check(CLI::IsMember({"ngon", "bm", "torus"}));
    build->add_option("--n", fam_n, "Polygon sides (ngon) or second Bouw-Moller parameter");
    build->add_option("--m", fam_m, "First Bouw-Moller parameter");
    build->add_flag("--raw-lengths", raw_lengths, "Keep the unnormalized Bouw-Moller side lengths");
    build->add_option("--out", build_out, "Output file (default stdout)");

    auto* enumerate = app.add_subcommand("enumerate", "List saddle connections up to a length bound");
    std::string csv_path;
    enumerate->add_option("--surface", surface_arg, "Built-in name (ngon10, bm4_8, torus, ...) or surface file");
    enumerate->add_option("--lmax", lmax, "Length bound in units of the shortest side")->check(CLI::PositiveNumber);
    enumerate->add_option("--csv", csv_path, "Write the table as CSV to FILE");
    json_flags.push_back(add_json_flag(enumerate, json_out));

    auto* kvol = app.add_subcommand("kvol", "Maximize |Int(a, b)| / (l(a) l(b)) over closed curves");
    kvol->add_option("--surface", surface_arg, "Built-in name or surface file");
    kvol->add_option("--lmax", lmax, "Per-component length bound in units of the shortest side")
        ->check(CLI::PositiveNumber);
    kvol->add_option("--max-components", max_components, "Saddle connections per curve (0: singularity count)")
        ->check(CLI::NonNegativeNumber);
    json_flags.push_back(add_json_flag(kvol, json_out));

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    std::string suite = "decagon";
    verify->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(fc::suite_names()));
    json_flags.push_back(add_json_flag(verify, json_out));

    auto* witness = app.add_subcommand("witness", "Build the twice-intersecting side curves on S_{m,n}");
    std::string witness_family = "bm";
    witness->add_option("--family", witness_family, "Only bm is supported")->check(CLI::IsMember({"bm"}));
    witness->add_option("--m", fam_m, "m")->required();
    witness->add_option("--n", fam_n, "n")->required();
    json_flags.push_back(add_json_flag(witness, json_out));

    auto* conjecture = app.add_subcommand("conjecture", "Explore the maximal ratio on S_{m,n} with gcd(m, n) = n");
    conjecture->add_option("--m", fam_m, "m")->required();
    conjecture->add_option("--n", fam_n, "n")->required();
    conjecture->add_option("--lmax", lmax, "Per-component length bound in units of l0")->check(CLI::PositiveNumber);
    conjecture->add_option("--max-components", max_components, "Saddle connections per curve")
        ->check(CLI::NonNegativeNumber);
    json_flags.push_back(add_json_flag(conjecture, json_out));

    auto* cylinders = app.add_subcommand("cylinders", "Cylinder decomposition in a direction");
    double direction = 0.0;
    cylinders->add_option("--surface", surface_arg, "Built-in name or surface file");
    cylinders->add_option("--direction", direction, "Direction angle in radians");
    json_flags.push_back(add_json_flag(cylinders, json_out));

    auto* svg = app.add_subcommand("svg", "Render the polygons with optional overlays");
    std::string svg_out;
    std::string svg_connections;
    std::vector<std::string> svg_curves;
    std::optional<double> svg_cylinders;
    svg->add_option("--surface", surface_arg, "Built-in name or surface file");
    svg->add_option("--out", svg_out, "SVG file")->required();
    svg->add_option("--lmax", lmax, "Enumeration bound for connection ids")->check(CLI::PositiveNumber);
    svg->add_option("--connections", svg_connections, "Comma-separated connection ids to draw");
    svg->add_option("--curve", svg_curves, "Comma-separated connection ids forming one closed curve (repeatable)");
    svg->add_option("--cylinders", svg_cylinders, "Shade the cylinders of this direction (radians)");

    auto* intersect = app.add_subcommand("intersect", "Algebraic intersection of two closed curves");
    std::string curve_a, curve_b;
    intersect->add_option("--surface", surface_arg, "Built-in name or surface file");
    intersect->add_option("--lmax", lmax, "Enumeration bound for connection ids")->check(CLI::PositiveNumber);
    intersect->add_option("--a", curve_a, "Comma-separated connection ids of the first curve")->required();
    intersect->add_option("--b", curve_b, "Comma-separated connection ids of the second curve")->required();
    json_flags.push_back(add_json_flag(intersect, json_out));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    for (const auto* opt : json_flags) json_out.requested = json_out.requested || opt->count() > 0;

    const auto t0 = std::chrono::steady_clock::now();
    std::string result;  // primary JSON (or CSV) payload, for the manifest digest
    std::string surface_text;
    std::ostringstream config;
    config << "lmax=" << lmax << ";max_components=" << max_components;
    int status = kOk;

    try {
        if (*build) {
            fc::TranslationSurface s;
            if (family == "ngon") s = fc::regular_ngon(fam_n);
            else if (family == "bm") s = fc::bouw_moller(fam_m, fam_n, !raw_lengths);
            else s = fc::square_torus();
            result = fc::surface_json(s);
            surface_text = result;
            config << ";family=" << family << ";m=" << fam_m << ";n=" << fam_n << ";raw=" << raw_lengths;
            if (build_out.empty()) std::cout << result;
            else fc::write_text_file(build_out, result);
        } else if (*enumerate) {
            const auto s = fc::load_surface(surface_arg);
            surface_text = fc::surface_json(s);
            const auto scs = enumerate_in_l0(s, lmax);
            result = fc::enumeration_json(s, scs, lmax);
            if (!csv_path.empty()) fc::write_text_file(csv_path, fc::enumeration_csv(s, scs));
            if (json_out.requested) publish(json_out, result);
            else if (csv_path.empty()) std::cout << fc::enumeration_csv(s, scs);
        } else if (*kvol) {
            const auto s = fc::load_surface(surface_arg);
            surface_text = fc::surface_json(s);
            fc::SearchConfig cfg;
            cfg.lmax = lmax;
            cfg.max_components = max_components;
            auto rep = fc::sup_ratio(s, cfg);
            rep.surface = surface_arg;
            result = fc::kvol_json(rep);
            if (json_out.requested) publish(json_out, result);
            else
                std::printf("surface %s  lmax %g  curves %zu  pairs %lld  max ratio %.12f  achievers %zu\n",
                            surface_arg.c_str(), lmax, rep.curves, rep.pairs_evaluated, rep.max_ratio,
                            rep.achievers.size());
        } else if (*verify) {
            const auto rep = fc::run_suite(suite);
            result = fc::suite_json(rep);
            config << ";suite=" << suite;
            if (json_out.requested) publish(json_out, result);
            else {
                for (const auto& c : rep.checks)
                    std::printf("%s %s%s  %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                                c.gating ? "" : " (info)", c.detail.c_str());
                std::printf("suite %s: %s\n", suite.c_str(), rep.passed() ? "PASS" : "FAIL");
            }
            if (!rep.passed()) status = kVerifyFailed;
        } else if (*witness) {
            const auto w = fc::construct_witness_pair_bm(fam_m, fam_n);
            result = fc::witness_json(w, fam_m, fam_n);
            config << ";m=" << fam_m << ";n=" << fam_n;
            if (json_out.requested) publish(json_out, result);
            else
                std::printf("S_{%d,%d}: |Int| = %d, lengths %.12f and %.12f, ratio %.12f\n", fam_m, fam_n,
                            std::abs(w.intersection.algebraic), w.alpha.length(), w.beta.length(), w.ratio);
        } else if (*conjecture) {
            fc::SearchConfig cfg;
            cfg.lmax = lmax;
            cfg.max_components = max_components == 0 ? 2 : max_components;
            const auto rep = fc::explore_conjecture(fam_m, fam_n, cfg);
            result = fc::conjecture_json(rep);
            config << ";m=" << fam_m << ";n=" << fam_n;
            if (json_out.requested) publish(json_out, result);
            else
                std::printf("S_{%d,%d}: max ratio %.12f (conjectured %.2f) equals %s exceeds %s\n", fam_m, fam_n,
                            rep.search.max_ratio, rep.conjectured, rep.equals_conjectured ? "yes" : "no",
                            rep.exceeds_conjectured ? "yes" : "no");
        } else if (*cylinders) {
            const auto s = fc::load_surface(surface_arg);
            surface_text = fc::surface_json(s);
            const auto d = fc::cylinder_decomposition(s, direction);
            result = fc::cylinders_json(s, d);
            config << ";direction=" << direction;
            if (json_out.requested) publish(json_out, result);
            else
                for (size_t i = 0; i < d.cylinders.size(); ++i)
                    std::printf("cylinder %zu: circumference %.12f height %.12f\n", i, d.cylinders[i].circumference,
                                d.cylinders[i].height);
        } else if (*svg) {
            const auto s = fc::load_surface(surface_arg);
            surface_text = fc::surface_json(s);
            fc::SvgOverlay overlay;
            if (!svg_connections.empty() || !svg_curves.empty()) {
                const auto scs = enumerate_in_l0(s, lmax);
                if (!svg_connections.empty())
                    for (int id : parse_ids(svg_connections)) {
                        if (id < 0 || id >= static_cast<int>(scs.size()))
                            throw fc::InvalidArgument("unknown connection id " + std::to_string(id));
                        overlay.connections.push_back(scs[id]);
                    }
                for (const auto& c : svg_curves) overlay.curves.push_back(curve_from_ids(scs, c));
            }
            if (svg_cylinders) overlay.cylinders = fc::cylinder_decomposition(s, *svg_cylinders);
            result = fc::render_svg(s, overlay);
            fc::write_text_file(svg_out, result);
        } else if (*intersect) {
            const auto s = fc::load_surface(surface_arg);
            surface_text = fc::surface_json(s);
            const auto scs = enumerate_in_l0(s, lmax);
            const auto a = curve_from_ids(scs, curve_a);
            const auto b = curve_from_ids(scs, curve_b);
            const auto r = fc::algebraic_intersection(s, a, b);
            result = fc::intersection_json(s, a, b, r);
            if (json_out.requested) publish(json_out, result);
            else
                std::printf("algebraic %d  geometric %d  interior %zu  singular %zu\n", r.algebraic, r.geometric,
                            r.interior.size(), r.singular.size());
        }

        if (!manifest_path.empty()) {
            fc::RunManifest m;
            m.command = joined_argv(argc, argv);
            m.config_hash = fc::fnv1a_hex(config.str());
            m.surface_hash = fc::fnv1a_hex(surface_text);
            m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            m.result_digest = fc::fnv1a_hex(result);
            fc::write_text_file(manifest_path, fc::manifest_json(m));
        }
    } catch (const fc::IoError& e) {
        std::fprintf(stderr, "flatcurve: %s\n", e.what());
        return kUsage;
    } catch (const fc::InvalidArgument& e) {
        std::fprintf(stderr, "flatcurve: %s\n", e.what());
        return kUsage;
    } catch (const fc::GeometryError& e) {
        std::fprintf(stderr, "flatcurve: invalid surface: %s\n", e.what());
        return kUsage;
    } catch (const fc::OverlapError& e) {
        std::fprintf(stderr, "flatcurve: %s\n", e.what());
        return kUsage;
    } catch (const fc::ResourceError& e) {
        std::fprintf(stderr, "flatcurve: %s; lower --lmax or --max-components\n", e.what());
        return kUsage;
    }
    return status;
}

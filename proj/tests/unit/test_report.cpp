#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <regex>
#include <sstream>

#include "flatcurve/builders.hpp"
#include "flatcurve/report.hpp"
#include "flatcurve/svg.hpp"

using namespace flatcurve;
using nlohmann::json;

namespace {

int count_of(const std::string& text, const std::string& needle) {
    int n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST(SurfaceDocument, RoundTrip) {
    for (const char* name : {"ngon10", "bm4_8", "torus"}) {
        const auto s = builtin_surface(name);
        // Vertices are written to 12 decimals, so one trip settles the document.
        const auto back = parse_surface(surface_json(s));
        const auto text = surface_json(back);
        EXPECT_EQ(surface_json(parse_surface(text)), text) << name;
        EXPECT_NEAR(back.area(), s.area(), 1e-9);
        EXPECT_EQ(back.singularities().size(), s.singularities().size());
        EXPECT_EQ(back.family().kind, s.family().kind);
    }
}

TEST(SurfaceDocument, ErrorsAreTyped) {
    EXPECT_THROW(parse_surface("{\"polygons\": ["), IoError);
    EXPECT_THROW(parse_surface("{\"polygons\": 3}"), IoError);
    EXPECT_THROW(read_surface_file("/nonexistent/surface.json"), IoError);
    const std::string unparallel =
        R"({"polygons": [{"id": 0, "vertices": [[0,0],[1,0],[1,1],[0,1]], "labels": ["a","a","b","b"]}],
            "gluings": [[[0,0],[0,1]], [[0,2],[0,3]]]})";
    EXPECT_THROW(parse_surface(unparallel), GeometryError);
    EXPECT_THROW(load_surface("ngon7"), InvalidArgument);
}

TEST(EnumerationTable, CsvHeaderAndRows) {
    const auto s = regular_ngon(10);
    const auto scs = enumerate_saddle_connections(s, 2.0);
    const auto csv = enumeration_csv(s, scs);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header,
              "id,start,end,hx,hy,length,angle,cutting_sequence,sector,n_count,p_count,q_count,type,trips,odd_flag,"
              "bm_classes");
    std::string row;
    int rows = 0;
    while (std::getline(in, row)) {
        EXPECT_EQ(std::count(row.begin(), row.end(), ','), 15) << row;
        ++rows;
    }
    EXPECT_EQ(rows, static_cast<int>(scs.size()));
}

TEST(EnumerationTable, JsonCarriesFamilyColumnsOnlyWhereTheyApply) {
    const auto t = square_torus();
    const auto doc = json::parse(enumeration_json(t, enumerate_saddle_connections(t, 2.0), 2.0));
    EXPECT_EQ(doc["schema"], "flatcurve.enumeration/1");
    ASSERT_FALSE(doc["saddle_connections"].empty());
    EXPECT_TRUE(doc["saddle_connections"][0]["type"].is_null());

    const auto s = regular_ngon(10);
    const auto d10 = json::parse(enumeration_json(s, enumerate_saddle_connections(s, 2.0), 2.0));
    EXPECT_EQ(d10["saddle_connections"][0]["type"], 1);
}

TEST(KVolDocument, SchemaAndWitness) {
    SearchConfig cfg;
    cfg.lmax = 3.0;
    cfg.max_components = 2;
    auto r = sup_ratio(regular_ngon(10), cfg);
    r.surface = "ngon10";
    const auto doc = json::parse(kvol_json(r));
    EXPECT_EQ(doc["schema"], "flatcurve.kvol/1");
    EXPECT_EQ(doc["surface"], "ngon10");
    EXPECT_NEAR(doc["max_ratio"].get<double>(), 0.5, 1e-12);
    EXPECT_TRUE(doc["witness"]["recomputed"].get<bool>());
    EXPECT_TRUE(doc.contains("closed_forms"));
    EXPECT_EQ(doc["achievers"].size(), r.achievers.size());
}

TEST(Digest, Fnv1a64) {
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Manifest, FieldsAndDeterminism) {
    RunManifest m;
    m.command = "flatcurve kvol --surface ngon10";
    m.config_hash = fnv1a_hex("cfg");
    m.surface_hash = fnv1a_hex(surface_json(regular_ngon(10)));
    m.result_digest = fnv1a_hex("out");
    const auto a = manifest_json(m), b = manifest_json(m);
    EXPECT_EQ(a, b);
    const auto doc = json::parse(a);
    for (const char* key : {"command", "config_hash", "surface_hash", "version", "wall_seconds", "result_digest"})
        EXPECT_TRUE(doc.contains(key)) << key;
    EXPECT_EQ(doc["version"], kArtifactVersion);
}

TEST(Svg, BareSurfaceHasNoOverlay) {
    const auto svg = render_svg(regular_ngon(10));
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_EQ(count_of(svg, "class=\"polygon\""), 1);
    EXPECT_EQ(count_of(svg, "class=\"connection\""), 0);
    EXPECT_EQ(count_of(svg, "class=\"cylinder\""), 0);
}

TEST(Svg, CylindersAndConnectionsAreDrawn) {
    const auto s = regular_ngon(10);
    SvgOverlay o;
    o.cylinders = cylinder_decomposition(s, 0.0);
    const auto scs = enumerate_saddle_connections(s, 3.0);
    o.connections.push_back(scs.back());
    const auto svg = render_svg(s, o);
    EXPECT_GT(count_of(svg, "data-cylinder=\"0\""), 0);
    EXPECT_GT(count_of(svg, "data-cylinder=\"1\""), 0);
    EXPECT_EQ(count_of(svg, "data-cylinder=\"2\""), 0);
    EXPECT_EQ(count_of(svg, "class=\"connection\""), static_cast<int>(scs.back().pieces.size()));
    EXPECT_EQ(render_svg(s, o), svg);
}

TEST(Svg, NumbersUseSixDecimals) {
    const auto svg = render_svg(bouw_moller(4, 8));
    // Attribute values only; edge labels are free text.
    const std::regex attribute(R"re(="([^"]*)")re"), number(R"(\d\.(\d+))");
    int seen = 0;
    for (std::sregex_iterator at(svg.begin(), svg.end(), attribute), end; at != end; ++at) {
        const std::string value = (*at)[1];
        for (std::sregex_iterator it(value.begin(), value.end(), number); it != end; ++it, ++seen)
            EXPECT_EQ((*it)[1].length(), 6) << value;
    }
    EXPECT_GT(seen, 0);
}

TEST(Svg, UnwritablePathIsAnIoError) {
    EXPECT_THROW(emit_svg(square_torus(), {}, "/nonexistent/dir/out.svg"), IoError);
    EXPECT_THROW(write_text_file("/nonexistent/dir/out.txt", "x"), IoError);
}

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "flatcurve/builders.hpp"
#include "flatcurve/geodesics.hpp"
#include "oracle.hpp"

using namespace flatcurve;

namespace {

const double pi = std::numbers::pi;
const double phi10 = 2 * std::cos(pi / 10);

bool has_length(const std::vector<SaddleConnection>& scs, double l) {
    return std::any_of(scs.begin(), scs.end(), [l](const SaddleConnection& c) { return std::abs(c.length - l) < 1e-9; });
}

std::multiset<std::pair<long long, long long>> holonomy_set(const std::vector<SaddleConnection>& scs) {
    std::multiset<std::pair<long long, long long>> out;
    for (const auto& c : scs) out.insert({std::llround(c.holonomy.x * 1e6), std::llround(c.holonomy.y * 1e6)});
    return out;
}

}  // namespace

TEST(Enumeration, DecagonUnitWindowHoldsExactlyTheTenSides) {
    const auto s = regular_ngon(10);
    const auto scs = enumerate_saddle_connections(s, 1.0 + 1e-6);
    ASSERT_EQ(scs.size(), 10u);
    for (const auto& c : scs) {
        EXPECT_NEAR(c.length, 1.0, 1e-12);
        EXPECT_TRUE(c.cutting_sequence.empty());
        EXPECT_EQ(c.pieces.size(), 1u);
        EXPECT_NE(c.start_sing, c.end_sing);
    }
}

TEST(Enumeration, MatchesBruteForceLatticeSearch) {
    for (int n : {8, 10, 12}) {
        const auto s = regular_ngon(n);
        const double lmax = 3.0;
        const auto scs = enumerate_saddle_connections(s, lmax);
        const auto brute = oracle::brute_force_connections(s, lmax, 4);
        ASSERT_EQ(scs.size(), brute.size()) << n;
        std::set<std::tuple<int, int, long long, long long>> lib;
        for (const auto& c : scs)
            lib.insert({c.start_corner.polygon, c.start_corner.vertex, std::llround(c.holonomy.x * 1e6),
                        std::llround(c.holonomy.y * 1e6)});
        for (const auto& b : brute)
            EXPECT_TRUE(lib.count({b.polygon, b.vertex, std::llround(b.holonomy.x * 1e6), std::llround(b.holonomy.y * 1e6)}))
                << "n=" << n << " missing (" << b.holonomy.x << ", " << b.holonomy.y << ")";
    }
}

TEST(Enumeration, TorusCountsPrimitiveVectors) {
    const auto t = square_torus();
    for (double lmax : {1.0, 2.5, 5.0, 7.3}) {
        EXPECT_EQ(static_cast<long>(enumerate_saddle_connections(t, lmax).size()), oracle::primitive_vectors(lmax))
            << lmax;
    }
}

TEST(Enumeration, EveryConnectionRetracesToItsEndpoint) {
    for (const char* name : {"ngon10", "ngon14", "bm4_8"}) {
        const auto s = builtin_surface(name);
        for (const auto& c : enumerate_saddle_connections(s, 5.0)) {
            const auto r = oracle::trace(s, c.start_corner.polygon, c.start_corner.vertex, c.holonomy, c.length);
            ASSERT_TRUE(r.reached) << name;
            EXPECT_NEAR(r.length, c.length, 1e-8);
            EXPECT_EQ(s.singularity_of({r.end_polygon, r.end_vertex}), c.end_sing);
            EXPECT_EQ(r.crossings, static_cast<int>(c.crossings.size()));
        }
    }
}

TEST(Enumeration, SortedAndInternallyConsistent) {
    const auto s = regular_ngon(10);
    const auto scs = enumerate_saddle_connections(s, 6.0);
    for (size_t i = 0; i < scs.size(); ++i) {
        const auto& c = scs[i];
        EXPECT_EQ(c.id, static_cast<int>(i));
        double piece_total = 0;
        for (const auto& p : c.pieces) piece_total += p.length();
        EXPECT_NEAR(piece_total, c.length, 1e-9);
        EXPECT_NEAR(norm(c.holonomy), c.length, 1e-9);
        EXPECT_NEAR(c.direction, direction_angle(c.holonomy), 1e-9);
        EXPECT_EQ(c.pieces.size(), c.crossings.size() + 1);
        EXPECT_EQ(c.cutting_sequence.size(), c.crossings.size());
        if (i > 0) {
            const auto& prev = scs[i - 1];
            EXPECT_TRUE(prev.length < c.length - 1e-7 ||
                        (std::abs(prev.length - c.length) <= 1e-7 && prev.direction <= c.direction + 1e-7));
        }
    }
}

TEST(Enumeration, ReverseIndexIsAnInvolution) {
    const auto s = regular_ngon(14);
    const auto scs = enumerate_saddle_connections(s, 4.0);
    const auto rev = reverse_index(scs);
    for (size_t i = 0; i < scs.size(); ++i) {
        ASSERT_GE(rev[i], 0);
        EXPECT_EQ(rev[rev[i]], static_cast<int>(i));
        EXPECT_NEAR(norm(scs[rev[i]].holonomy + scs[i].holonomy), 0.0, 1e-9);
        EXPECT_EQ(scs[rev[i]].start_sing, scs[i].end_sing);
        const auto r = reversed(s, scs[i]);
        EXPECT_EQ(r.start_sing, scs[rev[i]].start_sing);
        EXPECT_NEAR(norm(r.holonomy - scs[rev[i]].holonomy), 0.0, 1e-9);
    }
}

TEST(Enumeration, DecagonDiagonalLengthsAppear) {
    const auto scs = enumerate_saddle_connections(regular_ngon(10), 6.0);
    EXPECT_TRUE(has_length(scs, phi10));
    EXPECT_TRUE(has_length(scs, phi10 * phi10 - 1));
    EXPECT_TRUE(has_length(scs, phi10 * phi10 * phi10 - 2 * phi10));
    EXPECT_TRUE(has_length(scs, 1 + std::sqrt(5.0)));
    EXPECT_FALSE(has_length(scs, 3 * std::sqrt(2.0) - 1));
    EXPECT_TRUE(has_length(scs, std::sqrt(5 + 4 * std::cos(2 * pi / 10))));
}

TEST(Enumeration, RotationByTwoPiOverNPermutesConnections) {
    for (auto [name, n] : {std::pair{"ngon10", 10}, {"ngon12", 12}, {"bm4_8", 8}}) {
        const auto scs = enumerate_saddle_connections(builtin_surface(name), 4.0);
        auto turned = scs;
        for (auto& c : turned) c.holonomy = rotate(c.holonomy, 2 * pi / n);
        EXPECT_EQ(holonomy_set(scs), holonomy_set(turned)) << name;
    }
}

TEST(Enumeration, ScalingScalesLengthsOnly) {
    const auto s = regular_ngon(10);
    const auto big = scaled(s, 2.5);
    const auto a = enumerate_saddle_connections(s, 4.0);
    const auto b = enumerate_saddle_connections(big, 10.0);
    ASSERT_EQ(a.size(), b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(b[i].length, 2.5 * a[i].length, 1e-8);
        EXPECT_EQ(a[i].cutting_sequence, b[i].cutting_sequence);
    }
}

TEST(Enumeration, CopyBudgetIsEnforced) {
    EnumerationConfig cfg;
    cfg.lmax = 12.0;
    cfg.max_copies = 10;
    EXPECT_THROW(enumerate_saddle_connections(regular_ngon(10), cfg), ResourceError);
    EXPECT_THROW(enumerate_saddle_connections(regular_ngon(10), -1.0), InvalidArgument);
}

TEST(Enumeration, TraceRayAndSideConnection) {
    const auto s = regular_ngon(10);
    const auto side = side_connection(s, {0, 0});
    EXPECT_NEAR(side.length, 1.0, 1e-12);
    EXPECT_TRUE(side.crossings.empty());
    const auto hit = trace_ray(s, {0, 0}, s.edge_vector(0, 0), 2.0);
    ASSERT_TRUE(hit.has_value());
    EXPECT_NEAR(hit->length, 1.0, 1e-12);
    EXPECT_FALSE(trace_ray(s, {0, 0}, rotate({1, 0}, 0.3), 0.5).has_value());
}

TEST(Cylinders, HorizontalCounts) {
    EXPECT_EQ(cylinder_decomposition(regular_ngon(14), 0.0).cylinders.size(), 3u);
    EXPECT_EQ(cylinder_decomposition(regular_ngon(10), 0.0).cylinders.size(), 2u);
    const auto t = cylinder_decomposition(square_torus(), 0.0);
    ASSERT_EQ(t.cylinders.size(), 1u);
    EXPECT_NEAR(t.cylinders[0].circumference, 1.0, 1e-12);
    EXPECT_NEAR(t.cylinders[0].height, 1.0, 1e-12);
}

TEST(Cylinders, AreasSumToSurfaceArea) {
    for (const char* name : {"ngon10", "ngon14", "ngon8", "ngon12", "bm4_8", "bm6_8"}) {
        const auto s = builtin_surface(name);
        for (double dir : {0.0, pi / 2}) {
            const auto d = cylinder_decomposition(s, dir);
            double total = 0;
            for (const auto& c : d.cylinders) total += c.circumference * c.height;
            EXPECT_NEAR(total, s.area(), 1e-9 * s.area()) << name << " " << dir;
        }
    }
}

// Regular polygons are lattice surfaces: cylinders in a periodic direction share one modulus.
TEST(Cylinders, RegularPolygonCylindersHaveEqualModuli) {
    for (int n : {10, 14, 18}) {
        const auto d = cylinder_decomposition(regular_ngon(n), 0.0);
        const double ref = d.cylinders[0].height / d.cylinders[0].circumference;
        for (const auto& c : d.cylinders) EXPECT_NEAR(c.height / c.circumference, ref, 1e-9) << n;
    }
}

TEST(Cylinders, SeparatricesAreParallelAndBoundEveryCylinder) {
    const auto s = regular_ngon(14);
    const auto d = cylinder_decomposition(s, 0.0);
    for (const auto& sep : d.separatrices) EXPECT_NEAR(std::sin(sep.direction), 0.0, 1e-9);
    for (const auto& c : d.cylinders) {
        EXPECT_FALSE(c.boundary.empty());
        for (int b : c.boundary) EXPECT_LT(b, static_cast<int>(d.separatrices.size()));
    }
}

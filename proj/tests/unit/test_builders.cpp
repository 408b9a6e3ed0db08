#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "flatcurve/builders.hpp"
#include "oracle.hpp"

using namespace flatcurve;

namespace {

constexpr double kTol = 1e-9;
const double pi = std::numbers::pi;

std::vector<double> side_lengths(const PolygonSpec& p) {
    std::vector<double> out;
    for (size_t i = 0; i < p.vertices.size(); ++i) out.push_back(norm(p.vertices[(i + 1) % p.vertices.size()] - p.vertices[i]));
    return out;
}

}  // namespace

class RegularNgon : public ::testing::TestWithParam<int> {};

TEST_P(RegularNgon, SingularitiesAreaAndGenusMatchClosedForms) {
    const int n = GetParam();
    const auto s = regular_ngon(n);
    ASSERT_EQ(static_cast<int>(s.singularities().size()), oracle::ngon_singularity_count(n));
    double excess = 0;
    for (const auto& z : s.singularities()) {
        EXPECT_NEAR(z.cone_angle, oracle::ngon_cone_angle(n), kTol);
        excess += z.cone_angle / (2 * pi) - 1;
    }
    EXPECT_EQ(std::lround(1 + excess / 2), oracle::ngon_genus(n));
    EXPECT_NEAR(s.area(), oracle::ngon_area(n), 1e-9 * s.area());
    EXPECT_NEAR(s.l0(), 1.0, kTol);
    EXPECT_TRUE(rotation_is_automorphism(s, n));
}

INSTANTIATE_TEST_SUITE_P(EvenSizes, RegularNgon, ::testing::Values(8, 10, 12, 14, 16, 18, 22));

TEST(Builders, DecagonAreaValue) { EXPECT_NEAR(regular_ngon(10).area(), 7.694208843, 1e-9); }

TEST(Builders, BottomSideIsLabelOneAndHorizontal) {
    const auto s = regular_ngon(10);
    EXPECT_EQ(s.label({0, 0}), "1");
    EXPECT_NEAR(s.edge_vector(0, 0).y, 0.0, kTol);
    EXPECT_GT(s.edge_vector(0, 0).x, 0.0);
}

TEST(Builders, RejectsOddOrSmallN) {
    EXPECT_THROW(regular_ngon(7), InvalidArgument);
    EXPECT_THROW(regular_ngon(6), InvalidArgument);
}

TEST(Builders, FirstBouwMollerPolygonIsRegular) {
    for (auto [m, n] : {std::pair{4, 8}, {6, 8}, {8, 8}}) {
        const auto raw = semi_regular_polygon(0, m, n, false);
        ASSERT_EQ(static_cast<int>(raw.vertices.size()), n);
        for (double l : side_lengths(raw)) EXPECT_NEAR(l, std::sin(pi / m), kTol);
        for (double l : side_lengths(semi_regular_polygon(0, m, n, true))) EXPECT_NEAR(l, 1.0, kTol);
    }
}

TEST(Builders, SecondPolygonOfS88AlternatesRawLengths) {
    const auto p = semi_regular_polygon(1, 8, 8, false);
    const auto lengths = side_lengths(p);
    ASSERT_EQ(lengths.size(), 16u);
    std::vector<double> expected{std::sin(pi / 8), std::sin(2 * pi / 8)};
    const int first = std::abs(lengths[0] - expected[0]) < kTol ? 0 : 1;
    for (size_t i = 0; i < lengths.size(); ++i) EXPECT_NEAR(lengths[i], expected[(i + first) % 2], kTol);
    // Equiangular: every exterior turn is 2pi/16.
    for (size_t i = 0; i < 16; ++i) {
        const Vec2 a = p.vertices[(i + 1) % 16] - p.vertices[i];
        const Vec2 b = p.vertices[(i + 2) % 16] - p.vertices[(i + 1) % 16];
        EXPECT_NEAR(ccw_angle(a, b), 2 * pi / 16, 1e-12);
    }
}

TEST(Builders, NormalizedLongSideOfSecondPolygon) {
    for (int m : {4, 6, 8}) {
        const auto lengths = side_lengths(semi_regular_polygon(1, m, 8, true));
        EXPECT_NEAR(*std::max_element(lengths.begin(), lengths.end()), 2 * std::cos(pi / m), kTol) << m;
    }
}

class BouwMollerShape : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(BouwMollerShape, HasGcdSingularities) {
    const auto [m, n] = GetParam();
    const auto s = bouw_moller(m, n);
    EXPECT_EQ(static_cast<int>(s.singularities().size()), std::gcd(m, n));
    EXPECT_EQ(s.polygon_count(), m);
    EXPECT_NEAR(s.l0(), 1.0, kTol);
    double total = 0;
    for (const auto& z : s.singularities()) total += z.cone_angle;
    double corners = 0;
    for (int p = 0; p < s.polygon_count(); ++p) corners += (s.vertex_count(p) - 2) * pi;
    EXPECT_NEAR(total, corners, 1e-9);
}

TEST_P(BouwMollerShape, RotationByTwoPiOverNIsAnAutomorphism) {
    const auto [m, n] = GetParam();
    EXPECT_TRUE(rotation_is_automorphism(bouw_moller(m, n), n));
}

INSTANTIATE_TEST_SUITE_P(Parameters, BouwMollerShape,
                         ::testing::Values(std::pair{4, 8}, std::pair{6, 8}, std::pair{8, 4}, std::pair{6, 9},
                                           std::pair{8, 8}, std::pair{4, 6}, std::pair{5, 7}));

// With raw side lengths the two surfaces differ by a shear of determinant sin(pi/m) / sin(pi/n).
TEST(Builders, DualBouwMollerPairsShareAreaAndSingularityCount) {
    for (auto [m, n] : {std::pair{4, 8}, {6, 9}, {4, 6}, {5, 7}}) {
        const auto a = bouw_moller(m, n, false), b = bouw_moller(n, m, false);
        EXPECT_EQ(a.singularities().size(), b.singularities().size());
        EXPECT_NEAR(a.area() * std::sin(pi / n), b.area() * std::sin(pi / m), 1e-9 * a.area()) << m << "," << n;
    }
}

TEST(Builders, BuiltinNames) {
    EXPECT_TRUE(is_builtin_name("ngon10"));
    EXPECT_TRUE(is_builtin_name("bm4_8"));
    EXPECT_TRUE(is_builtin_name("torus"));
    EXPECT_FALSE(is_builtin_name("decagon.json"));
    EXPECT_THROW(builtin_surface("sphere"), InvalidArgument);
    EXPECT_EQ(builtin_surface("bm6x8").polygon_count(), 6);
}

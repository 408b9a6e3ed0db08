#pragma once

#include <cmath>
#include <numbers>

namespace flatcurve {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Length and angle tolerances, in units of the shortest side.
inline constexpr double kEpsLen = 1e-9;
inline constexpr double kEpsAng = 1e-9;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(Vec2 o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    Vec2& operator-=(Vec2 o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 rotate(Vec2 a, double t) {
    const double c = std::cos(t), s = std::sin(t);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}

// Angle in [0, 2pi).
inline double direction_angle(Vec2 v) {
    double t = std::atan2(v.y, v.x);
    if (t < 0) t += kTwoPi;
    if (t >= kTwoPi) t -= kTwoPi;
    return t;
}

// Counter-clockwise angle from a to b, in [0, 2pi).
inline double ccw_angle(Vec2 a, Vec2 b) {
    double t = std::atan2(cross(a, b), dot(a, b));
    if (t < 0) t += kTwoPi;
    return t;
}

inline double wrap(double t, double period) {
    double r = std::fmod(t, period);
    if (r < 0) r += period;
    if (r >= period) r -= period;
    return r;
}

inline double dist_point_segment(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 d = b - a;
    const double l2 = dot(d, d);
    double t = l2 > 0 ? dot(p - a, d) / l2 : 0.0;
    t = t < 0 ? 0 : (t > 1 ? 1 : t);
    return norm(p - (a + d * t));
}

}  // namespace flatcurve

#pragma once

#include <cmath>

namespace droneplan {

// Energy
inline constexpr double kWhToJ = 3600.0;
inline constexpr double kJToWh = 1.0 / kWhToJ;

// Angle
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDegToRad = kPi / 180.0;
inline constexpr double kRadToDeg = 180.0 / kPi;

/// Planar vector in a local tangent frame (x east, y north), meters or m/s.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  /// Angle from +x axis in radians, in (-pi, pi].
  double angle() const { return std::atan2(y, x); }
};

inline Vec2 unit_from_angle(double theta_rad) {
  return {std::cos(theta_rad), std::sin(theta_rad)};
}

/// Normalizes an angle into [0, 2*pi).
inline double wrap_angle(double theta_rad) {
  double t = std::fmod(theta_rad, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  return t;
}

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

}  // namespace droneplan

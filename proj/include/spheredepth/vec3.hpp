#pragma once

#include <cmath>

namespace spheredepth {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }

  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const { return *this / norm(); }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline Vec3 midpoint_on_sphere(const Vec3& a, const Vec3& b) {
  return ((a + b) * 0.5).normalized();
}

// Angle between two unit vectors, stable near 0 and pi.
inline double angle_between(const Vec3& a, const Vec3& b) {
  return 2.0 * std::asin(0.5 * (a - b).norm());
}

}  // namespace spheredepth

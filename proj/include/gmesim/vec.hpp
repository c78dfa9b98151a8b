#pragma once

#include <cmath>

namespace gmesim {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::hypot(a.x, a.y, a.z); }
constexpr double norm2(const Vec3& a) { return dot(a, a); }

// Contravariant components (t, x, y, z); metric signature (-,+,+,+).
struct FourVector {
  double t = 0.0;
  Vec3 s{};

  friend constexpr bool operator==(const FourVector&, const FourVector&) = default;
};

constexpr double minkowski_dot(const FourVector& a, const FourVector& b) {
  return -a.t * b.t + dot(a.s, b.s);
}

}  // namespace gmesim

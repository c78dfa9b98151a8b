#pragma once

#include "gmesim/vec.hpp"

namespace gmesim {

enum class PathFamily { Static, Split, Uniform };

/// Timelike trajectory of a point mass over the window [0, T].
///
/// Positions are closed-form in t so that light-cone equations can be solved
/// at arbitrary times. Outside [0, T] the path is continued with its endpoint
/// velocity; `position`/`velocity` accept any t, `four_velocity` does not.
class Worldline {
 public:
  PathFamily family() const { return family_; }
  double mass() const { return mass_; }
  double duration() const { return T_; }
  const Vec3& base() const { return base_; }
  /// Split displacement (Split) or constant velocity (Uniform); zero for Static.
  const Vec3& offset() const { return offset_; }
  double ramp_time() const { return ramp_; }
  double max_speed() const { return max_speed_; }
  bool in_domain(double t) const { return t >= 0.0 && t <= T_; }

  Vec3 position(double t) const {
    switch (family_) {
      case PathFamily::Static: return base_;
      case PathFamily::Split: return base_ + split_fraction(t) * offset_;
      case PathFamily::Uniform: return base_ + t * offset_;
    }
    return base_;
  }

  Vec3 velocity(double t) const {
    switch (family_) {
      case PathFamily::Static: return {};
      case PathFamily::Split: return split_rate(t) * offset_;
      case PathFamily::Uniform: return offset_;
    }
    return {};
  }

  /// Lorentz factor u^0 = 1/sqrt(1 - |dz/dt|^2).
  double gamma(double t) const {
    if (family_ == PathFamily::Static) return 1.0;
    return 1.0 / std::sqrt(1.0 - norm2(velocity(t)));
  }

  /// u^mu = u^0 (1, dz/dt); throws DomainError outside [0, T].
  FourVector four_velocity(double t) const;

  friend Worldline make_static_worldline(double mass, const Vec3& position, double T);
  friend Worldline make_split_worldline(double mass, const Vec3& base, const Vec3& offset,
                                        double ramp_time, double T);
  friend Worldline make_uniform_worldline(double mass, const Vec3& start, const Vec3& velocity,
                                          double T);

 private:
  Worldline() = default;

  // Quintic smoothstep 10x^3 - 15x^4 + 6x^5: C^2 with zero velocity and
  // acceleration at both ends of each ramp.
  static double smoothstep(double x) { return x * x * x * (10.0 + x * (-15.0 + 6.0 * x)); }
  static double smoothstep_rate(double x) {
    const double y = x * (1.0 - x);
    return 30.0 * y * y;
  }

  double split_fraction(double t) const {
    if (t <= 0.0 || t >= T_) return 0.0;
    if (t < ramp_) return smoothstep(t / ramp_);
    const double to_end = T_ - t;
    if (to_end < ramp_) return smoothstep(to_end / ramp_);
    return 1.0;
  }

  double split_rate(double t) const {
    if (t <= 0.0 || t >= T_) return 0.0;
    if (t < ramp_) return smoothstep_rate(t / ramp_) / ramp_;
    const double to_end = T_ - t;
    if (to_end < ramp_) return -smoothstep_rate(to_end / ramp_) / ramp_;
    return 0.0;
  }

  PathFamily family_ = PathFamily::Static;
  double mass_ = 1.0;
  double T_ = 1.0;
  Vec3 base_{};
  Vec3 offset_{};
  double ramp_ = 0.0;
  double max_speed_ = 0.0;
};

Worldline make_static_worldline(double mass, const Vec3& position, double T);

/// Starts at `base`, moves smoothly to `base + offset` over [0, ramp_time],
/// holds, and returns over [T - ramp_time, T]. Peak speed is 15/8 |offset| / ramp_time.
Worldline make_split_worldline(double mass, const Vec3& base, const Vec3& offset,
                               double ramp_time, double T);

Worldline make_uniform_worldline(double mass, const Vec3& start, const Vec3& velocity, double T);

FourVector four_velocity(const Worldline& w, double t);

}  // namespace gmesim

#pragma once

namespace gmesim {

namespace si {
inline constexpr double speed_of_light = 299792458.0;        // m/s
inline constexpr double hbar = 1.054571817e-34;              // J s
inline constexpr double gravitational_constant = 6.67430e-11;  // m^3 kg^-1 s^-2
}  // namespace si

/// Natural units with c = hbar = 1 and one configurable length unit.
///
/// Internally lengths and times are measured in multiples of `length_scale`
/// (meters per internal unit, times in length_scale / c). Masses carry
/// inverse-length units, m -> m c / hbar, and G is the squared Planck length
/// in internal units unless overridden.
class UnitsSystem {
 public:
  explicit UnitsSystem(double length_scale_m = 1.0);
  UnitsSystem(double length_scale_m, double G_internal);

  static constexpr double c() { return 1.0; }
  static constexpr double hbar() { return 1.0; }
  double length_scale() const { return l0_; }
  double G() const { return G_; }
  bool G_overridden() const { return G_overridden_; }

  double length_from_si(double meters) const { return meters / l0_; }
  double length_to_si(double internal) const { return internal * l0_; }
  double time_from_si(double seconds) const { return seconds * si::speed_of_light / l0_; }
  double time_to_si(double internal) const { return internal * l0_ / si::speed_of_light; }
  double mass_from_si(double kg) const { return kg * si::speed_of_light * l0_ / si::hbar; }
  double mass_to_si(double internal) const { return internal * si::hbar / (si::speed_of_light * l0_); }

  /// hbar G / c^3 expressed in internal length^2.
  static double natural_G(double length_scale_m);

 private:
  double l0_;
  double G_;
  bool G_overridden_ = false;
};

}  // namespace gmesim

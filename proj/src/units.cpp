#include "gmesim/units.hpp"

#include "gmesim/errors.hpp"

#include <cmath>

namespace gmesim {

UnitsSystem::UnitsSystem(double length_scale_m)
    : l0_(length_scale_m), G_(0.0) {
  if (!(length_scale_m > 0.0) || !std::isfinite(length_scale_m)) {
    throw ValidationError("units: length_scale must be positive and finite");
  }
  G_ = natural_G(l0_);
}

UnitsSystem::UnitsSystem(double length_scale_m, double G_internal)
    : UnitsSystem(length_scale_m) {
  if (!(G_internal > 0.0) || !std::isfinite(G_internal)) {
    throw ValidationError("units: G must be positive and finite");
  }
  G_ = G_internal;
  G_overridden_ = true;
}

double UnitsSystem::natural_G(double length_scale_m) {
  const double planck_length2 = si::hbar * si::gravitational_constant /
                                (si::speed_of_light * si::speed_of_light * si::speed_of_light);
  return planck_length2 / (length_scale_m * length_scale_m);
}

}  // namespace gmesim

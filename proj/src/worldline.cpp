#include "gmesim/worldline.hpp"

#include "gmesim/errors.hpp"

#include <cmath>
#include <sstream>

namespace gmesim {

namespace {

void require_mass_and_window(double mass, double T) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw ValidationError("worldline: mass must be positive and finite");
  }
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw ValidationError("worldline: window T must be positive and finite");
  }
}

}  // namespace

FourVector Worldline::four_velocity(double t) const {
  if (!in_domain(t)) {
    std::ostringstream os;
    os << "four_velocity: t = " << t << " outside [0, " << T_ << "]";
    throw DomainError(os.str());
  }
  const Vec3 v = velocity(t);
  const double g = 1.0 / std::sqrt(1.0 - norm2(v));
  return {g, g * v};
}

FourVector four_velocity(const Worldline& w, double t) { return w.four_velocity(t); }

Worldline make_static_worldline(double mass, const Vec3& position, double T) {
  require_mass_and_window(mass, T);
  Worldline w;
  w.family_ = PathFamily::Static;
  w.mass_ = mass;
  w.T_ = T;
  w.base_ = position;
  return w;
}

Worldline make_split_worldline(double mass, const Vec3& base, const Vec3& offset,
                               double ramp_time, double T) {
  require_mass_and_window(mass, T);
  if (!(ramp_time > 0.0) || 2.0 * ramp_time > T) {
    throw ValidationError("split worldline: ramp_time must satisfy 0 < 2 ramp_time <= T");
  }
  const double peak = 1.875 * norm(offset) / ramp_time;
  if (!(peak < 1.0)) {
    std::ostringstream os;
    os << "split worldline: peak speed " << peak << " is not subluminal (offset/ramp_time too large)";
    throw ValidationError(os.str());
  }
  Worldline w;
  w.family_ = PathFamily::Split;
  w.mass_ = mass;
  w.T_ = T;
  w.base_ = base;
  w.offset_ = offset;
  w.ramp_ = ramp_time;
  w.max_speed_ = peak;
  return w;
}

Worldline make_uniform_worldline(double mass, const Vec3& start, const Vec3& velocity, double T) {
  require_mass_and_window(mass, T);
  const double speed = norm(velocity);
  if (!(speed < 1.0)) {
    throw ValidationError("uniform worldline: speed must be subluminal");
  }
  Worldline w;
  w.family_ = PathFamily::Uniform;
  w.mass_ = mass;
  w.T_ = T;
  w.base_ = start;
  w.offset_ = velocity;
  w.max_speed_ = speed;
  return w;
}

}  // namespace gmesim

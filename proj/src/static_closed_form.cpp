#include "gmesim/static_closed_form.hpp"

#include <cmath>
#include <numbers>

namespace gmesim {

double static_delta(double m1, double m2, double d, double T) {
  if (!(T > d)) return 0.0;
  return 2.0 * m1 * m2 * (T - d) / (4.0 * std::numbers::pi * d);
}

double static_hadamard(double m1, double m2, double d, double T) {
  const double pref = m1 * m2 / (std::numbers::pi * std::numbers::pi);
  if (T > 2.0 * d) {
    // atanh(x)/x + ln(T/d) + ln(1 - x^2)/2 with x = d/T; avoids the
    // cancellation between the two O(T/d) logarithms.
    const double x = d / T;
    return pref * (std::atanh(x) / x + std::log(T / d) + 0.5 * std::log1p(-x * x));
  }
  const double a = (T + d) / d;
  const double b = std::abs(T - d) / d;
  const double blogb = b > 0.0 ? b * std::log(b) : 0.0;
  const double sgn = T >= d ? 1.0 : -1.0;
  return pref * 0.5 * (a * std::log(a) - sgn * blogb);
}

double static_pair_energy(double m1, double m2, double d, double G) { return -G * m1 * m2 / d; }

}  // namespace gmesim

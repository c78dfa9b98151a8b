#include "gmesim/extrapolation.hpp"

#include "gmesim/errors.hpp"

#include <cmath>

namespace gmesim {

Extrapolation extrapolate_to_zero(std::span<const double> h, std::span<const double> y) {
  const std::size_t n = h.size();
  if (n < 2 || y.size() != n) throw ValidationError("extrapolation: need >= 2 matched samples");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (h[i] == h[j]) throw ValidationError("extrapolation: abscissae must be distinct");
    }
  }

  // After pass k, p[i] is the value at 0 of the interpolant through samples
  // i-k..i; p[k] is therefore the estimate from samples 0..k.
  std::vector<double> p(y.begin(), y.end());
  Extrapolation out;
  out.diagonal.push_back(p[0]);
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = n - 1; i >= k; --i) {
      p[i] = (h[i] * p[i - 1] - h[i - k] * p[i]) / (h[i] - h[i - k]);
    }
    out.diagonal.push_back(p[k]);
  }
  out.value = out.diagonal[n - 1];
  out.error = std::abs(out.diagonal[n - 1] - out.diagonal[n - 2]);
  if (n >= 3) {
    const double prev = std::abs(out.diagonal[n - 2] - out.diagonal[n - 3]);
    out.cauchy = out.error <= prev;
  }
  return out;
}

}  // namespace gmesim

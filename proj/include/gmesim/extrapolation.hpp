#pragma once

#include <span>
#include <vector>

namespace gmesim {

struct Extrapolation {
  double value = 0.0;
  double error = 0.0;  // |last diagonal - previous diagonal|
  std::vector<double> diagonal;  // zero-limit estimates using the first k+1 samples
  bool cauchy = true;            // diagonal differences shrink at the end
};

/// Polynomial (Neville) extrapolation of samples y(h_k) to h = 0.
/// Requires at least two samples with distinct abscissae.
Extrapolation extrapolate_to_zero(std::span<const double> h, std::span<const double> y);

}  // namespace gmesim

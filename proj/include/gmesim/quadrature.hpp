#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace gmesim {

struct QuadOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-7;
  int max_intervals = 4000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  int evaluations = 0;
  bool converged = false;
};

namespace detail {

struct GkSegment {
  double a, b, value, error;
  std::size_t order;  // creation order, tie-break for determinism
  bool splittable;
};

struct GkWorse {
  bool operator()(const GkSegment& x, const GkSegment& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.order > y.order;
  }
};

/// 21-point Kronrod rule with embedded 10-point Gauss rule and the usual
/// QUADPACK error heuristics (including the roundoff floor).
template <class F>
GkSegment gk21(F& f, double a, double b, std::size_t order) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
  using Gauss = boost::math::quadrature::gauss<double, 10>;
  static const auto& xk = Kronrod::abscissa();
  static const auto& wk = Kronrod::weights();
  static const auto& wg = Gauss::weights();

  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv1[10], fv2[10];
  const double fc = f(c);
  double resk = wk[0] * fc;
  double resg = 0.0;
  double resabs = std::abs(resk);
  for (int j = 1; j < 11; ++j) {
    const double dx = h * xk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    fv1[j - 1] = f1;
    fv2[j - 1] = f2;
    resk += wk[j] * (f1 + f2);
    resabs += wk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * resk;
  double resasc = wk[0] * std::abs(fc - mean);
  for (int j = 1; j < 11; ++j) {
    resasc += wk[j] * (std::abs(fv1[j - 1] - mean) + std::abs(fv2[j - 1] - mean));
  }
  const double habs = std::abs(h);
  resk *= h;
  resabs *= habs;
  resasc *= habs;
  double err = std::abs((resk - resg * h));
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);

  // Segments narrower than a few ulps of their midpoint cannot be refined.
  const double width_floor = 64.0 * eps * std::max(std::abs(a), std::abs(b));
  return {a, b, resk, err, order, std::abs(b - a) > width_floor};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature of f over [a, b].
/// Interior `breakpoints` (any order, out-of-range ones ignored) seed the
/// initial partition. Deterministic for a deterministic integrand.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, std::span<const double> breakpoints,
                              const QuadOptions& opt = {}) {
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  const double sign = a < b ? 1.0 : -1.0;
  const double lo = std::min(a, b), hi = std::max(a, b);

  std::vector<double> edges{lo};
  for (double p : breakpoints) {
    if (p > lo && p < hi) edges.push_back(p);
  }
  edges.push_back(hi);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<detail::GkSegment, std::vector<detail::GkSegment>, detail::GkWorse> heap;
  std::vector<detail::GkSegment> frozen;
  std::size_t order = 0;
  double total = 0.0, total_err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    auto s = detail::gk21(f, edges[i], edges[i + 1], order++);
    total += s.value;
    total_err += s.error;
    out.evaluations += 21;
    heap.push(s);
  }

  auto tolerance = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
  int count = static_cast<int>(heap.size());
  while (total_err > tolerance() && !heap.empty() && count < opt.max_intervals) {
    detail::GkSegment worst = heap.top();
    heap.pop();
    if (!worst.splittable) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::gk21(f, worst.a, mid, order++);
    auto right = detail::gk21(f, mid, worst.b, order++);
    out.evaluations += 42;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }

  // Re-sum in position order with compensation so the result does not
  // depend on the refinement history's rounding.
  std::vector<detail::GkSegment> all = std::move(frozen);
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  double sum = 0.0, comp = 0.0, err = 0.0;
  for (const auto& s : all) {
    const double t = sum + s.value;
    comp += std::abs(sum) >= std::abs(s.value) ? (sum - t) + s.value : (s.value - t) + sum;
    sum = t;
    err += s.error;
  }
  out.value = sign * (sum + comp);
  out.error = err;
  out.intervals = static_cast<int>(all.size());
  out.converged = err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(sum + comp));
  return out;
}

template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, const QuadOptions& opt = {}) {
  return integrate_adaptive(std::forward<F>(f), a, b, std::span<const double>{}, opt);
}

}  // namespace gmesim

#include "gmesim/kernels.hpp"

#include "gmesim/errors.hpp"
#include "gmesim/extrapolation.hpp"
#include "gmesim/retarded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gmesim {

std::string_view label(KernelKind k) {
  switch (k) {
    case KernelKind::Retarded: return "retarded";
    case KernelKind::Advanced: return "advanced";
    case KernelKind::RadiationDelta: return "delta";
    case KernelKind::Hadamard: return "hadamard";
    case KernelKind::CausalE: return "causal";
    case KernelKind::FeynmanG: return "feynman";
  }
  return "?";
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMachEps = std::numeric_limits<double>::epsilon();
// Poles closer to tau = 0 than this many regulators use the symmetric model.
constexpr double kPoleSeparationFactor = 10.0;
constexpr int kSeparationSamples = 513;

std::vector<double> kinks(const Worldline& w) {
  std::vector<double> out;
  if (w.family() == PathFamily::Split) {
    const double T = w.duration();
    if (w.ramp_time() > 0.0 && w.ramp_time() < T) out.push_back(w.ramp_time());
    if (T - w.ramp_time() > w.ramp_time()) out.push_back(T - w.ramp_time());
  }
  return out;
}

// P / (u1^0 u2^0) for unit four-velocities g(1, v).
double contraction_over_gammas(double g1, const Vec3& v1, double g2, const Vec3& v2) {
  const double p = g1 * g2 * (1.0 - dot(v1, v2));
  return (2.0 * p * p - 1.0) / (g1 * g2);
}

double contraction(double g1, const Vec3& v1, double g2, const Vec3& v2) {
  const double p = g1 * g2 * (1.0 - dot(v1, v2));
  return 2.0 * p * p - 1.0;
}

void check_same_window(const Worldline& a, const Worldline& b) {
  if (a.duration() != b.duration()) {
    throw ValidationError("pair functional: worldlines must share the window [0, T]");
  }
}

}  // namespace

std::vector<double> epsilon_schedule(double min_sep, const KernelOptions& opt) {
  if (!(opt.epsilon_scale > 0.0) || !(opt.epsilon_ratio > 0.0 && opt.epsilon_ratio < 1.0) ||
      opt.epsilon_levels < 3) {
    throw ValidationError("epsilon schedule: need scale > 0, 0 < ratio < 1, levels >= 3");
  }
  std::vector<double> eps(opt.epsilon_levels);
  double e = opt.epsilon_scale * min_sep;
  for (auto& x : eps) {
    x = e;
    e *= opt.epsilon_ratio;
  }
  return eps;
}

double min_separation(const Worldline& a, const Worldline& b) {
  const double T = a.duration();
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kSeparationSamples; ++k) {
    const double t = T * k / (kSeparationSamples - 1);
    best = std::min(best, norm(a.position(t) - b.position(t)));
  }
  return best;
}

double causal_onset(const Worldline& w1, const Worldline& w2) {
  // t = |z1(t) - z2(0)|: the advanced root on w1 seen from w2's start event.
  return detail::solve_light_cone(w1, 0.0, w2.position(0.0), -1).t_r;
}

// ---------------------------------------------------------------- delta ----

PairFunctional retarded_pair_functional(const Worldline& w1, const Worldline& w2,
                                        const KernelOptions& opt) {
  check_same_window(w1, w2);
  PairFunctional out;
  out.kind = KernelKind::Retarded;
  const double T = w1.duration();
  const double onset = causal_onset(w1, w2);
  if (!(onset < T)) return out;  // empty causal support: exactly zero

  auto integrand = [&](double t) {
    const Vec3 x = w1.position(t);
    const auto r = detail::solve_light_cone(w2, t, x, +1);
    if (!r.in_window || r.distance == 0.0) return 0.0;
    return contraction_over_gammas(w1.gamma(t), w1.velocity(t), w2.gamma(r.t_r), w2.velocity(r.t_r)) /
           (r.doppler_factor * r.distance);
  };

  std::vector<double> bp = kinks(w1);
  for (double k : kinks(w2)) {
    // field time at which the retarded point crosses a kink of the source
    bp.push_back(detail::solve_light_cone(w1, k, w2.position(k), -1).t_r);
  }
  const QuadResult q = integrate_adaptive(integrand, onset, T, bp, opt.quad);
  const double scale = w1.mass() * w2.mass() / (4.0 * kPi);
  out.value = scale * q.value;
  out.error = scale * q.error;
  if (!q.converged) {
    std::ostringstream os;
    os << "retarded functional: quadrature did not converge (estimate " << out.error << ")";
    throw AccuracyError(os.str(), out.error);
  }
  return out;
}

PairFunctional delta_pair_functional(const Worldline& w1, const Worldline& w2,
                                     const KernelOptions& opt) {
  const PairFunctional r12 = retarded_pair_functional(w1, w2, opt);
  const PairFunctional r21 = retarded_pair_functional(w2, w1, opt);
  PairFunctional out;
  out.kind = KernelKind::RadiationDelta;
  out.value = r12.real() + r21.real();
  out.error = r12.error + r21.error;
  return out;
}

PairFunctional causal_pair_functional(const Worldline& w1, const Worldline& w2,
                                      const KernelOptions& opt) {
  const PairFunctional r12 = retarded_pair_functional(w1, w2, opt);
  const PairFunctional r21 = retarded_pair_functional(w2, w1, opt);
  PairFunctional out;
  out.kind = KernelKind::CausalE;
  out.value = r21.real() - r12.real();
  out.error = r12.error + r21.error;
  return out;
}

// ------------------------------------------------------------- hadamard ----
//
// For each outer time t the inner variable is the lag tau = t - t' over
// [-u, t], u = T - t. The regulated kernel has two near-poles, at the
// retarded lag tau_r and at minus the advanced lag tau_a. A pole model with
// matched residues is integrated in closed form and quadrature only sees
// the bounded remainder. When both poles sit near tau = 0 (a worldline
// against itself, or touching branches) a symmetric model
// A0 Re 1/(rho^2 - (tau - i eps')^2) is used instead.

namespace {

struct HadamardEvaluator {
  const Worldline& w1;
  const Worldline& w2;
  double T;
  double eps;
  double pref;
  bool both_static;
  bool slow;  // v^2 below machine precision: symmetric model is exact
  std::vector<double> kinks2;
  QuadOptions inner_opt;
  double inner_abs_floor;

  HadamardEvaluator(const Worldline& a, const Worldline& b, double epsilon, const KernelOptions& opt)
      : w1(a), w2(b), T(a.duration()), eps(epsilon),
        pref(a.mass() * b.mass() / (2.0 * kPi * kPi)),
        both_static(a.family() == PathFamily::Static && b.family() == PathFamily::Static),
        slow(std::max(a.max_speed(), b.max_speed()) < std::sqrt(kMachEps)),
        kinks2(kinks(b)) {
    inner_opt.rel_tol = 0.1 * opt.quad.rel_tol;
    inner_opt.max_intervals = opt.inner_max_intervals;
    inner_abs_floor = 0.1 * opt.quad.abs_tol / T;
  }

  // Re 1/(rho^2 - (tau - i e)^2)
  static double symmetric_kernel(double rho2, double tau, double e) {
    const double re = rho2 - tau * tau + e * e;
    const double im = 2.0 * e * tau;
    return re / (re * re + im * im);
  }

  // Antiderivative of 1/(rho^2 - s^2): atanh(rho/s)/rho, -> 1/s as rho -> 0.
  static std::complex<double> symmetric_primitive(double rho, std::complex<double> s) {
    const std::complex<double> w = rho / s;
    std::complex<double> ratio;
    if (std::abs(w) < 1e-3) {
      const std::complex<double> w2 = w * w;
      ratio = 1.0 + w2 * (1.0 / 3.0 + w2 * (1.0 / 5.0 + w2 / 7.0));
    } else {
      ratio = std::atanh(w) / w;
    }
    return ratio / s;
  }

  double operator()(double t, double u) const {
    const Vec3 x = w1.position(t);
    const Vec3 v1 = w1.velocity(t);
    const double g1 = w1.gamma(t);
    const auto ret = detail::solve_light_cone(w2, t, x, +1);
    const auto adv = detail::solve_light_cone(w2, t, x, -1);
    const double tr = ret.lag;
    const double ta = adv.lag;

    std::vector<double> bp;
    bp.reserve(8);
    for (double k : kinks2) bp.push_back(t - k);

    if (std::min(tr, ta) >= kPoleSeparationFactor * eps) {
      const double Ar = pref * contraction_over_gammas(g1, v1, w2.gamma(ret.t_r), w2.velocity(ret.t_r));
      const double Aa = pref * contraction_over_gammas(g1, v1, w2.gamma(adv.t_r), w2.velocity(adv.t_r));
      const double Dr = ret.doppler_factor;
      const double Da = adv.doppler_factor;
      const double cr = Ar / (2.0 * tr * Dr);
      const double ca = Aa / (2.0 * ta * Da);
      const double er = eps / Dr;
      const double ea = eps / Da;
      const double B1 = (tr - t) * (tr - t) + er * er;
      const double B2 = (ta - u) * (ta - u) + ea * ea;
      const double P1 = std::log1p(((ta + tr) * (ta - tr + 2.0 * t) + ea * ea - er * er) / B1);
      const double P2 = std::log1p(((tr + ta) * (tr - ta + 2.0 * u) + er * er - ea * ea) / B2);
      double model = 0.5 * cr * P2 + 0.5 * ca * P1;
      if (cr != ca) model += 0.5 * (cr - ca) * (std::log(B2) - std::log(B1));
      if (both_static) return model;

      const double ar = Ar / (2.0 * tr);
      const double aa = Aa / (2.0 * ta);
      const double dr1 = -dot(ret.unit_separation, w2.velocity(ret.t_r));  // Dr - 1
      const double da1 = dot(adv.unit_separation, w2.velocity(adv.t_r));   // Da - 1
      const double e2 = eps * eps;
      auto remainder = [&](double tau) {
        const double tp = t - tau;
        const Vec3 sep = x - w2.position(tp);
        const double r = norm(sep);
        const double a = 0.5 * pref * contraction_over_gammas(g1, v1, w2.gamma(tp), w2.velocity(tp)) / r;
        // retarded: a/(f + i eps) - ar/(g + i eps), f = r - tau, g = Dr (tr - tau)
        const double f = r - tau;
        const double g = Dr * (tr - tau);
        const double gf = (tr - r) + dr1 * (tr - tau);
        const double fg = f * g - e2;
        const double sr = (a - ar) * f / (f * f + e2) +
                          ar * gf * fg / (fg * fg + e2 * (f + g) * (f + g));
        // advanced: a/(h - i eps) - aa/(ga - i eps), h = r + tau, ga = Da (tau + ta)
        const double h = r + tau;
        const double ga = Da * (tau + ta);
        const double gh = (ta - r) + da1 * (tau + ta);
        const double hg = h * ga - e2;
        const double sa = (a - aa) * h / (h * h + e2) +
                          aa * gh * hg / (hg * hg + e2 * (h + ga) * (h + ga));
        return sr + sa;
      };
      bp.push_back(tr);
      bp.push_back(-ta);
      return model + inner(remainder, t, u, model, bp);
    }

    // Symmetric model around tau = 0.
    const double rho = 0.5 * (tr + ta);
    const Vec3 v2t = w2.velocity(t);
    const double g2t = w2.gamma(t);
    const double A0 = pref * contraction(g1, v1, g2t, v2t);
    const double e0 = g1 * g2t * eps;
    const std::complex<double> s_hi(t, -e0), s_lo(-u, -e0);
    const double model = A0 * (symmetric_primitive(rho, s_hi) - symmetric_primitive(rho, s_lo)).real();
    if (both_static || slow) return model;

    auto remainder = [&](double tau) {
      const double tp = t - tau;
      const Vec3 sep = x - w2.position(tp);
      const double A = pref * contraction_over_gammas(g1, v1, w2.gamma(tp), w2.velocity(tp));
      return A * symmetric_kernel(norm2(sep), tau, eps) - A0 * symmetric_kernel(rho * rho, tau, e0);
    };
    bp.push_back(0.0);
    bp.push_back(rho);
    bp.push_back(-rho);
    bp.push_back(tr);
    bp.push_back(-ta);
    return model + inner(remainder, t, u, model, bp);
  }

  template <class F>
  double inner(F& f, double t, double u, double model, const std::vector<double>& bp) const {
    QuadOptions o = inner_opt;
    o.abs_tol = std::max(inner_abs_floor, 0.01 * inner_opt.rel_tol * std::abs(model));
    return integrate_adaptive(f, -u, t, bp, o).value;
  }
};

QuadResult hadamard_outer(const Worldline& w1, const Worldline& w2, double eps, const KernelOptions& opt) {
  const HadamardEvaluator F(w1, w2, eps, opt);
  const double T = w1.duration();
  const double half = 0.5 * T;

  // Outer singular points as (t, u) pairs: the retarded pole meets t' = 0 at
  // the causal onset, the advanced pole meets t' = T at u2.
  std::vector<std::pair<double, double>> marks;
  const double onset = causal_onset(w1, w2);
  marks.emplace_back(onset, T - onset);
  const double u2 = detail::solve_light_cone(w1, T, w2.position(T), +1).lag;
  marks.emplace_back(T - u2, u2);
  for (double k : kinks(w1)) marks.emplace_back(k, T - k);

  std::vector<double> bp_t, bp_u;
  for (const auto& [tm, um] : marks) {
    if (tm > 0.0 && tm < half) bp_t.push_back(tm);
    if (um > 0.0 && um < half) bp_u.push_back(um);
  }
  const QuadResult first = integrate_adaptive([&](double t) { return F(t, T - t); }, 0.0, half, bp_t, opt.quad);
  const QuadResult second = integrate_adaptive([&](double u) { return F(T - u, u); }, 0.0, half, bp_u, opt.quad);
  QuadResult q;
  q.value = first.value + second.value;
  q.error = first.error + second.error;
  q.intervals = first.intervals + second.intervals;
  q.evaluations = first.evaluations + second.evaluations;
  q.converged = q.error <= std::max(opt.quad.abs_tol, opt.quad.rel_tol * std::abs(q.value));
  return q;
}

void require_separated(const Worldline& w1, const Worldline& w2) {
  const double sep = min_separation(w1, w2);
  const double scale = std::max({1.0, norm(w1.position(0.0)), norm(w2.position(0.0))});
  if (!(sep > 1e-12 * scale)) {
    throw AccuracyError("hadamard functional: coincident worldlines (coincidence-limit divergence)",
                        std::numeric_limits<double>::infinity());
  }
}

void validate_schedule(std::span<const double> eps) {
  if (eps.size() < 3) throw ValidationError("epsilon schedule needs at least 3 entries");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0) || (i > 0 && !(eps[i] < eps[i - 1]))) {
      throw ValidationError("epsilon schedule must be positive and strictly decreasing");
    }
  }
}

PairFunctional combine_levels(std::span<const double> eps, std::span<const PairFunctional> levels,
                              const KernelOptions& opt) {
  std::vector<double> y(levels.size());
  double quad_err = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    y[i] = levels[i].real();
    quad_err = std::max(quad_err, levels[i].error);
  }
  const Extrapolation ex = extrapolate_to_zero(eps, y);
  PairFunctional out;
  out.kind = KernelKind::Hadamard;
  out.value = ex.value;
  out.error = ex.error + quad_err;
  const double tol = std::max(opt.quad.abs_tol, opt.quad.rel_tol * std::abs(ex.value));
  if (!ex.cauchy && ex.error > tol) {
    std::ostringstream os;
    os << "hadamard functional: epsilon extrapolation does not converge (estimate " << out.error << ")";
    throw AccuracyError(os.str(), out.error);
  }
  return out;
}

}  // namespace

PairFunctional hadamard_at_epsilon(const Worldline& w1, const Worldline& w2, double epsilon,
                                   const KernelOptions& opt) {
  check_same_window(w1, w2);
  if (!(epsilon > 0.0)) throw ValidationError("hadamard functional: regulator must be positive");
  const QuadResult q = hadamard_outer(w1, w2, epsilon, opt);
  PairFunctional out;
  out.kind = KernelKind::Hadamard;
  out.value = q.value;
  out.error = q.error;
  if (!q.converged) {
    std::ostringstream os;
    os << "hadamard functional: quadrature did not converge at eps = " << epsilon << " (estimate "
       << q.error << ")";
    throw AccuracyError(os.str(), q.error);
  }
  return out;
}

PairFunctional hadamard_pair_functional(const Worldline& w1, const Worldline& w2,
                                        std::span<const double> eps, const KernelOptions& opt) {
  check_same_window(w1, w2);
  validate_schedule(eps);
  require_separated(w1, w2);
  std::vector<PairFunctional> levels;
  for (double e : eps) levels.push_back(hadamard_at_epsilon(w1, w2, e, opt));
  return combine_levels(eps, levels, opt);
}

PairFunctional hadamard_pair_functional(const Worldline& w1, const Worldline& w2,
                                        const KernelOptions& opt) {
  require_separated(w1, w2);
  const auto eps = epsilon_schedule(min_separation(w1, w2), opt);
  return hadamard_pair_functional(w1, w2, eps, opt);
}

PairFunctional feynman_from(const PairFunctional& delta, const PairFunctional& hadamard) {
  PairFunctional out;
  out.kind = KernelKind::FeynmanG;
  out.pair = delta.pair;
  out.value = std::complex<double>(0.5 * hadamard.real(), -0.5 * delta.real());
  out.error = 0.5 * std::hypot(delta.error, hadamard.error);
  return out;
}

PairFunctional feynman_pair_functional(const Worldline& w1, const Worldline& w2,
                                       const KernelOptions& opt) {
  return feynman_from(delta_pair_functional(w1, w2, opt), hadamard_pair_functional(w1, w2, opt));
}

// ------------------------------------------------------- configurations ----

namespace {

template <class Body>
void run_tasks(int n, ExecutionPolicy policy, Body&& body) {
  // Exceptions cannot cross an OpenMP region; keep the first by task index.
  std::vector<std::exception_ptr> errors(n);
  if (policy == ExecutionPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct NoiseTask {
  Branch a, b;
};

constexpr std::array<NoiseTask, 6> kNoiseTasks{{{Branch::L1, Branch::L1},
                                               {Branch::R1, Branch::R1},
                                               {Branch::L1, Branch::R1},
                                               {Branch::L2, Branch::L2},
                                               {Branch::R2, Branch::R2},
                                               {Branch::L2, Branch::R2}}};

NoiseTerms assemble_noise(const std::array<PairFunctional, 6>& h, double regulator) {
  NoiseTerms n;
  n.regulator = regulator;
  for (int p = 0; p < 2; ++p) {
    n.L_V_left[p] = 0.5 * h[3 * p].real();
    n.L_V_right[p] = 0.5 * h[3 * p + 1].real();
    n.L_I_particle[p] = 0.5 * h[3 * p + 2].real();
    const double scale = std::max(std::abs(n.L_V_left[p]), std::abs(n.L_V_right[p]));
    const double defect = scale > 0.0 ? std::abs(n.L_V_left[p] - n.L_V_right[p]) / scale : 0.0;
    n.symmetry_defect = std::max(n.symmetry_defect, defect);
  }
  for (const auto& x : h) n.error += 0.5 * x.error;
  n.L_V = 0.5 * (n.L_V_left[0] + n.L_V_right[0]);
  n.L_I = n.L_I_particle[0];
  n.symmetric = n.symmetry_defect <= kBranchSymmetryTolerance;
  if (!n.symmetric) {
    std::ostringstream os;
    os << "branch-symmetry check failed: relative L_V(L) - L_V(R) defect " << n.symmetry_defect;
    n.warning = os.str();
  }
  return n;
}

}  // namespace

NoiseTerms vacuum_noise_terms(const BranchConfig& config, const KernelOptions& opt,
                              ExecutionPolicy policy) {
  const double reg = opt.noise_regulator_scale * config.min_pair_distance();
  std::array<PairFunctional, 6> h;
  run_tasks(6, policy, [&](int i) {
    h[i] = hadamard_at_epsilon(config[kNoiseTasks[i].a], config[kNoiseTasks[i].b], reg, opt);
  });
  return assemble_noise(h, reg);
}

ConfigFunctionals evaluate_functionals(const BranchConfig& config, const KernelOptions& opt,
                                       ExecutionPolicy policy, FunctionalRequest request) {
  ConfigFunctionals out;
  const int levels = opt.epsilon_levels;
  std::array<std::vector<double>, 4> schedules;
  if (request.hadamard) {
    for (BranchPair p : kAllPairs) {
      const auto& a = config.first(p);
      const auto& b = config.second(p);
      require_separated(a, b);
      schedules[static_cast<int>(p)] = epsilon_schedule(min_separation(a, b), opt);
    }
    out.epsilon_schedule = epsilon_schedule(config.min_pair_distance(), opt);
  }
  const double reg = opt.noise_regulator_scale * config.min_pair_distance();

  // Task layout: 4 retarded/advanced pairs, then 4 x levels Hadamard, then 6 noise.
  const int n_delta = 4;
  const int n_had = request.hadamard ? 4 * levels : 0;
  const int n_noise = request.noise ? 6 : 0;
  std::array<PairFunctional, 4> r12, r21;
  std::vector<PairFunctional> had(n_had);
  std::array<PairFunctional, 6> noise;

  run_tasks(n_delta + n_had + n_noise, policy, [&](int i) {
    if (i < n_delta) {
      const BranchPair p = kAllPairs[i];
      r12[i] = retarded_pair_functional(config.first(p), config.second(p), opt);
      r21[i] = retarded_pair_functional(config.second(p), config.first(p), opt);
    } else if (i < n_delta + n_had) {
      const int k = i - n_delta;
      const int pi = k / levels;
      const BranchPair p = kAllPairs[pi];
      had[k] = hadamard_at_epsilon(config.first(p), config.second(p), schedules[pi][k % levels], opt);
    } else {
      const int k = i - n_delta - n_had;
      noise[k] = hadamard_at_epsilon(config[kNoiseTasks[k].a], config[kNoiseTasks[k].b], reg, opt);
    }
  });

  const double T = config.duration();
  for (int i = 0; i < 4; ++i) {
    const BranchPair p = kAllPairs[i];
    out.delta[i].kind = KernelKind::RadiationDelta;
    out.delta[i].pair = p;
    out.delta[i].value = r12[i].real() + r21[i].real();
    out.delta[i].error = r12[i].error + r21[i].error;
    out.causal[i].kind = KernelKind::CausalE;
    out.causal[i].pair = p;
    out.causal[i].value = r21[i].real() - r12[i].real();
    out.causal[i].error = out.delta[i].error;
    out.causally_connected[i] = causal_onset(config.first(p), config.second(p)) < T ||
                                causal_onset(config.second(p), config.first(p)) < T;
    out.hadamard[i].kind = KernelKind::Hadamard;
    out.hadamard[i].pair = p;
    if (request.hadamard) {
      out.hadamard[i] = combine_levels(schedules[i], std::span(had).subspan(i * levels, levels), opt);
      out.hadamard[i].pair = p;
    }
  }
  if (request.noise) out.noise = assemble_noise(noise, reg);
  return out;
}

}  // namespace gmesim

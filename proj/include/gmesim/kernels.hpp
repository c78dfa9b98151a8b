#pragma once

#include "gmesim/branch_config.hpp"
#include "gmesim/quadrature.hpp"
#include "gmesim/worldline.hpp"

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gmesim {

enum class KernelKind { Retarded, Advanced, RadiationDelta, Hadamard, CausalE, FeynmanG };

std::string_view label(KernelKind k);

/// A double worldline integral of a two-point kernel contracted with the two
/// point-mass stress tensors. Real kinds store their value in `value.real()`.
struct PairFunctional {
  std::complex<double> value{};
  KernelKind kind = KernelKind::RadiationDelta;
  std::optional<BranchPair> pair;
  double error = 0.0;

  double real() const { return value.real(); }
};

struct KernelOptions {
  QuadOptions quad{};
  double epsilon_scale = 1e-2;  // eps0 = epsilon_scale * min separation
  double epsilon_ratio = 0.5;
  int epsilon_levels = 5;
  double noise_regulator_scale = 1e-3;  // fixed regulator for L_V, L_I
  int inner_max_intervals = 400;
};

enum class ExecutionPolicy { Serial, Parallel };

/// Geometric schedule eps0 * ratio^k, k = 0..levels-1.
std::vector<double> epsilon_schedule(double min_separation, const KernelOptions& opt);

/// Smallest equal-time distance between two worldlines over a sample grid.
double min_separation(const Worldline& a, const Worldline& b);

/// Time at which w1 first lies on the future light cone of w2's start event;
/// the retarded integrand from w2 to w1 vanishes before it.
double causal_onset(const Worldline& w1, const Worldline& w2);

/// Integral over w1 of the retarded field sourced by w2 (field on 1, source 2).
PairFunctional retarded_pair_functional(const Worldline& w1, const Worldline& w2,
                                        const KernelOptions& opt = {});

/// Retarded plus advanced kernel, symmetric in its arguments.
PairFunctional delta_pair_functional(const Worldline& w1, const Worldline& w2,
                                     const KernelOptions& opt = {});

/// Advanced minus retarded kernel.
PairFunctional causal_pair_functional(const Worldline& w1, const Worldline& w2,
                                      const KernelOptions& opt = {});

/// Hadamard functional at one value of the i-epsilon regulator (time units).
PairFunctional hadamard_at_epsilon(const Worldline& w1, const Worldline& w2, double epsilon,
                                   const KernelOptions& opt = {});

/// Hadamard functional extrapolated to epsilon -> 0 over a decreasing schedule
/// (at least 3 entries). Throws AccuracyError for coincident worldlines or a
/// non-converging extrapolation.
PairFunctional hadamard_pair_functional(const Worldline& w1, const Worldline& w2,
                                        std::span<const double> epsilon_schedule,
                                        const KernelOptions& opt = {});
PairFunctional hadamard_pair_functional(const Worldline& w1, const Worldline& w2,
                                        const KernelOptions& opt = {});

/// -(i/2) delta + (1/2) hadamard.
PairFunctional feynman_from(const PairFunctional& delta, const PairFunctional& hadamard);
PairFunctional feynman_pair_functional(const Worldline& w1, const Worldline& w2,
                                       const KernelOptions& opt = {});

/// Vacuum noise integrals. L_V is half the Hadamard self-integral of one
/// branch, L_I half the Hadamard integral between a particle's two branches,
/// both at the fixed regulator `regulator`.
struct NoiseTerms {
  double L_V = 0.0;  // particle 1, mean over its two branches
  double L_I = 0.0;  // particle 1
  std::array<double, 2> L_V_left{};   // per particle
  std::array<double, 2> L_V_right{};  // per particle
  std::array<double, 2> L_I_particle{};
  double regulator = 0.0;
  double error = 0.0;
  double symmetry_defect = 0.0;  // max relative |L_V(L) - L_V(R)|
  bool symmetric = true;
  std::string warning;

  /// L_V - L_I for particle i (0 or 1), the quantity entering the noise increment.
  double noise_difference(int particle) const {
    return 0.5 * (L_V_left[particle] + L_V_right[particle]) - L_I_particle[particle];
  }
};

inline constexpr double kBranchSymmetryTolerance = 1e-6;

NoiseTerms vacuum_noise_terms(const BranchConfig& config, const KernelOptions& opt = {},
                              ExecutionPolicy policy = ExecutionPolicy::Parallel);

/// Every functional of one configuration, evaluated as independent tasks.
struct ConfigFunctionals {
  std::array<PairFunctional, 4> delta;     // indexed by BranchPair
  std::array<PairFunctional, 4> causal;    // E = advanced - retarded
  std::array<PairFunctional, 4> hadamard;  // zero when not requested
  std::array<bool, 4> causally_connected{};
  NoiseTerms noise;
  std::vector<double> epsilon_schedule;
};

struct FunctionalRequest {
  bool hadamard = true;
  bool noise = true;
};

ConfigFunctionals evaluate_functionals(const BranchConfig& config, const KernelOptions& opt = {},
                                       ExecutionPolicy policy = ExecutionPolicy::Parallel,
                                       FunctionalRequest request = {});

}  // namespace gmesim

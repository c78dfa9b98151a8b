#include "gmesim/quantum_model.hpp"

#include "gmesim/errors.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace gmesim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::complex<double> kI{0.0, 1.0};

int flips(int p, int q) {
  // 1: particle 1 differs, 2: particle 2 differs, 3: both
  return ((p ^ q) & 1) | ((p ^ q) & 2);
}

// Orthonormal basis of the complement of (1,1,1,1)/2.
Eigen::Matrix<std::complex<double>, 4, 3> null_space_basis() {
  Eigen::Matrix<std::complex<double>, 4, 3> q;
  q << 0.5, 0.5, 0.5,
      -0.5, 0.5, -0.5,
       0.5, -0.5, -0.5,
      -0.5, -0.5, 0.5;
  return q;
}

std::vector<double> compressed_eigenvalues(const DensityMatrix4& x) {
  const auto q = null_space_basis();
  const Eigen::MatrixXcd c = q.adjoint() * x * q;
  return hermitian_eigenvalues(c);
}

}  // namespace

DensityMatrix4 initial_state() { return DensityMatrix4::Constant(0.25); }

double QuantumInputs::delta_combination() const { return (delta[0] + delta[3]) - (delta[1] + delta[2]); }
double QuantumInputs::hadamard_combination() const {
  return (hadamard[2] + hadamard[1]) - (hadamard[0] + hadamard[3]);
}

PerturbedState assemble_perturbed_state(const QuantumInputs& in) {
  if (!(in.G > 0.0) || !std::isfinite(in.G)) throw ValidationError("perturbed state: G must be positive");
  PerturbedState s;
  s.G = in.G;
  s.inputs = in;
  s.rho0 = initial_state();
  s.d_rho_c.setZero();
  s.d_rho_l.setZero();
  s.d_rho_q.setZero();
  const double G = in.G;
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      s.d_rho_c(p, q) = (kI * (kPi * G / 2.0)) * (in.delta[p] - in.delta[q]);
      switch (flips(p, q)) {
        case 1: s.d_rho_l(p, q) = -kPi * G * in.noise1; break;
        case 2: s.d_rho_l(p, q) = -kPi * G * in.noise2; break;
        case 3: s.d_rho_l(p, q) = -kPi * G * (in.noise1 + in.noise2); break;
        default: break;
      }
    }
  }
  const double hq = 0.5 * kPi * G * in.hadamard_combination();
  s.d_rho_q(0, 3) = hq;
  s.d_rho_q(3, 0) = hq;
  s.d_rho_q(1, 2) = -hq;
  s.d_rho_q(2, 1) = -hq;
  return s;
}

PerturbedState perturbative_corrections(const BranchConfig& config, double G, const KernelOptions& opt,
                                        ExecutionPolicy policy) {
  const ConfigFunctionals f = evaluate_functionals(config, opt, policy);
  if (!f.noise.symmetric) throw ValidationError("perturbative corrections: " + f.noise.warning);
  QuantumInputs in;
  for (int i = 0; i < 4; ++i) {
    in.delta[i] = f.delta[i].real();
    in.hadamard[i] = f.hadamard[i].real();
  }
  in.noise1 = f.noise.noise_difference(0);
  in.noise2 = f.noise.noise_difference(1);
  in.G = G;
  return assemble_perturbed_state(in);
}

QuantumNegativity quantum_negativity_details(const PerturbedState& state) {
  QuantumNegativity out;
  out.first_order = compressed_eigenvalues(partial_transpose(state.increments(), 2));
  for (double ev : out.first_order) {
    if (ev < 0.0) out.value -= ev;
  }
  const double dc = state.inputs.delta_combination();
  const double hc = state.inputs.hadamard_combination();
  // |G_LL + G_RR - G_LR - G_RL| with G = -(i/2) delta + (1/2) H
  const double g_comb = 0.5 * std::hypot(dc, hc);
  out.effective_noise = g_comb - out.value / (kPi * state.G);
  return out;
}

double quantum_negativity(const PerturbedState& state) { return quantum_negativity_details(state).value; }

double classical_limit_switch(const QuantumInputs& in) {
  QuantumInputs c = in;
  c.hadamard.fill(0.0);
  // The vacuum noise integrals are Hadamard integrals as well.
  c.noise1 = 0.0;
  c.noise2 = 0.0;
  return quantum_negativity(assemble_perturbed_state(c));
}

double classical_limit_switch(const BranchConfig& config, double G, const KernelOptions& opt) {
  const ConfigFunctionals f =
      evaluate_functionals(config, opt, ExecutionPolicy::Parallel, {.hadamard = false, .noise = false});
  QuantumInputs in;
  for (int i = 0; i < 4; ++i) in.delta[i] = f.delta[i].real();
  in.G = G;
  return classical_limit_switch(in);
}

PositivityReport positivity_report(const PerturbedState& state) {
  PositivityReport r;
  const DensityMatrix4 x = state.increments();
  r.first_order = compressed_eigenvalues(x);
  const double scale = x.norm();
  const double floor = 64.0 * std::numeric_limits<double>::epsilon();
  for (double ev : r.first_order) {
    if (ev < -floor * std::max(1.0, scale)) r.first_order_nonnegative = false;
  }
  r.min_eigenvalue = hermitian_eigenvalues(state.assembled()).front();
  const double G = state.G;
  const double x1 = (x / G).norm();
  r.C_bound = 2.0 * x1 * x1;
  // below the roundoff floor the sign of the smallest eigenvalue carries no information
  r.resolved = r.C_bound * G * G > floor;
  r.C_observed = r.min_eigenvalue < -floor ? -r.min_eigenvalue / (G * G) : 0.0;
  r.within_bound = r.min_eigenvalue >= -(r.C_bound * G * G + floor);
  return r;
}

}  // namespace gmesim

#pragma once

#include "gmesim/branch_config.hpp"
#include "gmesim/density_matrix.hpp"
#include "gmesim/kernels.hpp"

#include <array>
#include <vector>

namespace gmesim {

/// rho_0: every entry 1/4 (both particles in an equal superposition).
DensityMatrix4 initial_state();

/// Scalar inputs of the first-order increments.
struct QuantumInputs {
  std::array<double, 4> delta{};     // indexed by BranchPair
  std::array<double, 4> hadamard{};  // indexed by BranchPair
  double noise1 = 0.0;               // L_V - L_I, particle 1
  double noise2 = 0.0;               // L_V - L_I, particle 2
  double G = 0.0;

  double delta_combination() const;     // LL + RR - LR - RL
  double hadamard_combination() const;  // LR + RL - LL - RR
};

struct PerturbedState {
  DensityMatrix4 rho0;
  DensityMatrix4 d_rho_c;  // phase-type, from the radiation functionals
  DensityMatrix4 d_rho_l;  // local vacuum noise
  DensityMatrix4 d_rho_q;  // Hadamard cross term
  double G = 0.0;
  QuantumInputs inputs;

  DensityMatrix4 increments() const { return d_rho_c + d_rho_l + d_rho_q; }
  DensityMatrix4 assembled() const { return rho0 + increments(); }
};

PerturbedState assemble_perturbed_state(const QuantumInputs& in);

/// Evaluates the functionals of `config` and assembles the increments.
/// Throws ValidationError when the branch-symmetry check fails.
PerturbedState perturbative_corrections(const BranchConfig& config, double G,
                                        const KernelOptions& opt = {},
                                        ExecutionPolicy policy = ExecutionPolicy::Parallel);

struct QuantumNegativity {
  double value = 0.0;                   // leading-order negativity, >= 0
  std::vector<double> first_order;      // eigenvalues of the null-space compression
  double effective_noise = 0.0;         // |G_comb| - N / (pi G)
};

/// Leading-order partial-transpose negativity of rho_0 + increments: the
/// partial transpose of rho_0 has a 3-fold null space, and the first-order
/// eigenvalues are those of the increment compressed onto it.
QuantumNegativity quantum_negativity_details(const PerturbedState& state);
double quantum_negativity(const PerturbedState& state);

/// The quantum pipeline with the causal and Hadamard kernels set to zero.
double classical_limit_switch(const BranchConfig& config, double G, const KernelOptions& opt = {});
double classical_limit_switch(const QuantumInputs& in);

/// Positivity check of the assembled state at leading order.
struct PositivityReport {
  std::vector<double> first_order;  // null-space compression of the increments
  double min_eigenvalue = 0.0;      // of the assembled state
  double C_observed = 0.0;          // -min_eigenvalue / G^2 (0 above the roundoff floor)
  double C_bound = 0.0;             // 2 ||increments / G||^2
  bool first_order_nonnegative = true;
  bool within_bound = true;
  bool resolved = true;  // whether C_bound G^2 exceeds the double-precision floor
};

PositivityReport positivity_report(const PerturbedState& state);

}  // namespace gmesim

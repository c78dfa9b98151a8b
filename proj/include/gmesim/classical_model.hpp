#pragma once

#include "gmesim/branch_config.hpp"
#include "gmesim/density_matrix.hpp"
#include "gmesim/kernels.hpp"

#include <array>

namespace gmesim {

/// Radiation functionals per branch pair (indexed by BranchPair) and the
/// coupling G; the branch phase of pair p is 2 pi G delta[p].
struct PhaseTable {
  std::array<double, 4> delta{};
  std::array<double, 4> error{};
  double G = 0.0;

  double phase(BranchPair p) const;
  /// delta_LL + delta_RR - delta_LR - delta_RL
  double combination() const;
};

/// Validates that every entry is finite and G > 0.
PhaseTable make_phase_table(const std::array<double, 4>& delta, double G);

PhaseTable compute_phase_table(const BranchConfig& config, double G, const KernelOptions& opt = {});

/// rho_c(p, q) = exp(i (phase_p - phase_q)) / 4.
DensityMatrix4 classical_final_state(const PhaseTable& table);

/// exact: |sin(pi G c)| / 2; otherwise (pi G / 2) |c|, c = table.combination().
double classical_negativity(const PhaseTable& table, bool exact);

/// -(1 / 2 pi G) times the window integral of the symmetrized retarded
/// interaction energy; equals delta_pair_functional(w1, w2).
double hamiltonian_phase_functional(const Worldline& w1, const Worldline& w2, double G,
                                    const QuadOptions& opt = {});

}  // namespace gmesim

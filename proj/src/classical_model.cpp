#include "gmesim/classical_model.hpp"

#include "gmesim/errors.hpp"
#include "gmesim/retarded.hpp"

#include <cmath>
#include <numbers>

namespace gmesim {

double PhaseTable::phase(BranchPair p) const {
  return 2.0 * std::numbers::pi * G * delta[static_cast<int>(p)];
}

double PhaseTable::combination() const {
  return (delta[0] + delta[3]) - (delta[1] + delta[2]);
}

PhaseTable make_phase_table(const std::array<double, 4>& delta, double G) {
  if (!(G > 0.0) || !std::isfinite(G)) throw ValidationError("phase table: G must be positive and finite");
  for (double d : delta) {
    if (!std::isfinite(d)) throw ValidationError("phase table: entries must be finite");
  }
  PhaseTable t;
  t.delta = delta;
  t.G = G;
  return t;
}

PhaseTable compute_phase_table(const BranchConfig& config, double G, const KernelOptions& opt) {
  std::array<double, 4> delta{};
  std::array<double, 4> err{};
  for (BranchPair p : kAllPairs) {
    const auto f = delta_pair_functional(config.first(p), config.second(p), opt);
    delta[static_cast<int>(p)] = f.real();
    err[static_cast<int>(p)] = f.error;
  }
  PhaseTable t = make_phase_table(delta, G);
  t.error = err;
  return t;
}

DensityMatrix4 classical_final_state(const PhaseTable& table) {
  DensityMatrix4 rho;
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      const double dphi = table.phase(static_cast<BranchPair>(p)) - table.phase(static_cast<BranchPair>(q));
      rho(p, q) = 0.25 * std::polar(1.0, dphi);
    }
  }
  return rho;
}

double classical_negativity(const PhaseTable& table, bool exact) {
  const double x = std::numbers::pi * table.G * table.combination();
  return exact ? 0.5 * std::abs(std::sin(x)) : 0.5 * std::abs(x);
}

double hamiltonian_phase_functional(const Worldline& w1, const Worldline& w2, double G,
                                    const QuadOptions& opt) {
  const double T = w1.duration();
  // The integrand switches on when each retarded term enters the window.
  const double bp[] = {causal_onset(w1, w2), causal_onset(w2, w1)};
  const QuadResult q = integrate_adaptive([&](double t) { return pair_hamiltonian(w1, w2, t, G); },
                                          0.0, T, bp, opt);
  if (!q.converged) throw AccuracyError("hamiltonian phase: quadrature did not converge", q.error);
  return -q.value / (2.0 * std::numbers::pi * G);
}

}  // namespace gmesim

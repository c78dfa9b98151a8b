#include "doctest.h"

#include "gmesim/classical_model.hpp"
#include "gmesim/errors.hpp"
#include "gmesim/quantum_model.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace gmesim;

namespace {

constexpr double kPi = std::numbers::pi;

QuantumInputs random_inputs(std::mt19937_64& rng, double G) {
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  QuantumInputs in;
  for (int i = 0; i < 4; ++i) {
    in.delta[i] = U(rng);
    in.hadamard[i] = U(rng);
  }
  in.noise1 = in.noise2 = 0.1 * std::abs(U(rng));
  in.G = G;
  return in;
}

}  // namespace

TEST_CASE("initial state is the uniform superposition") {
  const DensityMatrix4 r = initial_state();
  CHECK(std::abs((r * r).trace().real() - 1.0) < 1e-15);
  CHECK(negativity(r) < 1e-15);
}

TEST_CASE("property: increments are traceless and Hermitian") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    QuantumInputs in = random_inputs(rng, 1e-3);
    in.noise2 = 0.5 * in.noise1;
    const PerturbedState s = assemble_perturbed_state(in);
    for (const DensityMatrix4* m : {&s.d_rho_c, &s.d_rho_l, &s.d_rho_q}) {
      const StateDiagnostics d = validate_state(*m, StateKind::Increment);
      CHECK(d.ok());
      CHECK(d.hermiticity_defect <= 1e-14);
      CHECK(std::abs(m->trace()) <= 1e-14);
    }
  }
}

TEST_CASE("increment entries follow the branch bookkeeping") {
  QuantumInputs in;
  in.delta = {1.0, 2.0, 4.0, 8.0};
  in.hadamard = {0.5, 1.5, 2.5, 3.5};
  in.noise1 = 0.3;
  in.noise2 = 0.7;
  in.G = 0.01;
  const PerturbedState s = assemble_perturbed_state(in);
  // phase-type: (i pi G / 2)(delta_p - delta_q)
  CHECK(s.d_rho_c(3, 0).imag() == doctest::Approx(kPi * 0.01 / 2 * 7.0));
  CHECK(s.d_rho_c(3, 0).real() == 0.0);
  // noise: one flip on particle 1 (index 0 <-> 1), particle 2 (0 <-> 2), both (0 <-> 3)
  CHECK(s.d_rho_l(0, 1).real() == doctest::Approx(-kPi * 0.01 * 0.3));
  CHECK(s.d_rho_l(0, 2).real() == doctest::Approx(-kPi * 0.01 * 0.7));
  CHECK(s.d_rho_l(0, 3).real() == doctest::Approx(-kPi * 0.01 * 1.0));
  CHECK(s.d_rho_l(1, 2).real() == doctest::Approx(-kPi * 0.01 * 1.0));
  CHECK(s.d_rho_l(2, 2).real() == 0.0);
  // Hadamard cross term on the anti-diagonal
  const double hc = 1.5 + 2.5 - 0.5 - 3.5;
  CHECK(in.hadamard_combination() == doctest::Approx(hc));
  CHECK(s.d_rho_q(0, 3).real() == doctest::Approx(kPi * 0.01 / 2 * hc));
  CHECK(s.d_rho_q(1, 2).real() == doctest::Approx(-kPi * 0.01 / 2 * hc));
  CHECK(s.d_rho_q(0, 0).real() == 0.0);
}

TEST_CASE("property: leading-order negativity matches the hand-derived closed form") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const QuantumInputs in = random_inputs(rng, 1e-3);
    const double dc = in.delta_combination(), hc = in.hadamard_combination();
    const double expect = std::max(0.0, kPi * in.G / 2 * std::hypot(dc, hc) - 2 * kPi * in.G * in.noise1);
    const QuantumNegativity q = quantum_negativity_details(assemble_perturbed_state(in));
    CHECK(q.value == doctest::Approx(expect).epsilon(1e-10).scale(kPi * in.G));
    CHECK(q.value >= 0.0);
  }
}

TEST_CASE("property: leading order tracks the exact negativity of the assembled state") {
  std::mt19937_64 rng(29);
  auto gap = [](QuantumInputs in, double G, double* x2) {
    in.G = G;
    const PerturbedState s = assemble_perturbed_state(in);
    DensityMatrix4 full = s.assembled();
    full = 0.5 * (full + full.adjoint()).eval();
    *x2 = s.increments().squaredNorm();
    return std::abs(negativity(full) - quantum_negativity(s));
  };
  for (int trial = 0; trial < 50; ++trial) {
    QuantumInputs in = random_inputs(rng, 1.0);
    in.noise1 = in.noise2 = 0.0;  // keep the assembled state positive at first order
    double x2a = 0.0, x2b = 0.0;
    const double a = gap(in, 1e-4, &x2a);
    const double b = gap(in, 5e-5, &x2b);
    // second-order perturbation of eigenvalues next to a unit gap: at most 3 ||X||^2
    CHECK(a <= 3.0 * x2a);
    CHECK(a / b == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("classical-limit switch reproduces the classical leading negativity") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const QuantumInputs in = random_inputs(rng, 1e-4);
    const PhaseTable t = make_phase_table(in.delta, in.G);
    const double nc = classical_negativity(t, false);
    CHECK(classical_limit_switch(in) == doctest::Approx(nc).epsilon(1e-10).scale(1e-30));
  }
}

TEST_CASE("without noise the quantum negativity is never below the classical one") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    QuantumInputs in = random_inputs(rng, 1e-3);
    in.noise1 = in.noise2 = 0.0;
    const double nq = quantum_negativity(assemble_perturbed_state(in));
    CHECK(nq >= classical_limit_switch(in) * (1 - 1e-12));
  }
}

TEST_CASE("positivity report on the assembled state") {
  QuantumInputs in;
  in.delta = {1.0, 2.0, 0.5, 1.2};
  in.hadamard = {0.3, 0.4, 0.35, 0.3};
  in.noise1 = in.noise2 = 0.2;  // 4 D >= |Hc|: first order positive
  in.G = 1e-3;
  const PositivityReport r = positivity_report(assemble_perturbed_state(in));
  CHECK(r.first_order_nonnegative);
  CHECK(r.resolved);
  CHECK(r.within_bound);
  CHECK(r.min_eigenvalue >= -r.C_bound * in.G * in.G);

  // too little noise for the Hadamard cross term: first-order positivity is lost
  in.noise1 = in.noise2 = 0.0;
  const PositivityReport bad = positivity_report(assemble_perturbed_state(in));
  CHECK_FALSE(bad.first_order_nonnegative);
}

TEST_CASE("perturbed state requires positive G") {
  QuantumInputs in;
  in.G = 0.0;
  CHECK_THROWS_AS(assemble_perturbed_state(in), ValidationError);
}

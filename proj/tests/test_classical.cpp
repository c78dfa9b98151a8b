#include "doctest.h"

#include "gmesim/classical_model.hpp"
#include "gmesim/errors.hpp"
#include "gmesim/static_closed_form.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace gmesim;

TEST_CASE("phase table combination and phases") {
  const PhaseTable t = make_phase_table({1.0, 2.0, 3.0, 5.0}, 0.1);
  CHECK(t.combination() == doctest::Approx(1.0 + 5.0 - 2.0 - 3.0));
  CHECK(t.phase(BranchPair::RR) == doctest::Approx(2 * std::numbers::pi * 0.1 * 5.0));
  CHECK_THROWS_AS(make_phase_table({1, 2, 3, 4}, 0.0), ValidationError);
  CHECK_THROWS_AS(make_phase_table({1, NAN, 3, 4}, 1.0), ValidationError);
}

TEST_CASE("property: classical final state is pure and its negativity has the sine form") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const PhaseTable t = make_phase_table({U(rng), U(rng), U(rng), U(rng)}, 0.05 + std::abs(U(rng)));
    const DensityMatrix4 rho = classical_final_state(t);
    CHECK(std::abs((rho * rho).trace().real() - 1.0) < 1e-12);
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-14);
    CHECK(validate_state(rho, StateKind::Full).ok());
    // negativity from the partial transpose spectrum equals |sin(pi G c)| / 2
    const double expect = 0.5 * std::abs(std::sin(std::numbers::pi * t.G * t.combination()));
    CHECK(negativity(rho) == doctest::Approx(expect).epsilon(1e-10).scale(1.0));
    CHECK(classical_negativity(t, true) == doctest::Approx(expect).epsilon(1e-14).scale(1.0));
    CHECK(classical_negativity(t, false) ==
          doctest::Approx(0.5 * std::numbers::pi * t.G * std::abs(t.combination())).epsilon(1e-14));
  }
}

TEST_CASE("exact minus leading negativity shrinks as G cubed") {
  // (1/2)|sin x| - |x|/2 = -|x|^3 / 12 + O(x^5): halving G divides the gap by 8
  const std::array<double, 4> delta{3.0, 1.0, 1.0, 3.0};
  double prev = 0.0;
  for (double G : {1e-3, 5e-4, 2.5e-4}) {
    const PhaseTable t = make_phase_table(delta, G);
    const double gap = std::abs(classical_negativity(t, true) - classical_negativity(t, false));
    const double x = std::numbers::pi * G * t.combination();
    CHECK(gap == doctest::Approx(std::abs(x * x * x) / 12.0).epsilon(1e-4));
    if (prev > 0.0) CHECK(prev / gap == doctest::Approx(8.0).epsilon(1e-4));
    prev = gap;
  }
}

TEST_CASE("static phase table grows linearly in T") {
  LayoutSpec s;
  s.separation = 1.0;
  s.offset = 1.0;
  const double G = 1e-3;
  std::vector<double> T{100, 200, 400, 800}, N;
  for (double t : T) {
    s.T = t;
    N.push_back(classical_negativity(compute_phase_table(make_layout(s), G), false));
  }
  // slope from the static closed forms: d/dT of (pi G / 2)|sum of signed 2 m1 m2 (T - d)/(4 pi d)|
  const double c_slope = 2.0 / (4 * std::numbers::pi) * (1.0 / 2 + 1.0 / 2 - 1.0 / 1 - 1.0 / 3);
  const double slope = 0.5 * std::numbers::pi * G * std::abs(c_slope);
  for (std::size_t i = 1; i < T.size(); ++i) {
    CHECK((N[i] - N[i - 1]) / (T[i] - T[i - 1]) == doctest::Approx(slope).epsilon(1e-9));
  }
}

TEST_CASE("spacelike window has no classical phase") {
  LayoutSpec s;
  s.separation = 2.0;
  s.offset = 1.0;
  s.T = 1.5;
  const PhaseTable t = compute_phase_table(make_layout(s), 0.1);
  for (double d : t.delta) CHECK(d == 0.0);
  CHECK(classical_negativity(t, false) == 0.0);
  CHECK(classical_negativity(t, true) == 0.0);
}

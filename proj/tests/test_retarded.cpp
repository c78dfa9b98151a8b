#include "doctest.h"

#include "gmesim/errors.hpp"
#include "gmesim/retarded.hpp"
#include "gmesim/static_closed_form.hpp"

#include <cmath>
#include <random>

using namespace gmesim;

namespace {

// Retarded time for uniform motion z(t) = z0 + v t: the larger-lag root of
// (t - tr)^2 = |x - z0 - v tr|^2 is discarded, leaving a quadratic in tr.
double uniform_retarded_oracle(const Vec3& z0, const Vec3& v, double t, const Vec3& x) {
  const Vec3 w = x - z0;
  const double a = 1.0 - norm2(v);
  const double b = -2.0 * t + 2.0 * dot(w, v);
  const double c = t * t - norm2(w);
  // tr = (-b - sqrt(b^2 - 4ac)) / (2a) is the root with tr < t
  const double disc = std::sqrt(b * b - 4.0 * a * c);
  return (-b - disc) / (2.0 * a);
}

}  // namespace

TEST_CASE("retarded time: static source lags by the distance") {
  const Worldline w = make_static_worldline(1.0, {0, 0, 0}, 100.0);
  const RetardedSolution s = solve_retarded_time(w, {50.0, {3, 4, 0}});
  CHECK(s.t_r == doctest::Approx(45.0).epsilon(1e-15));
  CHECK(s.lag == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(s.distance == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(s.doppler_factor == 1.0);
  CHECK(s.in_window);
  CHECK(s.unit_separation.x == doctest::Approx(0.6));
  const RetardedSolution early = solve_retarded_time(w, {2.0, {3, 4, 0}});
  CHECK_FALSE(early.in_window);
  CHECK(early.t_r == doctest::Approx(-3.0));
  CHECK_THROWS_AS(solve_retarded_time(w, {101.0, {0, 0, 1}}), DomainError);
}

TEST_CASE("property: retarded time matches the uniform-motion quadratic oracle") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Vec3 v{U(rng), U(rng), U(rng)};
    v = (0.9 * std::abs(U(rng)) / std::max(norm(v), 1e-3)) * v;
    if (norm(v) >= 0.95) continue;
    const Vec3 z0{5 * U(rng), 5 * U(rng), 5 * U(rng)};
    const double T = 50.0;
    const Worldline w = make_uniform_worldline(1.0, z0, v, T);
    const double t = 20.0 + 30.0 * std::abs(U(rng));
    const Vec3 x{10 * U(rng), 10 * U(rng), 10 * U(rng)};
    const RetardedSolution s = solve_retarded_time(w, {t, x});
    const double expect = uniform_retarded_oracle(z0, v, t, x);
    CHECK(s.t_r == doctest::Approx(expect).epsilon(1e-12));
    // light-cone residual and Doppler factor 1 - rhat.v
    CHECK(std::abs((t - s.t_r) - norm(x - w.position(s.t_r))) <= 1e-12 * (1 + t));
    CHECK(s.doppler_factor == doctest::Approx(1.0 - dot(s.unit_separation, v)).epsilon(1e-12));
  }
}

TEST_CASE("advanced root mirrors the retarded root") {
  const Worldline w = make_uniform_worldline(1.0, {0, 0, 0}, {0.3, 0, 0}, 100.0);
  const Vec3 x{0, 2, 0};
  const double t = 30.0;
  const RetardedSolution a = detail::solve_light_cone(w, t, x, -1);
  const double ta = t + a.lag;
  CHECK(a.lag == doctest::Approx(norm(x - w.position(ta))).epsilon(1e-13));
  // advanced root of (t, x) from w equals the retarded time of the event (ta, z(ta)) seen back at x
  CHECK(a.doppler_factor == doctest::Approx(1.0 + dot(a.unit_separation, w.velocity(ta))).epsilon(1e-13));
}

TEST_CASE("bitensor contraction") {
  const FourVector rest{1.0, {}};
  CHECK(bitensor_contract(rest, rest) == doctest::Approx(1.0));
  const double v = 0.6, g = 1.0 / std::sqrt(1 - v * v);
  const FourVector moving{g, {g * v, 0, 0}};
  // -u.u' = gamma, P = 2 gamma^2 - 1
  CHECK(bitensor_contract(rest, moving) == doctest::Approx(2 * g * g - 1));
}

TEST_CASE("Newtonian limit of the pair Hamiltonian") {
  const double d = 3.0, G = 0.01, m1 = 2.0, m2 = 5.0;
  const Worldline a = make_static_worldline(m1, {0, 0, 0}, 100.0);
  const Worldline b = make_static_worldline(m2, {d, 0, 0}, 100.0);
  const double h = pair_hamiltonian(a, b, 50.0, G);
  CHECK(h == doctest::Approx(-G * m1 * m2 / d).epsilon(1e-12));
  CHECK(static_pair_energy(m1, m2, d, G) == doctest::Approx(-G * m1 * m2 / d).epsilon(1e-15));
  // before the signal arrives neither term contributes
  CHECK(pair_hamiltonian(a, b, 1.0, G) == 0.0);

  // slow relative motion: deviation of order v, here below 1e-4 at v = 1e-3 transverse
  const Worldline c = make_uniform_worldline(m2, {d, 0, 0}, {0, 1e-3, 0}, 100.0);
  const double t = 50.0;
  const double r = norm(c.position(t) - a.position(t));
  const double hc = pair_hamiltonian(a, c, t, G);
  CHECK(std::abs(hc / (-G * m1 * m2 / r) - 1.0) < 1e-4);
}

TEST_CASE("coincident worldlines are singular") {
  const Worldline a = make_static_worldline(1.0, {0, 0, 0}, 10.0);
  CHECK_THROWS_AS(pair_hamiltonian(a, a, 5.0, 1.0), SingularityError);
}

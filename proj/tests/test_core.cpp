#include "doctest.h"

#include "gmesim/branch_config.hpp"
#include "gmesim/errors.hpp"
#include "gmesim/units.hpp"
#include "gmesim/worldline.hpp"

#include <cmath>
#include <random>

using namespace gmesim;

TEST_CASE("units: conversions round-trip and use c = hbar = 1") {
  const UnitsSystem u(1e-6);
  CHECK(u.length_from_si(1e-6) == doctest::Approx(1.0).epsilon(1e-15));
  // one second is c * 1 s / l0 internal time units
  CHECK(u.time_from_si(1.0) == doctest::Approx(299792458.0 / 1e-6).epsilon(1e-15));
  CHECK(u.time_to_si(u.time_from_si(0.37)) == doctest::Approx(0.37).epsilon(1e-15));
  CHECK(u.mass_to_si(u.mass_from_si(1e-14)) == doctest::Approx(1e-14).epsilon(1e-15));
  // inverse reduced Compton wavelength in units of l0
  CHECK(u.mass_from_si(1e-14) == doctest::Approx(1e-14 * 299792458.0 * 1e-6 / 1.054571817e-34).epsilon(1e-14));
}

TEST_CASE("units: natural G is the squared Planck length in l0^2") {
  const double lp2 = 1.054571817e-34 * 6.67430e-11 / std::pow(299792458.0, 3);  // m^2
  CHECK(UnitsSystem(1.0).G() == doctest::Approx(lp2).epsilon(1e-14));
  CHECK(UnitsSystem(1e-6).G() == doctest::Approx(lp2 / 1e-12).epsilon(1e-14));
  CHECK_FALSE(UnitsSystem(1.0).G_overridden());
  const UnitsSystem o(1.0, 0.25);
  CHECK(o.G() == 0.25);
  CHECK(o.G_overridden());
  // G m^2 is dimensionless: it must not depend on the length unit
  const double m = 1e-14;
  const UnitsSystem a(1.0), b(1e-6);
  CHECK(a.G() * std::pow(a.mass_from_si(m), 2) ==
        doctest::Approx(b.G() * std::pow(b.mass_from_si(m), 2)).epsilon(1e-13));
}

TEST_CASE("units: invalid length scale is rejected") {
  CHECK_THROWS_AS(UnitsSystem(0.0), ValidationError);
  CHECK_THROWS_AS(UnitsSystem(-1.0), ValidationError);
}

TEST_CASE("worldline: static path") {
  const Worldline w = make_static_worldline(2.0, {1, 2, 3}, 5.0);
  CHECK(w.position(2.5) == Vec3{1, 2, 3});
  CHECK(w.gamma(1.0) == 1.0);
  const FourVector u = w.four_velocity(0.0);
  CHECK(u.t == 1.0);
  CHECK(minkowski_dot(u, u) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(w.four_velocity(5.5), DomainError);
  CHECK_THROWS_AS(w.four_velocity(-1e-9), DomainError);
}

TEST_CASE("worldline: split path closes, holds and respects the speed bound") {
  const double T = 40.0, ramp = 10.0;
  const Vec3 offset{0.0, 0.8, 0.0};
  const Worldline w = make_split_worldline(1.0, {1, 0, 0}, offset, ramp, T);
  CHECK(w.position(0.0) == Vec3{1, 0, 0});
  CHECK(w.position(T) == Vec3{1, 0, 0});
  CHECK(norm(w.position(T / 2) - Vec3{1, 0.8, 0}) < 1e-15);
  // quintic smoothstep peaks at 15/8 |offset| / ramp, reached at mid-ramp
  CHECK(norm(w.velocity(ramp / 2)) == doctest::Approx(1.875 * 0.8 / ramp).epsilon(1e-14));
  CHECK(w.max_speed() == doctest::Approx(1.875 * 0.8 / ramp).epsilon(1e-14));
  double vmax = 0.0;
  for (int i = 0; i <= 4000; ++i) vmax = std::max(vmax, norm(w.velocity(T * i / 4000.0)));
  CHECK(vmax <= w.max_speed() * (1 + 1e-14));
  CHECK(w.velocity(0.0) == Vec3{});
  CHECK(w.velocity(T) == Vec3{});
}

TEST_CASE("worldline: superluminal or degenerate ramps are rejected") {
  CHECK_THROWS_AS(make_split_worldline(1.0, {}, {1, 0, 0}, 1.0, 10.0), ValidationError);  // 1.875 > 1
  CHECK_THROWS_AS(make_split_worldline(1.0, {}, {0.1, 0, 0}, 6.0, 10.0), ValidationError);  // 2 ramp > T
  CHECK_THROWS_AS(make_split_worldline(1.0, {}, {0.1, 0, 0}, 0.0, 10.0), ValidationError);
  CHECK_THROWS_AS(make_uniform_worldline(1.0, {}, {1.0, 0, 0}, 10.0), ValidationError);
  CHECK_THROWS_AS(make_static_worldline(-1.0, {}, 10.0), ValidationError);
  CHECK_THROWS_AS(make_static_worldline(1.0, {}, 0.0), ValidationError);
}

TEST_CASE("property: split velocity is the derivative of position and u.u = -1") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double T = 5.0 + 100.0 * U(rng);
    const double ramp = T * (0.05 + 0.45 * U(rng));
    const double len = 0.9 * ramp / 1.875 * U(rng);
    const Vec3 dir{U(rng) - 0.5, U(rng) - 0.5, U(rng) - 0.5};
    const Vec3 off = (len / norm(dir)) * dir;
    const Worldline w = make_split_worldline(1.0, {U(rng), U(rng), U(rng)}, off, ramp, T);
    for (int k = 0; k < 20; ++k) {
      const double t = T * (0.01 + 0.98 * U(rng));
      const double h = 1e-5 * T;
      const Vec3 fd = (0.5 / h) * (w.position(t + h) - w.position(t - h));
      CHECK(norm(fd - w.velocity(t)) <= 1e-6 * (1.0 + norm(off) / ramp));
      const FourVector u = w.four_velocity(t);
      CHECK(minkowski_dot(u, u) == doctest::Approx(-1.0).epsilon(1e-13));
      CHECK(norm(w.velocity(t)) < 1.0);
    }
  }
}

TEST_CASE("layout: static parallel branch positions") {
  LayoutSpec s;
  s.separation = 2.0;
  s.offset = 0.5;
  s.T = 10.0;
  const BranchConfig c = make_layout(s);
  CHECK(c[Branch::L1].position(0).x == doctest::Approx(-1.5));
  CHECK(c[Branch::R1].position(0).x == doctest::Approx(-1.0));
  CHECK(c[Branch::L2].position(0).x == doctest::Approx(1.0));
  CHECK(c[Branch::R2].position(0).x == doctest::Approx(1.5));
  CHECK(c.min_pair_distance() == doctest::Approx(2.0));
  CHECK(norm(c.first(BranchPair::RL).position(0) - c.second(BranchPair::RL).position(0)) == doctest::Approx(2.0));
  CHECK(norm(c.first(BranchPair::LR).position(0) - c.second(BranchPair::LR).position(0)) == doctest::Approx(3.0));
  CHECK_FALSE(c.closed_arms());
}

TEST_CASE("layout: split branches start and end together") {
  LayoutSpec s;
  s.family = GeometryFamily::Split;
  s.separation = 1.0;
  s.offset = 1.0;
  s.T = 40.0;
  const BranchConfig c = make_layout(s);
  CHECK(c.closed_arms());
  CHECK(norm(c[Branch::L1].position(20) - c[Branch::R1].position(20)) == doctest::Approx(1.0));
  CHECK(c.min_pair_distance() == doctest::Approx(1.0));
}

TEST_CASE("layout: perpendicular offsets keep the nearest pairs at the separation") {
  LayoutSpec s;
  s.direction = OffsetDirection::Perpendicular;
  s.separation = 3.0;
  s.offset = 4.0;
  s.axis = {0, 0, 1};
  const BranchConfig c = make_layout(s);
  const auto dist = [&](BranchPair p) { return norm(c.first(p).position(0) - c.second(p).position(0)); };
  CHECK(dist(BranchPair::LL) == doctest::Approx(3.0));
  CHECK(dist(BranchPair::RR) == doctest::Approx(3.0));
  CHECK(dist(BranchPair::LR) == doctest::Approx(5.0));
  CHECK(dist(BranchPair::RL) == doctest::Approx(5.0));
  const Vec3 p = perpendicular_to({0, 0, 1});
  CHECK(std::abs(dot(p, {0, 0, 1})) < 1e-15);
  CHECK(norm(p) == doctest::Approx(1.0));
}

TEST_CASE("branch config: mismatched masses or windows are rejected") {
  const Worldline a = make_static_worldline(1.0, {0, 0, 0}, 10.0);
  const Worldline b = make_static_worldline(2.0, {1, 0, 0}, 10.0);
  const Worldline c = make_static_worldline(1.0, {3, 0, 0}, 10.0);
  const Worldline d = make_static_worldline(1.0, {4, 0, 0}, 11.0);
  CHECK_THROWS_AS(BranchConfig(a, b, c, c), ValidationError);
  CHECK_THROWS_AS(BranchConfig(a, a, c, d), ValidationError);
  CHECK_NOTHROW(BranchConfig(a, a, c, c));
  CHECK(label(BranchPair::RL) == "RL");
  CHECK(first_branch(BranchPair::RL) == Branch::R1);
  CHECK(second_branch(BranchPair::RL) == Branch::L2);
}

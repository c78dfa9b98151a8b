#include "gmesim/branch_config.hpp"

#include "gmesim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gmesim {

std::string_view label(Branch b) {
  switch (b) {
    case Branch::L1: return "L1";
    case Branch::R1: return "R1";
    case Branch::L2: return "L2";
    case Branch::R2: return "R2";
  }
  return "?";
}

std::string_view label(BranchPair p) {
  switch (p) {
    case BranchPair::LL: return "LL";
    case BranchPair::RL: return "RL";
    case BranchPair::LR: return "LR";
    case BranchPair::RR: return "RR";
  }
  return "?";
}

BranchConfig::BranchConfig(Worldline L1, Worldline R1, Worldline L2, Worldline R2)
    : w_{std::move(L1), std::move(R1), std::move(L2), std::move(R2)} {
  const double T = w_[0].duration();
  for (const auto& w : w_) {
    if (w.duration() != T) throw ValidationError("branch config: all branches must share the window [0, T]");
  }
  if (w_[0].mass() != w_[1].mass()) throw ValidationError("branch config: L1 and R1 masses differ");
  if (w_[2].mass() != w_[3].mass()) throw ValidationError("branch config: L2 and R2 masses differ");
}

bool BranchConfig::closed_arms(double tol) const {
  const double T = duration();
  for (int p = 0; p < 2; ++p) {
    const Worldline& L = w_[2 * p];
    const Worldline& R = w_[2 * p + 1];
    if (norm(L.position(0.0) - R.position(0.0)) > tol) return false;
    if (norm(L.position(T) - R.position(T)) > tol) return false;
  }
  return true;
}

namespace {

constexpr int kDistanceSamples = 257;

template <class Reduce>
double sampled_pair_distance(const std::array<Worldline, 4>& w, double init, Reduce reduce) {
  const double T = w[0].duration();
  double best = init;
  for (int a = 0; a < 2; ++a) {
    for (int b = 2; b < 4; ++b) {
      for (int k = 0; k < kDistanceSamples; ++k) {
        const double t = T * k / (kDistanceSamples - 1);
        best = reduce(best, norm(w[a].position(t) - w[b].position(t)));
      }
    }
  }
  return best;
}

}  // namespace

double BranchConfig::min_pair_distance() const {
  return sampled_pair_distance(w_, std::numeric_limits<double>::infinity(),
                               [](double x, double y) { return std::min(x, y); });
}

Vec3 perpendicular_to(const Vec3& axis) {
  const double ax = std::abs(axis.x), ay = std::abs(axis.y), az = std::abs(axis.z);
  Vec3 e;
  if (ax <= ay && ax <= az) e = {1, 0, 0};
  else if (ay <= az) e = {0, 1, 0};
  else e = {0, 0, 1};
  // e - (e.n)n, normalized
  const Vec3 n = (1.0 / norm(axis)) * axis;
  Vec3 p = e - dot(e, n) * n;
  return (1.0 / norm(p)) * p;
}

BranchConfig make_layout(const LayoutSpec& s) {
  if (!(s.separation > 0.0) || !std::isfinite(s.separation)) {
    throw ValidationError("layout: separation must be positive and finite");
  }
  if (!(s.offset >= 0.0) || !std::isfinite(s.offset)) {
    throw ValidationError("layout: offset must be non-negative and finite");
  }
  const double axis_len = norm(s.axis);
  if (!(axis_len > 0.0)) throw ValidationError("layout: axis must be a nonzero vector");
  const Vec3 n = (1.0 / axis_len) * s.axis;
  const double d = s.separation;
  const double delta = s.offset;

  // Hold-phase positions of each branch, and the common base for Split.
  Vec3 base1, base2, dir;
  if (s.direction == OffsetDirection::Parallel) {
    base1 = -(d / 2 + delta / 2) * n;
    base2 = (d / 2 + delta / 2) * n;
    dir = n;
  } else {
    base1 = -(d / 2) * n;
    base2 = (d / 2) * n;
    dir = perpendicular_to(n);
  }
  const Vec3 half = (delta / 2) * dir;

  if (s.family == GeometryFamily::Static) {
    return BranchConfig(make_static_worldline(s.mass1, base1 - half, s.T),
                        make_static_worldline(s.mass1, base1 + half, s.T),
                        make_static_worldline(s.mass2, base2 - half, s.T),
                        make_static_worldline(s.mass2, base2 + half, s.T));
  }
  const double ramp = s.ramp_time > 0.0 ? s.ramp_time : s.ramp_fraction * s.T;
  return BranchConfig(make_split_worldline(s.mass1, base1, -half, ramp, s.T),
                      make_split_worldline(s.mass1, base1, half, ramp, s.T),
                      make_split_worldline(s.mass2, base2, -half, ramp, s.T),
                      make_split_worldline(s.mass2, base2, half, ramp, s.T));
}

}  // namespace gmesim

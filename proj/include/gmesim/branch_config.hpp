#pragma once

#include "gmesim/worldline.hpp"

#include <array>
#include <string_view>

namespace gmesim {

enum class Branch : int { L1 = 0, R1 = 1, L2 = 2, R2 = 3 };

/// Two-particle branch pair; the enumerator value is the basis index in
/// {L1L2, R1L2, L1R2, R1R2}, i.e. index = a + 2b with a, b in {L=0, R=1}.
enum class BranchPair : int { LL = 0, RL = 1, LR = 2, RR = 3 };

inline constexpr std::array<BranchPair, 4> kAllPairs{BranchPair::LL, BranchPair::RL,
                                                      BranchPair::LR, BranchPair::RR};

constexpr Branch first_branch(BranchPair p) {
  return (static_cast<int>(p) & 1) ? Branch::R1 : Branch::L1;
}
constexpr Branch second_branch(BranchPair p) {
  return (static_cast<int>(p) & 2) ? Branch::R2 : Branch::L2;
}

std::string_view label(Branch b);
std::string_view label(BranchPair p);  // "LL", "RL", ...

/// Four branch worldlines sharing the window [0, T]. Particle 1 lives on
/// L1/R1, particle 2 on L2/R2.
class BranchConfig {
 public:
  /// Throws ValidationError on mismatched windows or per-particle masses.
  BranchConfig(Worldline L1, Worldline R1, Worldline L2, Worldline R2);

  const Worldline& operator[](Branch b) const { return w_[static_cast<int>(b)]; }
  const Worldline& first(BranchPair p) const { return (*this)[first_branch(p)]; }
  const Worldline& second(BranchPair p) const { return (*this)[second_branch(p)]; }

  double duration() const { return w_[0].duration(); }
  double mass1() const { return w_[0].mass(); }
  double mass2() const { return w_[2].mass(); }

  /// Whether each particle's two branches meet at t = 0 and t = T.
  bool closed_arms(double tol = 1e-12) const;

  /// Smallest |z_a(t) - z_b(t)| over inter-particle pairs, sampled on the window.
  double min_pair_distance() const;

 private:
  std::array<Worldline, 4> w_;
};

enum class OffsetDirection { Parallel, Perpendicular };
enum class GeometryFamily { Static, Split };

/// Symmetric two-particle layout along `axis`.
///
/// `separation` is the distance between the nearest branches of the two
/// particles and `offset` the distance between a particle's L and R branches
/// (during the hold phase, for Split). Parallel offsets put the branches on
/// the axis as L1, R1 | L2, R2; perpendicular offsets displace L and R
/// sideways, so L1-L2 and R1-R2 are the nearest pairs.
struct LayoutSpec {
  GeometryFamily family = GeometryFamily::Static;
  double mass1 = 1.0;
  double mass2 = 1.0;
  double separation = 1.0;
  double offset = 1.0;
  double T = 10.0;
  double ramp_time = 0.0;  // Split only; 0 selects ramp_fraction * T
  double ramp_fraction = 0.25;
  OffsetDirection direction = OffsetDirection::Parallel;
  Vec3 axis{1.0, 0.0, 0.0};
};

BranchConfig make_layout(const LayoutSpec& spec);

/// Unit vector orthogonal to `axis` used for perpendicular offsets.
Vec3 perpendicular_to(const Vec3& axis);

}  // namespace gmesim

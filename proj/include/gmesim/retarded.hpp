#pragma once

#include "gmesim/vec.hpp"
#include "gmesim/worldline.hpp"

namespace gmesim {

/// Emission event on a source worldline whose light signal reaches a field point.
struct RetardedSolution {
  double t_r = 0.0;
  double lag = 0.0;  // t - t_r, solved directly for precision at large t
  Vec3 unit_separation{};  // (x - z(t_r)) / |x - z(t_r)|
  double distance = 0.0;
  double doppler_factor = 1.0;  // 1 - r.dz/dt at t_r
  bool in_window = true;        // t_r >= 0
};

/// Solves t - t_r = |x - z(t_r)| for the field point (t, x), t in [0, T].
/// Roots before the window are returned with in_window = false.
RetardedSolution solve_retarded_time(const Worldline& source, const FourVector& field_point);

/// P contracted with two unit four-velocities: 2 (u_a.u_b)^2 - 1.
double bitensor_contract(const FourVector& u_a, const FourVector& u_b);

/// Symmetrized retarded interaction energy H_I(t) = (H_12 + H_21) / 2.
/// A term whose emission precedes the window contributes 0.
double pair_hamiltonian(const Worldline& w1, const Worldline& w2, double t, double G);

namespace detail {

/// Light-cone root in the lag variable on the extended worldline.
/// direction = +1 gives the retarded root t - lag, -1 the advanced root t + lag.
/// For the advanced root, in_window means t + lag <= T and doppler_factor is
/// 1 + r.dz/dt. No window check on t.
RetardedSolution solve_light_cone(const Worldline& source, double t, const Vec3& x, int direction);

}  // namespace detail

}  // namespace gmesim

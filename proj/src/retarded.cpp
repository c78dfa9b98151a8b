#include "gmesim/retarded.hpp"

#include "gmesim/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gmesim {

namespace detail {

RetardedSolution solve_light_cone(const Worldline& source, double t, const Vec3& x, int direction) {
  const double s = direction >= 0 ? 1.0 : -1.0;
  auto emission_time = [&](double lag) { return t - s * lag; };

  const double d0 = norm(x - source.position(t));
  RetardedSolution sol;
  if (d0 == 0.0) {
    sol.t_r = t;
    sol.lag = 0.0;
    sol.distance = 0.0;
    sol.doppler_factor = 1.0;
  } else {
    // h(lag) = lag - |x - z(t - s lag)| is increasing with slope >= 1 - v_max.
    const double vmax = source.max_speed();
    double lo = 0.0;
    double hi = d0 / (1.0 - vmax);
    double lag = d0;
    const double tol = 1e-13;
    bool done = false;
    for (int it = 0; it < 200 && !done; ++it) {
      const double te = emission_time(lag);
      const Vec3 sep = x - source.position(te);
      const double dist = norm(sep);
      const double h = lag - dist;
      if (std::abs(h) <= tol) {
        done = true;
        break;
      }
      if (h < 0.0) lo = lag;
      else hi = lag;
      const double slope = 1.0 - s * dot(sep, source.velocity(te)) / dist;
      double next = lag - h / slope;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (next == lag || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
        lag = next;
        done = true;
        break;
      }
      lag = next;
    }
    if (!done) {
      std::ostringstream os;
      os << "light-cone solver did not converge at t = " << t;
      throw SolverError(os.str());
    }
    sol.lag = lag;
    sol.t_r = emission_time(lag);
    const Vec3 sep = x - source.position(sol.t_r);
    sol.distance = norm(sep);
    sol.unit_separation = (1.0 / sol.distance) * sep;
    sol.doppler_factor = 1.0 - s * dot(sol.unit_separation, source.velocity(sol.t_r));
  }
  sol.in_window = direction >= 0 ? sol.t_r >= 0.0 : sol.t_r <= source.duration();
  return sol;
}

}  // namespace detail

RetardedSolution solve_retarded_time(const Worldline& source, const FourVector& field_point) {
  if (!source.in_domain(field_point.t)) {
    std::ostringstream os;
    os << "solve_retarded_time: field time " << field_point.t << " outside [0, "
       << source.duration() << "]";
    throw DomainError(os.str());
  }
  return detail::solve_light_cone(source, field_point.t, field_point.s, +1);
}

double bitensor_contract(const FourVector& u_a, const FourVector& u_b) {
  const double p = minkowski_dot(u_a, u_b);
  return 2.0 * p * p - 1.0;
}

namespace {

double retarded_term(const Worldline& field, const Worldline& source, double t, double G) {
  const RetardedSolution r = detail::solve_light_cone(source, t, field.position(t), +1);
  if (!r.in_window) return 0.0;
  const FourVector u = field.four_velocity(t);
  const FourVector ur = source.four_velocity(r.t_r);
  return -G * field.mass() * source.mass() * bitensor_contract(u, ur) /
         (u.t * ur.t * r.doppler_factor * r.distance);
}

}  // namespace

double pair_hamiltonian(const Worldline& w1, const Worldline& w2, double t, double G) {
  if (!w1.in_domain(t) || !w2.in_domain(t)) {
    throw DomainError("pair_hamiltonian: t outside the interaction window");
  }
  if (norm(w1.position(t) - w2.position(t)) == 0.0) {
    throw SingularityError("pair_hamiltonian: coincident worldlines at evaluation time");
  }
  return 0.5 * (retarded_term(w1, w2, t, G) + retarded_term(w2, w1, t, G));
}

}  // namespace gmesim

#include "gmesim/regime_scanner.hpp"

#include "gmesim/classical_model.hpp"
#include "gmesim/errors.hpp"
#include "gmesim/quantum_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gmesim {

std::string_view label(DominanceRatio::Kind k) {
  switch (k) {
    case DominanceRatio::Kind::Finite: return "finite";
    case DominanceRatio::Kind::Infinite: return "infinite";
    case DominanceRatio::Kind::Undefined: return "undefined";
  }
  return "?";
}

std::string_view label(Regime r) {
  switch (r) {
    case Regime::TimelikeDominated: return "timelike-dominated";
    case Regime::Spacelike: return "spacelike";
    case Regime::Mixed: return "mixed";
  }
  return "?";
}

std::string_view label(SweepAxis a) {
  switch (a) {
    case SweepAxis::Mass1: return "m1";
    case SweepAxis::Mass2: return "m2";
    case SweepAxis::Separation: return "separation";
    case SweepAxis::Offset: return "offset";
    case SweepAxis::Duration: return "T";
    case SweepAxis::G: return "G";
  }
  return "?";
}

SweepAxis parse_sweep_axis(std::string_view name) {
  for (SweepAxis a : {SweepAxis::Mass1, SweepAxis::Mass2, SweepAxis::Separation, SweepAxis::Offset,
                      SweepAxis::Duration, SweepAxis::G}) {
    if (label(a) == name) return a;
  }
  throw ValidationError("unknown sweep axis '" + std::string(name) +
                        "' (expected m1, m2, separation, offset, T or G)");
}

DominanceRatio dominance_ratio(double dc, double hc) {
  DominanceRatio r;
  const double num = std::abs(dc), den = std::abs(hc);
  if (den == 0.0) {
    r.kind = num == 0.0 ? DominanceRatio::Kind::Undefined : DominanceRatio::Kind::Infinite;
    r.value = num == 0.0 ? std::numeric_limits<double>::quiet_NaN() : std::numeric_limits<double>::infinity();
    return r;
  }
  r.value = num / den;
  return r;
}

DominanceRatio dominance_ratio(const BranchConfig& config, const KernelOptions& opt) {
  const ConfigFunctionals f = evaluate_functionals(config, opt, ExecutionPolicy::Parallel, {.noise = false});
  const double dc = (f.delta[0].real() + f.delta[3].real()) - (f.delta[1].real() + f.delta[2].real());
  const double hc = (f.hadamard[2].real() + f.hadamard[1].real()) - (f.hadamard[0].real() + f.hadamard[3].real());
  return dominance_ratio(dc, hc);
}

namespace {

Regime classify(const std::array<bool, 4>& connected, const DominanceRatio& ratio) {
  const bool none = std::none_of(connected.begin(), connected.end(), [](bool b) { return b; });
  if (none) return Regime::Spacelike;
  const bool all = std::all_of(connected.begin(), connected.end(), [](bool b) { return b; });
  const bool dominated = ratio.kind == DominanceRatio::Kind::Infinite ||
                         (ratio.kind == DominanceRatio::Kind::Finite && ratio.value > 1.0);
  return all && dominated ? Regime::TimelikeDominated : Regime::Mixed;
}

void fill_report(ModelReport& r, const ExperimentSpec& e, const KernelOptions& opt, ExecutionPolicy policy) {
  const BranchConfig config = make_layout(e.layout);
  const ConfigFunctionals f = evaluate_functionals(config, opt, policy);

  QuantumInputs in;
  in.G = e.G;
  for (int i = 0; i < 4; ++i) {
    r.delta[i] = f.delta[i].real();
    r.delta_error[i] = f.delta[i].error;
    r.causal[i] = f.causal[i].real();
    r.hadamard[i] = f.hadamard[i].real();
    r.hadamard_error[i] = f.hadamard[i].error;
    r.causally_connected[i] = f.causally_connected[i];
    in.delta[i] = r.delta[i];
    in.hadamard[i] = r.hadamard[i];
    r.max_quadrature_error = std::max({r.max_quadrature_error, f.delta[i].error, f.hadamard[i].error});
  }
  r.L_V = f.noise.L_V;
  r.L_I = f.noise.L_I;
  r.noise_regulator = f.noise.regulator;
  r.noise_error = f.noise.error;
  r.branch_symmetry_defect = f.noise.symmetry_defect;
  in.noise1 = f.noise.noise_difference(0);
  in.noise2 = f.noise.noise_difference(1);

  const PhaseTable table = make_phase_table(in.delta, e.G);
  r.delta_combination = in.delta_combination();
  r.hadamard_combination = in.hadamard_combination();
  r.N_c_exact = classical_negativity(table, true);
  r.N_c_leading = classical_negativity(table, false);
  r.classical_limit = classical_limit_switch(in);
  r.dominance = dominance_ratio(r.delta_combination, r.hadamard_combination);
  r.regime = classify(r.causally_connected, r.dominance);

  if (!f.noise.symmetric) throw ValidationError(f.noise.warning);
  const QuantumNegativity q = quantum_negativity_details(assemble_perturbed_state(in));
  r.N_G = q.value;
  r.L_effective = q.effective_noise;
}

}  // namespace

ModelReport evaluate_model(const ExperimentSpec& e, const KernelOptions& opt, ExecutionPolicy policy) {
  ModelReport r;
  r.experiment = e;
  try {
    fill_report(r, e, opt, policy);
  } catch (const ValidationError& ex) {
    r.ok = false;
    r.error_code = 1;
    r.status = ex.what();
  } catch (const AccuracyError& ex) {
    r.ok = false;
    r.error_code = 2;
    r.status = ex.what();
  } catch (const std::exception& ex) {
    r.ok = false;
    r.error_code = 3;
    r.status = ex.what();
  }
  return r;
}

std::size_t grid_size(const SweepSpec& spec) {
  std::size_t n = 1;
  for (const auto& a : spec.axes) {
    if (a.values.empty()) throw ValidationError("sweep axis '" + std::string(label(a.axis)) + "' has no values");
    for (double v : a.values) {
      const bool nonneg_ok = a.axis == SweepAxis::Offset;
      if (!std::isfinite(v) || (nonneg_ok ? v < 0.0 : !(v > 0.0))) {
        throw ValidationError("sweep axis '" + std::string(label(a.axis)) + "' has a non-physical value");
      }
    }
    if (n > spec.grid_cap / a.values.size() + 1) throw ValidationError("sweep grid exceeds grid_cap");
    n *= a.values.size();
  }
  for (std::size_t i = 0; i < spec.axes.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.axes.size(); ++j) {
      if (spec.axes[i].axis == spec.axes[j].axis) throw ValidationError("sweep axis repeated");
    }
  }
  if (n > spec.grid_cap) throw ValidationError("sweep grid exceeds grid_cap");
  return n;
}

ExperimentSpec grid_point(const SweepSpec& spec, std::size_t index, std::vector<double>* coords) {
  ExperimentSpec e = spec.base;
  std::vector<std::size_t> idx(spec.axes.size());
  for (std::size_t k = spec.axes.size(); k-- > 0;) {
    const std::size_t n = spec.axes[k].values.size();
    idx[k] = index % n;
    index /= n;
  }
  if (coords) coords->clear();
  for (std::size_t k = 0; k < spec.axes.size(); ++k) {
    const double v = spec.axes[k].values[idx[k]];
    if (coords) coords->push_back(v);
    switch (spec.axes[k].axis) {
      case SweepAxis::Mass1: e.layout.mass1 = v; break;
      case SweepAxis::Mass2: e.layout.mass2 = v; break;
      case SweepAxis::Separation: e.layout.separation = v; break;
      case SweepAxis::Offset: e.layout.offset = v; break;
      case SweepAxis::Duration: e.layout.T = v; break;
      case SweepAxis::G: e.G = v; break;
    }
  }
  return e;
}

std::vector<ModelReport> run_sweep(const SweepSpec& spec) {
  const std::size_t n = grid_size(spec);
  std::vector<ModelReport> out(n);
  // One point: parallelize inside it. Several: parallelize across points.
  const bool outer = spec.policy == ExecutionPolicy::Parallel && n > 1;
  const ExecutionPolicy inner = outer ? ExecutionPolicy::Serial : spec.policy;
  auto body = [&](std::size_t i) {
    std::vector<double> coords;
    const ExperimentSpec e = grid_point(spec, i, &coords);
    out[i] = evaluate_model(e, spec.numerics, inner);
    out[i].index = i;
    out[i].coordinates = std::move(coords);
  };
  if (outer) {
    const long long m = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < m; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) body(i);
  }
  return out;
}

}  // namespace gmesim

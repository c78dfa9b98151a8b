#include "gmesim/commands.hpp"

#include "gmesim/classical_model.hpp"
#include "gmesim/errors.hpp"
#include "gmesim/quantum_model.hpp"
#include "gmesim/retarded.hpp"
#include "gmesim/static_closed_form.hpp"
#include "gmesim/version.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>

namespace gmesim {

std::string_view label(Command c) {
  switch (c) {
    case Command::Single: return "single";
    case Command::Sweep: return "sweep";
    case Command::Validate: return "validate";
    case Command::Oracle: return "oracle";
  }
  return "?";
}

int exit_status_for_report(int error_code) {
  if (error_code == 0) return kExitOk;
  if (error_code == 1) return kExitValidation;
  // every non-validation failure inside evaluate_model is numerical
  return kExitAccuracy;
}

namespace {

double rel_error(double numeric, double exact) {
  if (exact == 0.0) return std::abs(numeric);
  return std::abs(numeric - exact) / std::abs(exact);
}

// Haar-random 2x2 unitary: a uniform unit column, its orthogonal partner, and a random phase.
Eigen::Matrix2cd random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  Eigen::Vector2cd v;
  v(0) = {n(rng), n(rng)};
  v(1) = {n(rng), n(rng)};
  v.normalize();
  const std::complex<double> phase = std::polar(1.0, angle(rng));
  Eigen::Matrix2cd q;
  q << v(0), -phase * std::conj(v(1)), v(1), phase * std::conj(v(0));
  return q;
}

// Basis index a + 2b: particle 1 is the fast index, so U1 acts on the right factor.
DensityMatrix4 local_rotate(const DensityMatrix4& rho, const Eigen::Matrix2cd& u1, const Eigen::Matrix2cd& u2) {
  DensityMatrix4 u;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) u(a + 2 * b, c + 2 * d) = u1(a, c) * u2(b, d);
  return u * rho * u.adjoint();
}

struct CheckTable {
  Table t{{"check", "value", "tolerance", "pass"}, {}};
  bool all = true;
  void add(const std::string& name, double value, double tol, bool pass) {
    t.rows.push_back({name, value, tol, std::int64_t{pass ? 1 : 0}});
    all = all && pass;
  }
};

}  // namespace

Table oracle_table(const RunConfig& config) {
  const LayoutSpec& L = config.experiment.layout;
  if (L.family != GeometryFamily::Static) throw ValidationError("oracle requires experiment.geometry: static");
  const BranchConfig bc = make_layout(L);
  const ExecutionPolicy policy = config.parallel ? ExecutionPolicy::Parallel : ExecutionPolicy::Serial;
  const ConfigFunctionals f = evaluate_functionals(bc, config.numerics, policy, {.hadamard = true, .noise = false});
  Table t;
  t.columns = {"pair",           "distance",          "analytic_delta",   "numeric_delta",
               "delta_rel_error", "analytic_hadamard", "numeric_hadamard", "hadamard_rel_error",
               "hadamard_quad_error"};
  for (BranchPair p : kAllPairs) {
    const int i = static_cast<int>(p);
    const double d = norm(bc.first(p).position(0.0) - bc.second(p).position(0.0));
    const double ad = static_delta(L.mass1, L.mass2, d, L.T);
    const double ah = static_hadamard(L.mass1, L.mass2, d, L.T);
    const double nd = f.delta[i].real();
    const double nh = f.hadamard[i].real();
    t.rows.push_back({std::string(label(p)), d, ad, nd, rel_error(nd, ad), ah, nh, rel_error(nh, ah),
                      f.hadamard[i].error});
  }
  return t;
}

Table validate_table(const RunConfig& config) {
  const ExperimentSpec& e = config.experiment;
  const LayoutSpec& L = e.layout;
  const BranchConfig bc = make_layout(L);
  const ExecutionPolicy policy = config.parallel ? ExecutionPolicy::Parallel : ExecutionPolicy::Serial;
  CheckTable c;

  if (L.family == GeometryFamily::Split) c.add("branches_closed", bc.closed_arms() ? 0.0 : 1.0, 0.0, bc.closed_arms());

  if (L.family == GeometryFamily::Static) {
    // Newtonian limit on the nearest pair, once the interaction is fully causal.
    const Worldline& w1 = bc.first(BranchPair::RL);
    const Worldline& w2 = bc.second(BranchPair::RL);
    const double d = norm(w1.position(0.0) - w2.position(0.0));
    if (L.T > d) {
      const double h = pair_hamiltonian(w1, w2, L.T, e.G);
      const double ref = static_pair_energy(L.mass1, L.mass2, d, e.G);
      c.add("newtonian_limit_rel", rel_error(h, ref), 1e-10, rel_error(h, ref) <= 1e-10);
    }
  }

  const ConfigFunctionals f = evaluate_functionals(bc, config.numerics, policy);
  QuantumInputs in;
  in.G = e.G;
  bool any_connected = false;
  bool all_zero = true;
  for (int i = 0; i < 4; ++i) {
    in.delta[i] = f.delta[i].real();
    in.hadamard[i] = f.hadamard[i].real();
    any_connected = any_connected || f.causally_connected[i];
    all_zero = all_zero && in.delta[i] == 0.0;
  }
  in.noise1 = f.noise.noise_difference(0);
  in.noise2 = f.noise.noise_difference(1);
  c.add("spacelike_consistency", all_zero == !any_connected ? 0.0 : 1.0, 0.0, all_zero == !any_connected);
  c.add("branch_symmetry_defect", f.noise.symmetry_defect, kBranchSymmetryTolerance, f.noise.symmetric);
  for (int p = 0; p < 2; ++p) {
    const double diff = p == 0 ? in.noise1 : in.noise2;
    c.add("noise_LV_minus_LI_particle" + std::to_string(p + 1), diff, 0.0, diff >= 0.0);
  }

  const PhaseTable table = make_phase_table(in.delta, e.G);
  const DensityMatrix4 rho_c = classical_final_state(table);
  const double purity = std::abs((rho_c * rho_c).trace().real() - 1.0);
  c.add("classical_purity_defect", purity, 1e-12, purity <= 1e-12);
  const StateDiagnostics dc = validate_state(rho_c, StateKind::Full);
  c.add("classical_state_valid", static_cast<double>(dc.violations.size()), 0.0, dc.ok());

  const PerturbedState st = assemble_perturbed_state(in);
  double herm = 0.0, trace = 0.0;
  for (const DensityMatrix4* m : {&st.d_rho_c, &st.d_rho_l, &st.d_rho_q}) {
    const StateDiagnostics di = validate_state(*m, StateKind::Increment);
    herm = std::max(herm, di.hermiticity_defect);
    trace = std::max({trace, di.trace_defect, di.trace_imag});
  }
  c.add("increment_hermiticity_defect", herm, 1e-14, herm <= 1e-14);
  c.add("increment_trace_defect", trace, 1e-14, trace <= 1e-14);

  const PositivityReport pos = positivity_report(st);
  c.add("first_order_positivity", pos.first_order.empty() ? 0.0 : pos.first_order.front(), 0.0,
        pos.first_order_nonnegative);
  if (pos.resolved) c.add("positivity_C_observed", pos.C_observed, pos.C_bound, pos.within_bound);

  const double nc = classical_negativity(table, false);
  const double cl = classical_limit_switch(in);
  const double dev = rel_error(cl, nc);
  c.add("classical_limit_rel", dev, 1e-10, dev <= 1e-10);

  std::mt19937_64 rng(config.seed);
  const double n0 = negativity(rho_c);
  double drift = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Matrix2cd u1 = random_unitary(rng);
    const Eigen::Matrix2cd u2 = random_unitary(rng);
    drift = std::max(drift, std::abs(negativity(local_rotate(rho_c, u1, u2)) - n0));
  }
  c.add("local_unitary_drift", drift, 1e-10, drift <= 1e-10);

  if (L.family == GeometryFamily::Static) {
    const Table o = oracle_table(config);
    double ed = 0.0, eh = 0.0;
    for (const auto& row : o.rows) {
      ed = std::max(ed, cell_as_double(row[o.column("delta_rel_error")]));
      eh = std::max(eh, cell_as_double(row[o.column("hadamard_rel_error")]));
    }
    c.add("oracle_delta_rel", ed, kOracleDeltaTolerance, ed <= kOracleDeltaTolerance);
    c.add("oracle_hadamard_rel", eh, kOracleHadamardTolerance, eh <= kOracleHadamardTolerance);
  }
  return c.t;
}

CommandResult run_command(Command command, const RunConfig& config) {
  CommandResult r;
  const ExecutionPolicy policy = config.parallel ? ExecutionPolicy::Parallel : ExecutionPolicy::Serial;
  switch (command) {
    case Command::Single: {
      const ModelReport m = evaluate_model(config.experiment, config.numerics, policy);
      r.table = model_table({m}, {});
      r.status = exit_status_for_report(m.error_code);
      break;
    }
    case Command::Sweep: {
      const SweepSpec spec = config.sweep_spec();
      if (spec.axes.empty()) throw ValidationError("sweep requires a sweep.axes section");
      const std::vector<ModelReport> reports = run_sweep(spec);
      std::vector<SweepAxis> axes;
      for (const auto& a : spec.axes) axes.push_back(a.axis);
      r.table = model_table(reports, axes);
      for (const auto& m : reports) r.status = std::max(r.status, exit_status_for_report(m.error_code));
      break;
    }
    case Command::Validate: {
      r.table = validate_table(config);
      const std::size_t pass = r.table.column("pass");
      for (const auto& row : r.table.rows)
        if (std::get<std::int64_t>(row[pass]) == 0) r.status = kExitValidation;
      break;
    }
    case Command::Oracle: {
      r.table = oracle_table(config);
      const std::size_t cd = r.table.column("delta_rel_error");
      const std::size_t ch = r.table.column("hadamard_rel_error");
      for (const auto& row : r.table.rows) {
        if (!(cell_as_double(row[cd]) <= kOracleDeltaTolerance) ||
            !(cell_as_double(row[ch]) <= kOracleHadamardTolerance))
          r.status = kExitAccuracy;
      }
      break;
    }
  }
  return r;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Branch-superposition gravity entanglement simulator", "gmesim"};
  app.set_version_flag("--version", std::string("gmesim ") + kVersion);
  app.require_subcommand(1);

  std::string out_path, format;
  std::optional<double> tol_rel;
  std::optional<std::uint64_t> seed;
  app.add_option("--out", out_path, "Output file (default: config output.path or stdout)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol-rel", tol_rel, "Relative quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for randomized checks");

  std::string config_path;
  Command command = Command::Single;
  for (Command c : {Command::Single, Command::Sweep, Command::Validate, Command::Oracle}) {
    const char* help = c == Command::Single     ? "Evaluate one configuration"
                       : c == Command::Sweep    ? "Evaluate the sweep grid"
                       : c == Command::Validate ? "Run the invariant suite"
                                                : "Compare static closed forms with numerics";
    CLI::App* sub = app.add_subcommand(std::string(label(c)), help);
    sub->fallthrough();
    sub->add_option("--config", config_path, "YAML configuration")->required();
    sub->callback([&command, c] { command = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    RunConfig config = load_config(config_path);
    if (!out_path.empty()) config.output_path = out_path;
    if (!format.empty()) config.format = parse_output_format(format);
    if (tol_rel) config.numerics.quad.rel_tol = *tol_rel;
    if (seed) config.seed = *seed;

    const CommandResult res = run_command(command, config);
    const Provenance header = make_provenance(config, label(command));

    std::ofstream file;
    std::ostream* dest = &out;
    if (!config.output_path.empty()) {
      file.open(config.output_path, std::ios::binary);
      if (!file) throw IoError("cannot open output file '" + config.output_path + "'");
      dest = &file;
    }
    if (config.format == OutputFormat::Csv) write_csv(*dest, header, res.table);
    else write_json(*dest, header, res.table);
    dest->flush();
    if (!*dest) throw IoError("failed writing output");
    if (res.status != kExitOk) err << "gmesim: " << label(command) << " finished with failures (exit " << res.status
                                   << ")\n";
    return res.status;
  } catch (const ParseError& e) {
    err << "gmesim: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "gmesim: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    err << "gmesim: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "gmesim: " << e.what() << '\n';
    return kExitAccuracy;
  }
}

}  // namespace gmesim

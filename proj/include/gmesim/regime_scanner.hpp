#pragma once

#include "gmesim/branch_config.hpp"
#include "gmesim/kernels.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gmesim {

struct DominanceRatio {
  enum class Kind { Finite, Infinite, Undefined };
  double value = 0.0;
  Kind kind = Kind::Finite;
};

std::string_view label(DominanceRatio::Kind k);

/// |delta combination| / |Hadamard combination|.
DominanceRatio dominance_ratio(double delta_combination, double hadamard_combination);
DominanceRatio dominance_ratio(const BranchConfig& config, const KernelOptions& opt = {});

enum class Regime { TimelikeDominated, Spacelike, Mixed };
std::string_view label(Regime r);

enum class SweepAxis { Mass1, Mass2, Separation, Offset, Duration, G };
std::string_view label(SweepAxis a);
SweepAxis parse_sweep_axis(std::string_view name);  // throws ValidationError

/// A geometry template plus coupling, in internal units.
struct ExperimentSpec {
  LayoutSpec layout{};
  double G = 1.0;
};

struct AxisValues {
  SweepAxis axis = SweepAxis::Duration;
  std::vector<double> values;
};

struct SweepSpec {
  ExperimentSpec base{};
  std::vector<AxisValues> axes;
  std::size_t grid_cap = 10000;
  KernelOptions numerics{};
  ExecutionPolicy policy = ExecutionPolicy::Parallel;
};

struct ModelReport {
  std::size_t index = 0;
  std::vector<double> coordinates;  // one per sweep axis, in axis order
  ExperimentSpec experiment{};

  bool ok = true;
  int error_code = 0;  // 0 ok, 1 validation, 2 accuracy, 3 other
  std::string status = "ok";

  std::array<double, 4> delta{};
  std::array<double, 4> delta_error{};
  std::array<double, 4> causal{};
  std::array<double, 4> hadamard{};
  std::array<double, 4> hadamard_error{};
  std::array<bool, 4> causally_connected{};
  double L_V = 0.0;
  double L_I = 0.0;
  double noise_regulator = 0.0;
  double noise_error = 0.0;
  double branch_symmetry_defect = 0.0;

  double delta_combination = 0.0;
  double hadamard_combination = 0.0;
  double N_c_exact = 0.0;
  double N_c_leading = 0.0;
  double N_G = 0.0;
  double classical_limit = 0.0;
  double L_effective = 0.0;
  DominanceRatio dominance{};
  Regime regime = Regime::Mixed;
  double max_quadrature_error = 0.0;
};

/// Evaluates every diagnostic for one configuration. Never throws for
/// numerical failures; they are recorded in the report.
ModelReport evaluate_model(const ExperimentSpec& experiment, const KernelOptions& opt = {},
                           ExecutionPolicy policy = ExecutionPolicy::Parallel);

/// Number of grid points; throws ValidationError if the spec is invalid.
std::size_t grid_size(const SweepSpec& spec);

/// Configuration of grid point `index` (row-major, last axis fastest).
ExperimentSpec grid_point(const SweepSpec& spec, std::size_t index, std::vector<double>* coords = nullptr);

/// One report per grid point in row-major order, independent of scheduling.
std::vector<ModelReport> run_sweep(const SweepSpec& spec);

}  // namespace gmesim

#pragma once

#include "gmesim/kernels.hpp"
#include "gmesim/regime_scanner.hpp"
#include "gmesim/units.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gmesim {

enum class OutputFormat { Csv, Json };
std::string_view label(OutputFormat f);
OutputFormat parse_output_format(std::string_view s);  // throws ValidationError

/// Fully resolved run configuration; every physical quantity is in internal units.
struct RunConfig {
  double length_scale_m = 1.0;
  std::optional<double> G_override;  // internal units
  ExperimentSpec experiment{};
  KernelOptions numerics{};
  std::size_t grid_cap = 10000;
  bool parallel = true;
  std::vector<AxisValues> sweep_axes;
  OutputFormat format = OutputFormat::Csv;
  std::string output_path;  // empty: stdout
  std::uint64_t seed = 20240917;

  /// Keys taken from defaults rather than from the document.
  std::vector<std::string> defaulted;

  UnitsSystem units() const;
  SweepSpec sweep_spec() const;
  /// (key, value) pairs of the resolved configuration, in schema order.
  std::vector<std::pair<std::string, std::string>> resolved() const;
};

/// Parses a YAML document in the documented schema. Unknown keys and type
/// errors raise ParseError (with line and field); physically invalid values
/// raise ValidationError listing every violation.
RunConfig parse_config(std::string_view text);

/// Reads and parses a file; unreadable files raise IoError.
RunConfig load_config(const std::string& path);

/// Formats a double with 17 significant digits ("nan", "inf", "-inf" for non-finite).
std::string format_double(double x);

}  // namespace gmesim

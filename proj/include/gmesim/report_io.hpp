#pragma once

#include "gmesim/regime_scanner.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace gmesim {

struct RunConfig;

using Cell = std::variant<double, std::int64_t, std::string>;

/// Flat table: fixed column names, one row per record.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::size_t column(std::string_view name) const;  // throws ValidationError if absent
};

/// Numeric view of a cell; strings "nan"/"inf"/"-inf" map to non-finite values.
double cell_as_double(const Cell& c);

/// Ordered key/value header written ahead of every output.
using Provenance = std::vector<std::pair<std::string, std::string>>;

Provenance make_provenance(const RunConfig& config, std::string_view command);

/// One row per report; axis columns come first, named after the sweep axes.
Table model_table(const std::vector<ModelReport>& reports, const std::vector<SweepAxis>& axes);

void write_csv(std::ostream& out, const Provenance& header, const Table& table);
void write_json(std::ostream& out, const Provenance& header, const Table& table);

/// Parse-back of the two formats. The provenance header is returned through `header` if given.
Table read_csv(std::istream& in, Provenance* header = nullptr);
Table read_json(std::istream& in, Provenance* header = nullptr);

}  // namespace gmesim

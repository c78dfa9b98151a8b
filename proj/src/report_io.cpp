#include "gmesim/report_io.hpp"

#include "gmesim/config.hpp"
#include "gmesim/errors.hpp"
#include "gmesim/version.hpp"

#include "json.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace gmesim {

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw ValidationError("no column named '" + std::string(name) + "'");
}

double cell_as_double(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  const auto& s = std::get<std::string>(c);
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  throw ValidationError("cell '" + s + "' is not numeric");
}

Provenance make_provenance(const RunConfig& config, std::string_view command) {
  Provenance p{{"tool", "gmesim"}, {"version", kVersion}, {"command", std::string(command)}};
  const UnitsSystem u = config.units();
  p.emplace_back("units.convention", "c = hbar = 1");
  p.emplace_back("units.length_m", format_double(u.length_to_si(1.0)));
  p.emplace_back("units.time_s", format_double(u.time_to_si(1.0)));
  p.emplace_back("units.mass_kg", format_double(u.mass_to_si(1.0)));
  for (auto& kv : config.resolved()) p.push_back(std::move(kv));
  return p;
}

namespace {

constexpr std::array<const char*, 4> kPairSuffix{"LL", "RL", "LR", "RR"};

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

Cell parse_cell(const std::string& s) {
  std::int64_t i = 0;
  const char* end = s.data() + s.size();
  if (auto r = std::from_chars(s.data(), end, i); r.ec == std::errc() && r.ptr == end && !s.empty()) return i;
  double d = 0.0;
  if (auto r = std::from_chars(s.data(), end, d); r.ec == std::errc() && r.ptr == end && !s.empty()) return d;
  return s;
}

// RFC 4180 style record reader; returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string cur;
  bool quoted = false;
  char ch;
  while (in.get(ch)) {
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          cur += '"';
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (ch == '\n') {
      break;
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  if (quoted) throw ParseError("unterminated quoted CSV field");
  fields.push_back(std::move(cur));
  return true;
}

}  // namespace

Table model_table(const std::vector<ModelReport>& reports, const std::vector<SweepAxis>& axes) {
  Table t;
  auto& c = t.columns;
  c.push_back("index");
  for (SweepAxis a : axes) c.push_back("axis_" + std::string(label(a)));
  for (const char* n : {"mass1", "mass2", "separation", "offset", "T", "G"}) c.emplace_back(n);
  for (const char* n : {"geometry", "ok", "error_code", "status"}) c.emplace_back(n);
  for (const char* base : {"delta", "delta_error", "causal", "hadamard", "hadamard_error", "connected"})
    for (const char* s : kPairSuffix) c.push_back(std::string(base) + "_" + s);
  for (const char* n :
       {"L_V", "L_I", "noise_regulator", "noise_error", "branch_symmetry_defect", "delta_combination",
        "hadamard_combination", "feynman_combination_re", "feynman_combination_im", "N_c_exact", "N_c_leading",
        "N_G", "negativity_difference", "classical_limit", "L_effective", "dominance_ratio", "dominance_kind",
        "regime", "max_quadrature_error"})
    c.emplace_back(n);

  for (const ModelReport& r : reports) {
    std::vector<Cell> row;
    row.reserve(c.size());
    row.emplace_back(static_cast<std::int64_t>(r.index));
    for (std::size_t i = 0; i < axes.size(); ++i)
      row.emplace_back(i < r.coordinates.size() ? r.coordinates[i] : std::numeric_limits<double>::quiet_NaN());
    const LayoutSpec& L = r.experiment.layout;
    for (double v : {L.mass1, L.mass2, L.separation, L.offset, L.T, r.experiment.G}) row.emplace_back(v);
    row.emplace_back(std::string(L.family == GeometryFamily::Static ? "static" : "split"));
    row.emplace_back(std::int64_t{r.ok ? 1 : 0});
    row.emplace_back(std::int64_t{r.error_code});
    row.emplace_back(r.status);
    for (const auto* arr : {&r.delta, &r.delta_error, &r.causal, &r.hadamard, &r.hadamard_error})
      for (double v : *arr) row.emplace_back(v);
    for (bool b : r.causally_connected) row.emplace_back(std::int64_t{b ? 1 : 0});
    // Feynman combination: (1/2) H - (i/2) Delta
    for (double v : {r.L_V, r.L_I, r.noise_regulator, r.noise_error, r.branch_symmetry_defect, r.delta_combination,
                     r.hadamard_combination, 0.5 * r.hadamard_combination, -0.5 * r.delta_combination, r.N_c_exact,
                     r.N_c_leading, r.N_G, std::abs(r.N_G - r.N_c_leading), r.classical_limit, r.L_effective,
                     r.dominance.value})
      row.emplace_back(v);
    row.emplace_back(std::string(label(r.dominance.kind)));
    row.emplace_back(std::string(label(r.regime)));
    row.emplace_back(r.max_quadrature_error);
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_csv(std::ostream& out, const Provenance& header, const Table& table) {
  for (const auto& [k, v] : header) {
    std::string flat = v;
    for (char& ch : flat)
      if (ch == '\n' || ch == '\r') ch = ' ';
    out << "# " << k << ": " << flat << '\n';
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_quote(table.columns[i]);
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_quote(cell_text(row[i]));
    out << '\n';
  }
}

void write_json(std::ostream& out, const Provenance& header, const Table& table) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json prov = nlohmann::ordered_json::object();
  for (const auto& [k, v] : header) prov[k] = v;
  doc["provenance"] = std::move(prov);
  doc["columns"] = table.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& cell = row[i];
      if (const auto* d = std::get_if<double>(&cell)) {
        if (std::isfinite(*d)) obj[table.columns[i]] = *d;
        else obj[table.columns[i]] = format_double(*d);
      } else if (const auto* n = std::get_if<std::int64_t>(&cell)) {
        obj[table.columns[i]] = *n;
      } else {
        obj[table.columns[i]] = std::get<std::string>(cell);
      }
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  // nlohmann prints doubles with round-trip precision (17 significant digits)
  out << doc.dump(2) << '\n';
}

Table read_csv(std::istream& in, Provenance* header) {
  Table t;
  std::string line;
  while (in.peek() == '#') {
    std::getline(in, line);
    if (header) {
      const auto colon = line.find(": ");
      if (colon != std::string::npos) header->emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
    }
  }
  std::vector<std::string> fields;
  if (!read_record(in, fields)) throw ParseError("CSV has no column header");
  t.columns = fields;
  while (read_record(in, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != t.columns.size()) throw ParseError("CSV row has wrong number of fields");
    std::vector<Cell> row;
    for (const auto& f : fields) row.push_back(parse_cell(f));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table read_json(std::istream& in, Provenance* header) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
  Table t;
  if (header)
    for (const auto& [k, v] : doc.at("provenance").items()) header->emplace_back(k, v.get<std::string>());
  t.columns = doc.at("columns").get<std::vector<std::string>>();
  for (const auto& obj : doc.at("rows")) {
    std::vector<Cell> row;
    for (const auto& name : t.columns) {
      const auto& v = obj.at(name);
      if (v.is_number_integer()) row.emplace_back(v.get<std::int64_t>());
      else if (v.is_number()) row.emplace_back(v.get<double>());
      else row.emplace_back(v.get<std::string>());
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace gmesim

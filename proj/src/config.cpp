#include "gmesim/config.hpp"

#include "gmesim/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gmesim {

std::string_view label(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat parse_output_format(std::string_view s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw ValidationError("output format must be csv or json, got '" + std::string(s) + "'");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

UnitsSystem RunConfig::units() const {
  return G_override ? UnitsSystem(length_scale_m, *G_override) : UnitsSystem(length_scale_m);
}

SweepSpec RunConfig::sweep_spec() const {
  SweepSpec s;
  s.base = experiment;
  s.axes = sweep_axes;
  s.grid_cap = grid_cap;
  s.numerics = numerics;
  s.policy = parallel ? ExecutionPolicy::Parallel : ExecutionPolicy::Serial;
  return s;
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
  const auto& L = experiment.layout;
  const auto& n = numerics;
  std::vector<std::pair<std::string, std::string>> kv{
      {"units.length_scale_m", format_double(length_scale_m)},
      {"units.G", format_double(experiment.G)},
      {"units.G_source", G_override ? "override" : "natural"},
      {"experiment.geometry", L.family == GeometryFamily::Static ? "static" : "split"},
      {"experiment.mass1", format_double(L.mass1)},
      {"experiment.mass2", format_double(L.mass2)},
      {"experiment.separation", format_double(L.separation)},
      {"experiment.offset", format_double(L.offset)},
      {"experiment.T", format_double(L.T)},
      {"experiment.ramp_time", format_double(L.ramp_time)},
      {"experiment.ramp_fraction", format_double(L.ramp_fraction)},
      {"experiment.direction", L.direction == OffsetDirection::Parallel ? "parallel" : "perpendicular"},
      {"experiment.axis", format_double(L.axis.x) + " " + format_double(L.axis.y) + " " + format_double(L.axis.z)},
      {"numerics.abs_tol", format_double(n.quad.abs_tol)},
      {"numerics.rel_tol", format_double(n.quad.rel_tol)},
      {"numerics.max_intervals", std::to_string(n.quad.max_intervals)},
      {"numerics.inner_max_intervals", std::to_string(n.inner_max_intervals)},
      {"numerics.epsilon_scale", format_double(n.epsilon_scale)},
      {"numerics.epsilon_ratio", format_double(n.epsilon_ratio)},
      {"numerics.epsilon_levels", std::to_string(n.epsilon_levels)},
      {"numerics.noise_regulator_scale", format_double(n.noise_regulator_scale)},
      {"numerics.grid_cap", std::to_string(grid_cap)},
      {"numerics.parallel", parallel ? "true" : "false"},
      {"output.format", std::string(label(format))},
      {"output.path", output_path.empty() ? "-" : output_path},
      {"seed", std::to_string(seed)},
  };
  for (const auto& a : sweep_axes) {
    std::string vals;
    for (double v : a.values) vals += (vals.empty() ? "" : " ") + format_double(v);
    kv.emplace_back("sweep." + std::string(label(a.axis)), vals);
  }
  std::string d;
  for (const auto& k : defaulted) d += (d.empty() ? "" : " ") + k;
  kv.emplace_back("defaulted", d.empty() ? "-" : d);
  return kv;
}

namespace {

enum class Dim { Length, Time, Mass, Dimensionless };

int line_of(const YAML::Node& n) { return n.Mark().is_null() ? -1 : n.Mark().line + 1; }

[[noreturn]] void parse_fail(const YAML::Node& n, const std::string& field, const std::string& msg) {
  std::ostringstream os;
  const int line = line_of(n);
  os << "config";
  if (line > 0) os << " line " << line;
  os << ", field '" << field << "': " << msg;
  throw ParseError(os.str(), line, field);
}

class Reader {
 public:
  std::vector<std::string> defaulted;
  std::vector<std::string> violations;

  void check_keys(const YAML::Node& map, const std::string& section,
                  std::initializer_list<std::string_view> allowed) {
    if (!map.IsMap()) parse_fail(map, section, "expected a mapping");
    for (auto it = map.begin(); it != map.end(); ++it) {
      const std::string key = it->first.as<std::string>();
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        parse_fail(it->first, join(section, key), "unknown key");
      }
    }
  }

  static std::string join(const std::string& section, const std::string& key) {
    return section.empty() ? key : section + "." + key;
  }

  std::string text(const YAML::Node& n, const std::string& field) {
    if (!n.IsScalar()) parse_fail(n, field, "expected a scalar");
    return n.Scalar();
  }

  // Number with optional unit suffix; bare numbers are internal units.
  double quantity(const YAML::Node& n, const std::string& field, Dim dim, const UnitsSystem* units) {
    const std::string s = text(n, field);
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) parse_fail(n, field, "empty value");
    double v = 0.0;
    const char* first = s.data() + b;
    const char* last = s.data() + s.size();
    if (*first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc()) parse_fail(n, field, "expected a number, got '" + s + "'");
    std::string unit(res.ptr, last);
    unit.erase(0, unit.find_first_not_of(" \t"));
    unit.erase(unit.find_last_not_of(" \t") + 1);
    if (unit.empty()) return v;
    auto wrong = [&] { parse_fail(n, field, "unit '" + unit + "' does not match this quantity"); };
    switch (dim) {
      case Dim::Length:
        if (unit != "m") wrong();
        return units ? units->length_from_si(v) : v;
      case Dim::Time:
        if (unit != "s") wrong();
        return units->time_from_si(v);
      case Dim::Mass:
        if (unit != "kg") wrong();
        return units->mass_from_si(v);
      case Dim::Dimensionless:
        wrong();
    }
    return v;
  }

  double number(const YAML::Node& n, const std::string& field) {
    return quantity(n, field, Dim::Dimensionless, nullptr);
  }

  long long integer(const YAML::Node& n, const std::string& field) {
    const std::string s = text(n, field);
    long long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) parse_fail(n, field, "expected an integer");
    return v;
  }

  bool boolean(const YAML::Node& n, const std::string& field) {
    const std::string s = text(n, field);
    if (s == "true") return true;
    if (s == "false") return false;
    parse_fail(n, field, "expected true or false");
  }

  template <class Fn>
  void optional(const YAML::Node& map, const std::string& section, const char* key, Fn&& fn) {
    const YAML::Node n = map[key];
    if (n) fn(n, join(section, key));
    else defaulted.push_back(join(section, key));
  }

  template <class Fn>
  void required(const YAML::Node& map, const std::string& section, const char* key, Fn&& fn) {
    const YAML::Node n = map[key];
    if (!n) parse_fail(map, join(section, key), "required key missing");
    fn(n, join(section, key));
  }

  void violate(const std::string& field, const std::string& msg) { violations.push_back(field + ": " + msg); }
};

const YAML::Node section(const YAML::Node& root, const char* key) {
  const YAML::Node n = root[key];
  return n ? n : YAML::Node(YAML::NodeType::Map);
}

}  // namespace

RunConfig parse_config(std::string_view doc) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(doc));
  } catch (const YAML::Exception& e) {
    throw ParseError("config line " + std::to_string(e.mark.line + 1) + ": " + e.msg, e.mark.line + 1);
  }
  if (!root.IsMap()) throw ParseError("config: top level must be a mapping");

  Reader rd;
  RunConfig cfg;
  rd.check_keys(root, "", {"units", "experiment", "numerics", "sweep", "output", "seed"});

  // units first: every SI quantity below converts through it
  const YAML::Node u = section(root, "units");
  rd.check_keys(u, "units", {"length_scale", "G"});
  rd.optional(u, "units", "length_scale", [&](const YAML::Node& n, const std::string& f) {
    cfg.length_scale_m = rd.quantity(n, f, Dim::Length, nullptr);
    if (!(cfg.length_scale_m > 0.0) || !std::isfinite(cfg.length_scale_m)) parse_fail(n, f, "must be positive");
  });
  rd.optional(u, "units", "G", [&](const YAML::Node& n, const std::string& f) {
    if (n.IsScalar() && n.Scalar() == "natural") return;
    cfg.G_override = rd.number(n, f);
    if (!(*cfg.G_override > 0.0) || !std::isfinite(*cfg.G_override)) parse_fail(n, f, "must be positive");
  });
  const UnitsSystem units = cfg.units();
  cfg.experiment.G = units.G();

  const YAML::Node e = root["experiment"];
  if (!e) throw ParseError("config: section 'experiment' is required", -1, "experiment");
  rd.check_keys(e, "experiment", {"geometry", "mass1", "mass2", "separation", "offset", "T", "ramp_time",
                                  "ramp_fraction", "direction", "axis"});
  LayoutSpec& L = cfg.experiment.layout;
  rd.optional(e, "experiment", "geometry", [&](const YAML::Node& n, const std::string& f) {
    const std::string s = rd.text(n, f);
    if (s == "static") L.family = GeometryFamily::Static;
    else if (s == "split") L.family = GeometryFamily::Split;
    else parse_fail(n, f, "expected static or split");
  });
  rd.required(e, "experiment", "mass1", [&](const auto& n, const auto& f) { L.mass1 = rd.quantity(n, f, Dim::Mass, &units); });
  rd.required(e, "experiment", "mass2", [&](const auto& n, const auto& f) { L.mass2 = rd.quantity(n, f, Dim::Mass, &units); });
  rd.required(e, "experiment", "separation",
              [&](const auto& n, const auto& f) { L.separation = rd.quantity(n, f, Dim::Length, &units); });
  rd.required(e, "experiment", "T", [&](const auto& n, const auto& f) { L.T = rd.quantity(n, f, Dim::Time, &units); });
  L.offset = L.separation;
  rd.optional(e, "experiment", "offset", [&](const auto& n, const auto& f) { L.offset = rd.quantity(n, f, Dim::Length, &units); });
  rd.optional(e, "experiment", "ramp_time",
              [&](const auto& n, const auto& f) { L.ramp_time = rd.quantity(n, f, Dim::Time, &units); });
  rd.optional(e, "experiment", "ramp_fraction", [&](const auto& n, const auto& f) { L.ramp_fraction = rd.number(n, f); });
  rd.optional(e, "experiment", "direction", [&](const YAML::Node& n, const std::string& f) {
    const std::string s = rd.text(n, f);
    if (s == "parallel") L.direction = OffsetDirection::Parallel;
    else if (s == "perpendicular") L.direction = OffsetDirection::Perpendicular;
    else parse_fail(n, f, "expected parallel or perpendicular");
  });
  rd.optional(e, "experiment", "axis", [&](const YAML::Node& n, const std::string& f) {
    if (!n.IsSequence() || n.size() != 3) parse_fail(n, f, "expected a list of 3 numbers");
    L.axis = {rd.number(n[0], f), rd.number(n[1], f), rd.number(n[2], f)};
  });

  const YAML::Node nm = section(root, "numerics");
  rd.check_keys(nm, "numerics", {"abs_tol", "rel_tol", "max_intervals", "inner_max_intervals", "epsilon_scale",
                                 "epsilon_ratio", "epsilon_levels", "noise_regulator_scale", "grid_cap", "parallel"});
  KernelOptions& k = cfg.numerics;
  rd.optional(nm, "numerics", "abs_tol", [&](const auto& n, const auto& f) { k.quad.abs_tol = rd.number(n, f); });
  rd.optional(nm, "numerics", "rel_tol", [&](const auto& n, const auto& f) { k.quad.rel_tol = rd.number(n, f); });
  rd.optional(nm, "numerics", "max_intervals",
              [&](const auto& n, const auto& f) { k.quad.max_intervals = static_cast<int>(rd.integer(n, f)); });
  rd.optional(nm, "numerics", "inner_max_intervals",
              [&](const auto& n, const auto& f) { k.inner_max_intervals = static_cast<int>(rd.integer(n, f)); });
  rd.optional(nm, "numerics", "epsilon_scale", [&](const auto& n, const auto& f) { k.epsilon_scale = rd.number(n, f); });
  rd.optional(nm, "numerics", "epsilon_ratio", [&](const auto& n, const auto& f) { k.epsilon_ratio = rd.number(n, f); });
  rd.optional(nm, "numerics", "epsilon_levels",
              [&](const auto& n, const auto& f) { k.epsilon_levels = static_cast<int>(rd.integer(n, f)); });
  rd.optional(nm, "numerics", "noise_regulator_scale",
              [&](const auto& n, const auto& f) { k.noise_regulator_scale = rd.number(n, f); });
  rd.optional(nm, "numerics", "grid_cap", [&](const YAML::Node& n, const std::string& f) {
    const long long v = rd.integer(n, f);
    if (v <= 0) parse_fail(n, f, "must be positive");
    cfg.grid_cap = static_cast<std::size_t>(v);
  });
  rd.optional(nm, "numerics", "parallel", [&](const auto& n, const auto& f) { cfg.parallel = rd.boolean(n, f); });

  if (const YAML::Node sw = root["sweep"]) {
    rd.check_keys(sw, "sweep", {"axes"});
    const YAML::Node axes = sw["axes"];
    if (!axes || !axes.IsSequence()) parse_fail(sw, "sweep.axes", "expected a list of axes");
    for (std::size_t i = 0; i < axes.size(); ++i) {
      const YAML::Node a = axes[i];
      const std::string base = "sweep.axes[" + std::to_string(i) + "]";
      rd.check_keys(a, base, {"name", "values"});
      AxisValues av;
      rd.required(a, base, "name", [&](const YAML::Node& n, const std::string& f) {
        try {
          av.axis = parse_sweep_axis(rd.text(n, f));
        } catch (const ValidationError& ex) {
          parse_fail(n, f, ex.what());
        }
      });
      const Dim dim = av.axis == SweepAxis::Mass1 || av.axis == SweepAxis::Mass2 ? Dim::Mass
                      : av.axis == SweepAxis::Duration                           ? Dim::Time
                      : av.axis == SweepAxis::G                                  ? Dim::Dimensionless
                                                                                 : Dim::Length;
      rd.required(a, base, "values", [&](const YAML::Node& n, const std::string& f) {
        if (!n.IsSequence() || n.size() == 0) parse_fail(n, f, "expected a non-empty list");
        for (std::size_t j = 0; j < n.size(); ++j) av.values.push_back(rd.quantity(n[j], f, dim, &units));
      });
      cfg.sweep_axes.push_back(std::move(av));
    }
  }

  const YAML::Node out = section(root, "output");
  rd.check_keys(out, "output", {"format", "path"});
  rd.optional(out, "output", "format", [&](const YAML::Node& n, const std::string& f) {
    try {
      cfg.format = parse_output_format(rd.text(n, f));
    } catch (const ValidationError& ex) {
      parse_fail(n, f, ex.what());
    }
  });
  rd.optional(out, "output", "path", [&](const auto& n, const auto& f) { cfg.output_path = rd.text(n, f); });
  rd.optional(root, "", "seed", [&](const YAML::Node& n, const std::string& f) {
    const long long v = rd.integer(n, f);
    if (v < 0) parse_fail(n, f, "must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(v);
  });

  // Physical validity: collect every violation before failing.
  auto positive = [&](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) rd.violate(field, "must be positive and finite");
  };
  positive(L.mass1, "experiment.mass1");
  positive(L.mass2, "experiment.mass2");
  positive(L.separation, "experiment.separation");
  positive(L.T, "experiment.T");
  if (!(L.offset >= 0.0) || !std::isfinite(L.offset)) rd.violate("experiment.offset", "must be non-negative");
  if (!(norm(L.axis) > 0.0)) rd.violate("experiment.axis", "must be a nonzero vector");
  if (L.family == GeometryFamily::Split) {
    const double ramp = L.ramp_time > 0.0 ? L.ramp_time : L.ramp_fraction * L.T;
    const char* ramp_field = L.ramp_time > 0.0 ? "experiment.ramp_time" : "experiment.ramp_fraction";
    if (!(ramp > 0.0) || 2.0 * ramp > L.T) {
      rd.violate(ramp_field, "ramp must satisfy 0 < 2 ramp <= T");
    } else {
      const double peak = 1.875 * 0.5 * L.offset / ramp;
      if (!(peak < 1.0)) {
        std::ostringstream os;
        os << "superluminal ramp: peak branch speed " << peak << " >= 1 (offset/2 moved over the ramp)";
        rd.violate(ramp_field, os.str());
      }
    }
  }
  positive(k.quad.abs_tol, "numerics.abs_tol");
  positive(k.quad.rel_tol, "numerics.rel_tol");
  if (k.quad.max_intervals < 1) rd.violate("numerics.max_intervals", "must be >= 1");
  if (k.inner_max_intervals < 1) rd.violate("numerics.inner_max_intervals", "must be >= 1");
  positive(k.epsilon_scale, "numerics.epsilon_scale");
  if (!(k.epsilon_ratio > 0.0 && k.epsilon_ratio < 1.0)) rd.violate("numerics.epsilon_ratio", "must lie in (0, 1)");
  if (k.epsilon_levels < 3) rd.violate("numerics.epsilon_levels", "must be >= 3");
  positive(k.noise_regulator_scale, "numerics.noise_regulator_scale");
  if (!cfg.sweep_axes.empty()) {
    try {
      (void)grid_size(cfg.sweep_spec());
    } catch (const ValidationError& ex) {
      rd.violate("sweep", ex.what());
    }
  }
  if (!rd.violations.empty()) {
    std::string msg = "config validation failed:";
    for (const auto& v : rd.violations) msg += "\n  " + v;
    throw ValidationError(msg);
  }
  cfg.defaulted = std::move(rd.defaulted);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace gmesim

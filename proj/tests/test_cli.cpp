#include "doctest.h"

#include "gmesim/commands.hpp"
#include "gmesim/config.hpp"
#include "gmesim/errors.hpp"
#include "gmesim/report_io.hpp"
#include "gmesim/version.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gmesim;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"(experiment:
  mass1: 2
  mass2: 3
  separation: 1
  T: 10
)";

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gmesim_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "gmesim");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return rc;
}

}  // namespace

TEST_CASE("minimal config gets documented defaults") {
  const RunConfig c = parse_config(kMinimal);
  const LayoutSpec& L = c.experiment.layout;
  CHECK(L.family == GeometryFamily::Static);
  CHECK(L.mass1 == 2.0);
  CHECK(L.mass2 == 3.0);
  CHECK(L.offset == 1.0);  // defaults to the separation
  CHECK(L.T == 10.0);
  CHECK(c.length_scale_m == 1.0);
  CHECK(c.experiment.G == doctest::Approx(UnitsSystem::natural_G(1.0)));
  CHECK(c.format == OutputFormat::Csv);
  CHECK(c.numerics.epsilon_levels == KernelOptions{}.epsilon_levels);
  const auto has = [&](const std::string& k) {
    return std::find(c.defaulted.begin(), c.defaulted.end(), k) != c.defaulted.end();
  };
  CHECK(has("experiment.offset"));
  CHECK(has("units.length_scale"));
  CHECK(has("numerics.rel_tol"));
  CHECK_FALSE(has("experiment.T"));
}

TEST_CASE("SI quantities are converted through the unit system") {
  const RunConfig c = parse_config(R"(units:
  length_scale: 1e-6 m
experiment:
  mass1: 1e-14 kg
  mass2: 1e-14 kg
  separation: 2e-6 m
  offset: 1e-6 m
  T: 1 s
)");
  const UnitsSystem u(1e-6);
  CHECK(c.experiment.layout.separation == doctest::Approx(2.0));
  CHECK(c.experiment.layout.T == doctest::Approx(u.time_from_si(1.0)));
  CHECK(c.experiment.layout.mass1 == doctest::Approx(u.mass_from_si(1e-14)));
  CHECK(c.experiment.G == doctest::Approx(u.G()));
}

TEST_CASE("unknown keys are parse errors with line and field") {
  try {
    parse_config(std::string(kMinimal) + "gravity_mode: quantum\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.field() == "gravity_mode");
    CHECK(e.line() == 6);
  }
  try {
    parse_config("experiment:\n  mass1: 1\n  mass2: 1\n  separation: 1\n  T: 5\n  gravity_mode: x\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.field() == "experiment.gravity_mode");
    CHECK(e.line() == 6);
  }
  CHECK_THROWS_AS(parse_config("experiment:\n  mass1: 1 s\n  mass2: 1\n  separation: 1\n  T: 5\n"), ParseError);
  CHECK_THROWS_AS(parse_config("experiment: [1, 2"), ParseError);
  CHECK_THROWS_AS(parse_config("units:\n  length_scale: 1 m\n"), ParseError);  // experiment missing
}

TEST_CASE("superluminal ramp is a validation error naming the field") {
  const std::string doc = std::string(kMinimal) + "  geometry: split\n  offset: 8\n  ramp_time: 2\n";
  try {
    parse_config(doc);
    FAIL("expected ValidationError");
  } catch (const ParseError&) {
    FAIL("wrong error kind");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("experiment.ramp_time") != std::string::npos);
    CHECK(std::string(e.what()).find("superluminal") != std::string::npos);
  }
}

TEST_CASE("every physical violation is listed") {
  try {
    parse_config("experiment:\n  mass1: -1\n  mass2: 0\n  separation: 1\n  T: 5\nnumerics:\n  epsilon_ratio: 2\n");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    const std::string w = e.what();
    CHECK(w.find("experiment.mass1") != std::string::npos);
    CHECK(w.find("experiment.mass2") != std::string::npos);
    CHECK(w.find("numerics.epsilon_ratio") != std::string::npos);
  }
}

TEST_CASE("CSV and JSON carry identical values") {
  RunConfig c = parse_config(std::string(kMinimal) + "numerics:\n  epsilon_levels: 4\n");
  const CommandResult r = run_command(Command::Single, c);
  const Provenance h = make_provenance(c, "single");
  std::stringstream csv, json;
  write_csv(csv, h, r.table);
  write_json(json, h, r.table);
  Provenance hc, hj;
  const Table a = read_csv(csv, &hc);
  const Table b = read_json(json, &hj);
  CHECK(hc == hj);
  REQUIRE(a.columns == b.columns);
  REQUIRE(a.rows.size() == 1);
  REQUIRE(b.rows.size() == 1);
  for (std::size_t i = 0; i < a.columns.size(); ++i) {
    const Cell& x = a.rows[0][i];
    const Cell& y = b.rows[0][i];
    if (std::holds_alternative<std::string>(x) && std::holds_alternative<std::string>(y)) {
      CHECK(std::get<std::string>(x) == std::get<std::string>(y));
      continue;
    }
    const double dx = cell_as_double(x), dy = cell_as_double(y);
    const double orig = cell_as_double(r.table.rows[0][i]);
    if (std::isnan(orig)) {
      CHECK(std::isnan(dx));
      CHECK(std::isnan(dy));
    } else {
      INFO(a.columns[i]);
      CHECK(std::abs(dx - dy) <= 1e-15 * std::abs(orig));
      CHECK(dx == orig);
    }
  }
}

TEST_CASE("provenance header echoes version, config, units, tolerances and defaults") {
  const RunConfig c = parse_config(kMinimal);
  const Provenance h = make_provenance(c, "single");
  auto find = [&](const std::string& k) {
    for (const auto& [key, v] : h)
      if (key == k) return v;
    return std::string("<missing>");
  };
  CHECK(find("version") == kVersion);
  CHECK(find("experiment.mass2") == "3");
  CHECK(find("numerics.rel_tol") != "<missing>");
  CHECK(find("units.time_s") != "<missing>");
  CHECK(find("defaulted").find("experiment.offset") != std::string::npos);
}

TEST_CASE("CSV quoting survives commas, quotes and newlines") {
  Table t{{"a", "b"}, {{std::string("x,\"y\"\nz"), 1.5}}};
  std::stringstream s;
  write_csv(s, {}, t);
  const Table back = read_csv(s);
  REQUIRE(back.rows.size() == 1);
  CHECK(std::get<std::string>(back.rows[0][0]) == "x,\"y\"\nz");
  CHECK(cell_as_double(back.rows[0][1]) == 1.5);
}

TEST_CASE("cli: version, exit codes and outputs") {
  std::string out, err;
  CHECK(cli({"--version"}, &out) == 0);
  CHECK(out.find(kVersion) != std::string::npos);

  CHECK(cli({"single", "--config", scratch("missing.yaml").string()}, &out, &err) == kExitIo);
  const fs::path bad = scratch("bad.yaml");
  write_file(bad, std::string(kMinimal) + "gravity_mode: 1\n");
  CHECK(cli({"single", "--config", bad.string()}, &out, &err) == kExitValidation);
  CHECK(err.find("gravity_mode") != std::string::npos);

  const fs::path good = scratch("good.yaml");
  write_file(good, std::string(kMinimal) + "numerics:\n  epsilon_levels: 4\n");
  CHECK(cli({"single", "--config", good.string()}, &out) == 0);
  CHECK(out.rfind("# tool: gmesim", 0) == 0);
  CHECK(out.find("N_c_leading") != std::string::npos);
  CHECK(out.find("N_G") != std::string::npos);
  CHECK(out.find("dominance_ratio") != std::string::npos);

  // global flags: output path, format, tolerance override
  const fs::path dest = scratch("single.json");
  CHECK(cli({"--format", "json", "--tol-rel", "1e-8", "--out", dest.string(), "single", "--config", good.string()}) ==
        0);
  const std::string j = read_file(dest);
  CHECK(j.find("\"provenance\"") != std::string::npos);
  CHECK(j.find("\"numerics.rel_tol\": \"1e-08\"") != std::string::npos);
  CHECK(cli({"single", "--config", good.string(), "--out", "/nonexistent-dir/x.csv"}) == kExitIo);
}

TEST_CASE("cli: identical configs give bit-identical CSV") {
  const fs::path cfg = scratch("det.yaml");
  write_file(cfg, "experiment:\n  geometry: split\n  mass1: 1\n  mass2: 1\n  separation: 1\n  offset: 0.5\n"
                  "  T: 20\nnumerics:\n  epsilon_levels: 4\n");
  std::string a, b;
  CHECK(cli({"single", "--config", cfg.string()}, &a) == 0);
  CHECK(cli({"single", "--config", cfg.string()}, &b) == 0);
  CHECK(a == b);
}

TEST_CASE("cli: oracle on a static config") {
  const fs::path cfg = scratch("oracle.yaml");
  write_file(cfg, "experiment:\n  mass1: 1\n  mass2: 1\n  separation: 1\n  offset: 1\n  T: 100\n");
  std::string out;
  CHECK(cli({"oracle", "--config", cfg.string()}, &out) == 0);
  std::istringstream in(out);
  const Table t = read_csv(in);
  REQUIRE(t.rows.size() == 4);
  for (const auto& row : t.rows) {
    CHECK(cell_as_double(row[t.column("delta_rel_error")]) < 1e-6);
    CHECK(cell_as_double(row[t.column("hadamard_rel_error")]) < 1e-4);
  }
  // oracle refuses moving branches
  const fs::path split = scratch("oracle_split.yaml");
  write_file(split, "experiment:\n  geometry: split\n  mass1: 1\n  mass2: 1\n  separation: 1\n  T: 20\n");
  CHECK(cli({"oracle", "--config", split.string()}) == kExitValidation);
}

TEST_CASE("cli: sweep of a 3x3 grid emits 9 rows in declared order") {
  const fs::path cfg = scratch("sweep.yaml");
  write_file(cfg, R"(experiment:
  mass1: 1
  mass2: 1
  separation: 1
  T: 10
numerics:
  epsilon_levels: 4
sweep:
  axes:
    - name: separation
      values: [1, 2, 3]
    - name: T
      values: [5, 10, 20]
)");
  std::string out;
  CHECK(cli({"sweep", "--config", cfg.string()}, &out) == 0);
  std::istringstream in(out);
  const Table t = read_csv(in);
  REQUIRE(t.rows.size() == 9);
  const std::size_t s = t.column("axis_separation"), T = t.column("axis_T");
  const double seps[] = {1, 2, 3}, Ts[] = {5, 10, 20};
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(cell_as_double(t.rows[i][s]) == seps[i / 3]);
    CHECK(cell_as_double(t.rows[i][T]) == Ts[i % 3]);
    CHECK(cell_as_double(t.rows[i][t.column("index")]) == double(i));
  }
  // sweep without axes is a validation failure
  const fs::path none = scratch("nosweep.yaml");
  write_file(none, kMinimal);
  CHECK(cli({"sweep", "--config", none.string()}) == kExitValidation);
}

TEST_CASE("cli: validate passes the invariant suite on a static config") {
  const fs::path cfg = scratch("validate.yaml");
  write_file(cfg, "units:\n  G: 1e-3\nexperiment:\n  mass1: 1\n  mass2: 1\n  separation: 1\n  offset: 1\n  T: 20\n");
  std::string out, err;
  CHECK(cli({"validate", "--config", cfg.string(), "--seed", "5"}, &out, &err) == 0);
  CHECK(out.find("local_unitary_drift") != std::string::npos);
  CHECK(out.find("# seed: 5") != std::string::npos);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "casimir/config.hpp"
#include "casimir/runner.hpp"
#include "cli_app.hpp"

using namespace casimir;
using namespace casimir::cli;

namespace {

constexpr Scenario kScenarios[] = {Scenario::slab_force, Scenario::atom_mirror, Scenario::atom_atom,
                                   Scenario::validate};

std::string error_location(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.where();
  }
  return "<accepted>";
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("casimir_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path / name;
    std::ofstream(p) << text;
    return p.string();
  }
};

struct Invocation {
  int code;
  std::string out, err;
};

Invocation invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command_line(args, out, err);
  return {code, out.str(), err.str()};
}

RunConfig small_sweep(Scenario s, std::size_t points) {
  RunConfig cfg = example_config(s);
  cfg.sweep->grid.points = points;
  cfg.quadrature.rel_tol = 1e-6;
  return cfg;
}

}  // namespace

TEST_CASE("example configs round-trip") {
  for (auto s : kScenarios) {
    CAPTURE(to_string(s));
    const RunConfig cfg = example_config(s);
    CHECK_NOTHROW(validate(cfg));
    const std::string text = serialize_config(cfg);
    const RunConfig back = parse_config(text);
    CHECK(back == cfg);
    CHECK(serialize_config(back) == text);
  }
}

TEST_CASE("minimal config and defaults") {
  const auto cfg = parse_config(R"({
    "scenario": "atom_atom",
    "atoms": {"A": {"alpha_e0": 1e-3, "omega_e": "inf"}},
    "system": {"atom": "A", "atom_b": "A", "separation": 2}
  })");
  CHECK(cfg.system.host == "vacuum");
  CHECK(std::isinf(cfg.atoms.at("A").omega_e));
  CHECK(cfg.units.kind == UnitSystem::Kind::reduced);
  CHECK_FALSE(cfg.sweep);
  CHECK(pair_system(cfg, 0.0).separation == 2.0);
}

TEST_CASE("diagnostics point at the offending field") {
  CHECK(error_location("{\"scenario\": \"slab_force\",,}") == "line 1, column 28");
  CHECK(error_location("{\n\"scenario\": 3\n}") == "/scenario");
  CHECK(error_location(R"({"scenario": "slab_force", "bogus": 1})") == "/bogus");
  CHECK(error_location(R"({"scenario": "slab_force", "system": {"slab": "nope"}})") == "/system/slab");
  CHECK(error_location(R"({"scenario": "slab_force", "system": {"slab": "perfect", "distance": 0}})") ==
        "/system/distance");
  CHECK(error_location(R"({"scenario": "slab_force", "system": {"slab": "perfect"},
                           "sweep": {"variable": "r", "start": 1, "stop": 2, "points": 3}})") == "/sweep/variable");
  CHECK(error_location(R"({"scenario": "slab_force", "system": {"slab": "perfect"},
                           "sweep": {"variable": "d", "start": 0, "stop": 2, "points": 3, "spacing": "log"}})") ==
        "/sweep/start");
  CHECK(error_location(R"({"scenario": "slab_force", "system": {"slab": "perfect"},
                           "sweep": {"variable": "d", "start": 3, "stop": 2, "points": 3}})") == "/sweep");
  CHECK(error_location(R"({"scenario": "slab_force", "system": {"slab": "perfect"},
                           "sweep": {"variable": "d", "start": 1, "stop": 2, "points": 0}})") == "/sweep/points");
  CHECK(error_location(R"({"scenario": "atom_mirror", "atoms": {"A": {"alpha_e0": 1e-3}},
                           "system": {"atom": "A"},
                           "sweep": {"variable": "N_B", "start": 0, "stop": 1, "points": 2}})") == "/sweep/variable");
  CHECK(error_location(R"({"scenario": "slab_force", "materials": {"m": {"permittivity": {"baseline": 0.5}}},
                           "system": {"slab": "m"}})") == "/materials/m/permittivity");
  CHECK(error_location(R"({"scenario": "slab_force", "materials": {"m": {"permittivity":
                           {"terms": [{"strength": 1, "resonance": 0}]}}}, "system": {"slab": "m"}})") ==
        "/materials/m/permittivity");
  CHECK(error_location(R"({"scenario": "slab_force", "system": {"slab": "perfect"},
                           "quadrature": {"rel_tol": -1}})") == "/quadrature");
  CHECK(error_location(R"({"scenario": "atom_atom", "atoms": {"A": {"alpha_e0": 1e-3}}, "system": {"atom": "A"}})") ==
        "/system/atom_b");
}

TEST_CASE("sweep grids") {
  SweepGrid lin{1.0, 3.0, 5, Spacing::linear};
  CHECK(lin.at(0) == 1.0);
  CHECK(lin.at(2) == 2.0);
  CHECK(lin.at(4) == 3.0);
  SweepGrid lg{0.1, 10.0, 3, Spacing::log};
  CHECK(lg.at(0) == 0.1);
  CHECK(lg.at(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lg.at(2) == 10.0);
  CHECK(SweepGrid{2.0, 5.0, 1, Spacing::linear}.at(0) == 2.0);
}

TEST_CASE("system resolution follows the sweep variable") {
  RunConfig cfg = example_config(Scenario::slab_force);
  CHECK(slab_system(cfg, 0.25).distance == 0.25);
  cfg.sweep->variable = SweepVariable::d_s;
  const auto s = slab_system(cfg, 0.25);
  CHECK(s.slab_thickness == 0.25);
  CHECK(s.distance == cfg.system.distance);

  RunConfig v = example_config(Scenario::validate);
  v.sweep->variable = SweepVariable::N_B;
  CHECK(std::get<DiluteMirror>(atom_mirror_system(v, 0.5).mirror).number_density == 0.5);
}

TEST_CASE("CSV output") {
  SUBCASE("header only for an empty table") {
    ResultTable t;
    t.columns = column_names(example_config(Scenario::atom_atom));
    const auto csv = emit_csv(t);
    CHECK(count_lines(csv) == 1);
    CHECK(csv.rfind("r[c/omega_ref],energy[hbar*omega_ref]", 0) == 0);
  }
  SUBCASE("one line per row plus header, fixed columns") {
    for (auto s : kScenarios) {
      CAPTURE(to_string(s));
      const auto cfg = small_sweep(s, 3);
      const auto table = run(cfg);
      const auto csv = emit_csv(table);
      CHECK(count_lines(csv) == 4);
      for (const auto& row : table.rows) CHECK(row.values.size() == table.columns.size());
      CHECK(table.columns.back() == "converged");
      CHECK(table.all_converged());
    }
  }
  SUBCASE("gaussian units in headers") {
    auto cfg = small_sweep(Scenario::slab_force, 1);
    cfg.units.kind = UnitSystem::Kind::gaussian;
    const auto cols = column_names(cfg);
    CHECK(cols[0] == "d[cm]");
    CHECK(cols[1] == "minkowski[dyn/cm^2]");
  }
  SUBCASE("deterministic regardless of thread count") {
    const auto cfg = small_sweep(Scenario::atom_mirror, 6);
    const auto a = emit_csv(run(cfg, 1));
    const auto b = emit_csv(run(cfg, 3));
    CHECK(a == b);
    CHECK(a == emit_csv(run(cfg, 1)));
  }
  SUBCASE("no sweep gives one row at the configured value") {
    auto cfg = example_config(Scenario::atom_atom);
    cfg.sweep.reset();
    cfg.system.separation = 0.5;
    const auto t = run(cfg);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].values[0] == 0.5);
  }
}

TEST_CASE("sweep properties") {
  SUBCASE("slab force decays monotonically over a log sweep") {
    RunConfig cfg = example_config(Scenario::slab_force);
    cfg.sweep = Sweep{SweepVariable::d, {0.1, 10.0, 25, Spacing::log}};
    const auto t = run(cfg, 2);
    REQUIRE(t.rows.size() == 25);
    const auto col = static_cast<std::size_t>(
        std::find(t.columns.begin(), t.columns.end(), "total[hbar*omega_ref^4/c^3]") - t.columns.begin());
    REQUIRE(col < t.columns.size());
    for (std::size_t i = 1; i < t.rows.size(); ++i)
      CHECK(std::abs(t.rows[i].values[col]) < std::abs(t.rows[i - 1].values[col]));
  }
  SUBCASE("unpolarizable atoms feel nothing") {
    RunConfig cfg = small_sweep(Scenario::atom_atom, 3);
    for (auto& [name, atom] : cfg.atoms) atom.alpha_e0 = atom.alpha_m0 = 0.0;
    const auto t = run(cfg);
    for (const auto& row : t.rows)
      for (std::size_t j = 1; j + 2 < t.columns.size(); ++j) {
        CAPTURE(t.columns[j]);
        CHECK(row.values[j] == 0.0);
      }
  }
}

TEST_CASE("plot script") {
  const auto cfg = small_sweep(Scenario::atom_atom, 2);
  const auto t = run(cfg);
  const auto gp = emit_plot_script(t, cfg, "out/forces.csv");
  CHECK(gp.find("'out/forces.csv'") != std::string::npos);
  CHECK(gp.find("set logscale xy") != std::string::npos);
  CHECK(gp.find("abs($5)") != std::string::npos);  // force column
}

TEST_CASE("command line") {
  TempDir dir;
  SUBCASE("example-config output parses") {
    const auto r = invoke({"example-config", "atom_mirror"});
    CHECK(r.code == kExitOk);
    CHECK(parse_config(r.out) == example_config(Scenario::atom_mirror));
  }
  SUBCASE("sweep to stdout and to a file with a plot script") {
    const auto cfg_path = dir.write("slab.json", serialize_config(small_sweep(Scenario::slab_force, 3)));
    const auto r = invoke({"slab-force", "--config", cfg_path, "--rel-tol", "1e-6"});
    CHECK(r.code == kExitOk);
    CHECK(count_lines(r.out) == 4);
    CHECK(r.err.find("3 rows") != std::string::npos);

    const auto csv = (dir.path / "slab.csv").string();
    const auto p = invoke({"slab-force", "--config", cfg_path, "--out", csv, "--format", "plot", "--threads", "2"});
    CHECK(p.code == kExitOk);
    CHECK(std::filesystem::exists(csv));
    CHECK(std::filesystem::exists(dir.path / "slab.gp"));
  }
  SUBCASE("subcommand overrides the scenario in the file") {
    // An atom_atom file without a sweep runs unchanged as an atom_mirror
    // point, and the other way round.
    auto cfg = example_config(Scenario::atom_atom);
    cfg.sweep.reset();
    cfg.system.mirror.kind = MirrorConfig::Kind::perfect;
    const auto path = dir.write("aa.json", serialize_config(cfg));
    const auto pair = invoke({"atom-atom", "--config", path});
    CHECK(pair.code == kExitOk);
    CHECK(pair.out.rfind("r[", 0) == 0);
    const auto mirror = invoke({"atom-mirror", "--config", path});
    CHECK(mirror.code == kExitOk);
    CHECK(mirror.out.rfind("d[", 0) == 0);
  }
  SUBCASE("suspicious models are flagged on stderr") {
    auto cfg = small_sweep(Scenario::atom_atom, 1);
    cfg.materials["host"] = Medium::nondispersive(2.0, 1.0);
    const auto r = invoke({"atom-atom", "--config", dir.write("nd.json", serialize_config(cfg))});
    CHECK(r.code == kExitOk);
    CHECK(r.err.find("warning: host: ") != std::string::npos);
    const auto clean = invoke({"atom-atom", "--config", dir.write("ok.json", serialize_config(small_sweep(Scenario::atom_atom, 1)))});
    CHECK(clean.err.find("warning") == std::string::npos);
  }
  SUBCASE("bad input exits with 2") {
    CHECK(invoke({"slab-force", "--config", dir.write("bad.json", "{\"scenario\": 1}")}).code == kExitBadInput);
    CHECK(invoke({"slab-force", "--config", (dir.path / "missing.json").string()}).code == kExitBadInput);
    CHECK(invoke({"slab-force"}).code == kExitBadInput);
    CHECK(invoke({"no-such-command"}).code == kExitBadInput);
    const auto cfg_path = dir.write("ok.json", serialize_config(small_sweep(Scenario::slab_force, 1)));
    CHECK(invoke({"slab-force", "--config", cfg_path, "--format", "plot"}).code == kExitBadInput);
    CHECK(invoke({"slab-force", "--config", cfg_path, "--xi-cutoff-factor", "1"}).code == kExitBadInput);
  }
  SUBCASE("strict mode escalates non-convergence") {
    auto cfg = small_sweep(Scenario::slab_force, 1);
    cfg.quadrature.max_subdivisions = 1;
    cfg.quadrature.rel_tol = 1e-12;
    const auto path = dir.write("loose.json", serialize_config(cfg));
    const auto lax = invoke({"slab-force", "--config", path});
    CHECK(lax.code == kExitOk);
    CHECK(lax.out.substr(lax.out.size() - 2) == "0\n");
    CHECK(invoke({"slab-force", "--config", path, "--strict"}).code == kExitNotConverged);
  }
  SUBCASE("validate subcommand") {
    const auto suite = invoke({"validate"});
    CHECK(suite.code == kExitOk);
    CHECK(count_lines(suite.out) == 10);
    const auto path = dir.write("v.json", serialize_config(small_sweep(Scenario::validate, 2)));
    const auto sweep = invoke({"validate", "--config", path});
    CHECK(sweep.code == kExitOk);
    CHECK(sweep.out.find("relative_gap") != std::string::npos);
  }
  SUBCASE("kernel selection flag") {
    CHECK(invoke({"--simd", "scalar", "example-config", "slab_force"}).code == kExitOk);
    CHECK(invoke({"--simd", "fast", "example-config", "slab_force"}).code == kExitBadInput);
  }
}

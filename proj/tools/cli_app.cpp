#include "cli_app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>

#include "casimir/acceptance.hpp"
#include "casimir/config.hpp"
#include "casimir/errors.hpp"
#include "casimir/runner.hpp"
#include "casimir/simd.hpp"

namespace casimir::cli {
namespace {

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::optional<double> rel_tol;
  std::optional<double> xi_cutoff_factor;
  bool strict = false;
  unsigned threads = 1;
};

void add_run_options(CLI::App* sub, Options& o, bool config_required) {
  auto* c = sub->add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  if (config_required) c->required();
  sub->add_option("--out", o.out_path, "Output CSV path (default: stdout)");
  sub->add_option("--format", o.format, "csv, or plot (CSV at --out plus a gnuplot script beside it)")
      ->check(CLI::IsMember({"csv", "plot"}));
  sub->add_option("--rel-tol", o.rel_tol, "Relative quadrature tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--xi-cutoff-factor", o.xi_cutoff_factor, "Frequency cutoff in units of the largest resonance");
  sub->add_flag("--strict", o.strict, "Exit with status 3 if any point failed to converge");
  sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError(path.string(), "cannot open for writing");
  f << text;
  if (!f) throw ConfigError(path.string(), "write failed");
}

int run_sweep(Scenario scenario, const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig cfg = load_config(o.config_path);
  cfg.scenario = scenario;
  if (o.rel_tol) cfg.quadrature.rel_tol = *o.rel_tol;
  if (o.xi_cutoff_factor) cfg.quadrature.xi_cutoff_factor = *o.xi_cutoff_factor;
  validate(cfg);
  if (o.format == "plot" && o.out_path.empty()) throw ConfigError("--out", "--format plot needs --out");
  for (const auto& w : model_diagnostics(cfg)) err << "warning: " << w << "\n";

  const ResultTable table = run(cfg, o.threads);
  const std::string csv = emit_csv(table);
  if (o.out_path.empty()) {
    out << csv;
  } else {
    write_file(o.out_path, csv);
  }
  if (o.format == "plot") {
    auto script = std::filesystem::path(o.out_path).replace_extension(".gp");
    write_file(script, emit_plot_script(table, cfg, o.out_path));
    err << "plot script: " << script.string() << "\n";
  }
  err << summary_line(table) << "\n";
  if (!table.all_converged()) {
    err << "warning: some points did not converge (see the converged column)\n";
    if (o.strict) return kExitNotConverged;
  }
  return kExitOk;
}

int run_suite(const Options& o, std::ostream& out, std::ostream& err) {
  QuadratureConfig q;
  if (o.rel_tol) q.rel_tol = *o.rel_tol;
  if (o.xi_cutoff_factor) q.xi_cutoff_factor = *o.xi_cutoff_factor;
  validate(q);
  bool all = true;
  for (const auto& r : run_acceptance_suite(q)) {
    out << format_line(r) << "\n";
    all = all && r.passed;
  }
  err << (all ? "all checks passed" : "some checks FAILED") << "\n";
  return all ? kExitOk : kExitValidationFailed;
}

}  // namespace

int run_command_line(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dispersion forces in planar magnetodielectric systems", "casimir"};
  app.require_subcommand(1);
  std::string simd = "auto";
  app.add_option("--simd", simd, "Kernel set: auto, scalar or avx2")->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  Options o;
  auto* slab = app.add_subcommand("slab-force", "Slab in front of a mirror");
  auto* atom = app.add_subcommand("atom-mirror", "Embedded atom in front of a mirror");
  auto* pair = app.add_subcommand("atom-atom", "Two atoms in a host medium");
  auto* check = app.add_subcommand("validate",
                                   "Built-in validation suite, or with --config a dilute-mirror consistency sweep");
  for (auto* sub : {slab, atom, pair}) add_run_options(sub, o, true);
  add_run_options(check, o, false);

  std::string example_name;
  auto* example = app.add_subcommand("example-config", "Print an example configuration");
  example->add_option("scenario", example_name, "slab_force, atom_mirror, atom_atom or validate")
      ->required()
      ->check(CLI::IsMember({"slab_force", "atom_mirror", "atom_atom", "validate"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  if (simd != "auto" && !simd::set_level(simd == "avx2" ? simd::Level::avx2 : simd::Level::scalar)) {
    err << "error: --simd " << simd << " is not available on this machine\n";
    return kExitBadInput;
  }

  try {
    if (*example) {
      Scenario s = Scenario::slab_force;
      for (auto c : {Scenario::slab_force, Scenario::atom_mirror, Scenario::atom_atom, Scenario::validate})
        if (to_string(c) == example_name) s = c;
      out << serialize_config(example_config(s));
      return kExitOk;
    }
    if (*slab) return run_sweep(Scenario::slab_force, o, out, err);
    if (*atom) return run_sweep(Scenario::atom_mirror, o, out, err);
    if (*pair) return run_sweep(Scenario::atom_atom, o, out, err);
    if (o.config_path.empty()) return run_suite(o, out, err);
    return run_sweep(Scenario::validate, o, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidationFailed;
  }
}

}  // namespace casimir::cli

#include "casimir/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace casimir::cli {
namespace {

struct Units {
  std::string length, density, pressure, force, energy;
};

Units units_for(const UnitSystem& u) {
  if (u.kind == UnitSystem::Kind::gaussian) return {"cm", "cm^-3", "dyn/cm^2", "dyn", "erg"};
  return {"c/omega_ref", "(omega_ref/c)^3", "hbar*omega_ref^4/c^3", "hbar*omega_ref^2/c",
          "hbar*omega_ref"};
}

std::string col(const std::string& name, const std::string& unit) { return name + "[" + unit + "]"; }

SweepVariable natural_variable(Scenario s) {
  return s == Scenario::atom_atom ? SweepVariable::r : SweepVariable::d;
}

double fixed_value(const RunConfig& cfg, SweepVariable v) {
  switch (v) {
    case SweepVariable::d: return cfg.system.distance;
    case SweepVariable::r: return cfg.system.separation;
    case SweepVariable::d_s: return cfg.system.slab_thickness;
    case SweepVariable::N_B: return cfg.system.mirror.number_density;
  }
  return 0.0;
}

double rel(double err, double value) {
  if (err == 0.0) return 0.0;
  return value != 0.0 ? std::abs(err / value) : std::numeric_limits<double>::infinity();
}

ResultRow slab_row(const RunConfig& cfg, double x) {
  const auto b = lorentz_slab_force(slab_system(cfg, x), cfg.quadrature);
  ResultRow r;
  r.values = {x,
              b.minkowski,
              b.minkowski_parts.p,
              b.minkowski_parts.s,
              b.medium,
              b.screened,
              b.assisted,
              b.total,
              b.screening_parts.p,
              b.screening_parts.s,
              b.assisted_parts.p,
              b.assisted_parts.s,
              b.minkowski_error,
              b.medium_error,
              b.tail_estimate};
  r.converged = b.converged;
  r.evaluations = b.evaluations;
  r.worst_relative_error = rel(b.total_error(), b.total);
  return r;
}

ResultRow atom_row(const RunConfig& cfg, double x) {
  const auto sys = atom_mirror_system(cfg, x);
  const auto b = lorentz_atom_force(sys, cfg.quadrature);
  const auto u = atom_potential(sys, cfg.quadrature);
  ResultRow r;
  r.values = {x,
              b.minkowski.value,
              b.minkowski_parts.p,
              b.minkowski_parts.s,
              b.medium.value,
              b.medium_p,
              b.medium_s,
              b.medium_cross,
              b.total,
              u.value,
              b.minkowski.error_estimate,
              b.medium.error_estimate,
              u.error_estimate};
  r.converged = b.converged() && u.converged;
  r.evaluations = b.minkowski.evaluations + b.medium.evaluations + u.evaluations;
  r.worst_relative_error = std::max(
      rel(b.minkowski.error_estimate + b.medium.error_estimate, b.total), rel(u.error_estimate, u.value));
  return r;
}

ResultRow pair_row(const RunConfig& cfg, double x) {
  const auto pair = pair_system(cfg, x);
  const auto e = interaction_energy(pair, cfg.quadrature);
  const auto f = pair_force(pair, cfg.quadrature);
  double vdw = std::numeric_limits<double>::quiet_NaN();
  try {
    vdw = vdw_limit_force(pair, cfg.quadrature).total();
  } catch (const DivergentIntegralError&) {
  }
  const auto ret = retarded_limit_force(pair);
  ResultRow r;
  r.values = {x,
              e.total.value,
              e.terms.same_type,
              e.terms.cross_type,
              f.total.value,
              f.terms.same_type,
              f.terms.cross_type,
              vdw,
              ret.total(),
              e.total.error_estimate,
              f.total.error_estimate};
  r.converged = e.total.converged && f.total.converged;
  r.evaluations = e.total.evaluations + f.total.evaluations;
  r.worst_relative_error =
      std::max(rel(e.total.error_estimate, e.total.value), rel(f.total.error_estimate, f.total.value));
  return r;
}

ResultRow consistency_row(const RunConfig& cfg, double x) {
  const auto sys = atom_mirror_system(cfg, x);
  const auto& m = std::get<DiluteMirror>(sys.mirror);
  const auto c = mirror_consistency_check(sys.host, sys.atom, m.atom, m.number_density, sys.distance,
                                          cfg.quadrature, sys.constants, sys.convention);
  ResultRow r;
  r.values = {x,
              c.lhs.value,
              c.rhs.value,
              c.relative_gap.value_or(std::numeric_limits<double>::quiet_NaN()),
              c.lhs.error_estimate,
              c.rhs.error_estimate};
  r.converged = c.lhs.converged && c.rhs.converged;
  r.evaluations = c.lhs.evaluations + c.rhs.evaluations;
  r.worst_relative_error =
      std::max(rel(c.lhs.error_estimate, c.lhs.value), rel(c.rhs.error_estimate, c.rhs.value));
  return r;
}

ResultRow evaluate(const RunConfig& cfg, double x) {
  ResultRow r;
  switch (cfg.scenario) {
    case Scenario::slab_force: r = slab_row(cfg, x); break;
    case Scenario::atom_mirror: r = atom_row(cfg, x); break;
    case Scenario::atom_atom: r = pair_row(cfg, x); break;
    case Scenario::validate: r = consistency_row(cfg, x); break;
  }
  r.values.push_back(static_cast<double>(r.evaluations));
  r.values.push_back(r.converged ? 1.0 : 0.0);
  return r;
}

const char* plotted_column(Scenario s) {
  switch (s) {
    case Scenario::slab_force: return "total";
    case Scenario::atom_mirror: return "total";
    case Scenario::atom_atom: return "force";
    case Scenario::validate: return "lhs";
  }
  return "total";
}

}  // namespace

bool ResultTable::all_converged() const {
  return std::all_of(rows.begin(), rows.end(), [](const ResultRow& r) { return r.converged; });
}

std::size_t ResultTable::total_evaluations() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.evaluations;
  return n;
}

double ResultTable::worst_relative_error() const {
  double w = 0.0;
  for (const auto& r : rows) w = std::max(w, r.worst_relative_error);
  return w;
}

std::vector<std::string> column_names(const RunConfig& cfg) {
  const Units u = units_for(cfg.units);
  const SweepVariable v = cfg.sweep ? cfg.sweep->variable : natural_variable(cfg.scenario);
  std::vector<std::string> c;
  c.push_back(col(std::string(to_string(v)), v == SweepVariable::N_B ? u.density : u.length));
  auto add = [&c](const std::string& unit, std::initializer_list<const char*> names) {
    for (const char* n : names) c.push_back(col(n, unit));
  };
  switch (cfg.scenario) {
    case Scenario::slab_force:
      add(u.pressure, {"minkowski", "minkowski_p", "minkowski_s", "medium", "screened", "assisted",
                       "total", "screening_p", "screening_s", "assisted_p", "assisted_s",
                       "minkowski_error", "medium_error", "tail_estimate"});
      break;
    case Scenario::atom_mirror:
      add(u.force, {"minkowski", "minkowski_p", "minkowski_s", "medium", "medium_p", "medium_s",
                    "medium_cross", "total"});
      add(u.energy, {"potential"});
      add(u.force, {"minkowski_error", "medium_error"});
      add(u.energy, {"potential_error"});
      break;
    case Scenario::atom_atom:
      add(u.energy, {"energy", "energy_same", "energy_cross"});
      add(u.force, {"force", "force_same", "force_cross", "vdw_force", "retarded_force"});
      add(u.energy, {"energy_error"});
      add(u.force, {"force_error"});
      break;
    case Scenario::validate:
      add(u.force, {"lhs", "rhs"});
      c.push_back("relative_gap");
      add(u.force, {"lhs_error", "rhs_error"});
      break;
  }
  c.push_back("evaluations");
  c.push_back("converged");
  return c;
}

ResultTable run(const RunConfig& cfg, unsigned threads) {
  validate(cfg);
  ResultTable table;
  table.columns = column_names(cfg);

  std::vector<double> xs;
  if (cfg.sweep) {
    for (std::size_t i = 0; i < cfg.sweep->grid.points; ++i) xs.push_back(cfg.sweep->grid.at(i));
  } else {
    xs.push_back(fixed_value(cfg, natural_variable(cfg.scenario)));
  }
  table.rows.resize(xs.size());

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; !failed && (i = next++) < xs.size();) {
      try {
        table.rows[i] = evaluate(cfg, xs[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  const std::size_t n = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(xs.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return table;
}

std::string emit_csv(const ResultTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  char buf[40];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      if (i) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", row.values[i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string emit_plot_script(const ResultTable& table, const RunConfig& cfg, const std::string& csv_path) {
  const std::string target = plotted_column(cfg.scenario);
  std::size_t y = 0;
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    if (table.columns[i].rfind(target + "[", 0) == 0) y = i + 1;

  std::ostringstream os;
  os << "# gnuplot script for " << csv_path << "\n"
     << "set datafile separator ','\n"
     << "set logscale xy\n"
     << "set format y '%g'\n"
     << "set xlabel '" << table.columns.front() << "'\n"
     << "set ylabel '|" << (y ? table.columns[y - 1] : target) << "|'\n"
     << "set key top right\n"
     << "set grid\n"
     << "plot '" << csv_path << "' every ::1 using 1:(abs($" << y << ")) with linespoints title '"
     << to_string(cfg.scenario) << " " << target << "'";
  if (cfg.scenario == Scenario::validate)
    os << ", \\\n     '" << csv_path << "' every ::1 using 1:(abs($3)) with linespoints title 'rhs'";
  os << "\n";
  return os.str();
}

std::string summary_line(const ResultTable& table) {
  std::size_t unconverged = 0;
  for (const auto& r : table.rows) unconverged += r.converged ? 0 : 1;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu rows, %zu integrand evaluations, worst relative error %.3g, %zu unconverged",
                table.rows.size(), table.total_evaluations(), table.worst_relative_error(), unconverged);
  return buf;
}

}  // namespace casimir::cli

#pragma once

// Sweep execution and output formatting for the command-line front end.

#include <cstddef>
#include <string>
#include <vector>

#include "casimir/config.hpp"

namespace casimir::cli {

// One sweep point. `values` lines up with ResultTable::columns; the last two
// columns are always the evaluation count and the 0/1 converged flag.
struct ResultRow {
  std::vector<double> values;
  bool converged = true;
  std::size_t evaluations = 0;
  double worst_relative_error = 0.0;
};

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<ResultRow> rows;

  bool all_converged() const;
  std::size_t total_evaluations() const;
  double worst_relative_error() const;
};

// Column names with units for the scenario and unit system.
std::vector<std::string> column_names(const RunConfig& config);

// Evaluates every sweep point on up to `threads` workers. Row order follows
// the grid regardless of thread count. The first exception thrown by any
// point is rethrown after all workers stop.
ResultTable run(const RunConfig& config, unsigned threads = 1);

std::string emit_csv(const ResultTable& table);

// gnuplot script plotting |force| against the sweep variable on log-log
// axes from the CSV at `csv_path`.
std::string emit_plot_script(const ResultTable& table, const RunConfig& config,
                             const std::string& csv_path);

// One-line human summary (evaluations, worst relative error, convergence).
std::string summary_line(const ResultTable& table);

}  // namespace casimir::cli

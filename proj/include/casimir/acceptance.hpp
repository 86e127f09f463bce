#pragma once

// Built-in validation suite: analytic limits, cross-checks between the force
// families and quadrature self-tests. Run by `casimir validate` without a
// config file and by the acceptance test.

#include <string>
#include <vector>

#include "casimir/quadrature.hpp"

namespace casimir {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<CriterionResult> run_acceptance_suite(const QuadratureConfig& cfg = {});

// "PASS  3 feinberg_sucher  ...  (0.12 s)"
std::string format_line(const CriterionResult& r);

}  // namespace casimir

#pragma once

// Zero-temperature force per unit area on a slab embedded in a host medium
// in front of a mirror. Positive values pull the slab toward the mirror.
//
// The total (Lorentz-force) result splits into the traditional Minkowski
// force on the slab and a medium term. The medium term itself splits into
// a screening part, which rescales the TM and TE Minkowski integrands by
// (1/eps - 1) and (mu - 1), and an assisted part. Read physically, the
// Minkowski part is the force on the slab and the medium term the force on
// the surrounding medium; the screened/assisted split is reported as data
// only.

#include <variant>

#include "casimir/layers.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/units.hpp"

namespace casimir {

struct SlabSystem {
  Medium host;
  // A PerfectMirror slab forces r^p = +1, r^s = -1 (t = 0).
  std::variant<Medium, PerfectMirror> slab;
  double slab_thickness = 0.0;
  MirrorSpec mirror = PerfectMirror{};
  double distance = 1.0;
  Constants constants{};
};

struct PolarizationParts {
  double p = 0.0;
  double s = 0.0;
  double sum() const { return p + s; }
};

struct ForceBreakdown {
  double minkowski = 0.0;
  double medium = 0.0;
  double total = 0.0;
  double screened = 0.0;  // minkowski + screening part of the medium term
  double assisted = 0.0;  // total - screened

  PolarizationParts minkowski_parts;
  PolarizationParts screening_parts;
  PolarizationParts assisted_parts;

  double minkowski_error = 0.0;
  double medium_error = 0.0;
  double total_error() const { return minkowski_error + medium_error; }
  double tail_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

IntegralResult minkowski_slab_force(const SlabSystem& system, const QuadratureConfig& cfg = {});
IntegralResult medium_slab_force(const SlabSystem& system, const QuadratureConfig& cfg = {});
ForceBreakdown lorentz_slab_force(const SlabSystem& system, const QuadratureConfig& cfg = {});

// Electric <-> magnetic exchange of every medium and mirror in the system.
SlabSystem dual(const SlabSystem& system);

void validate(const SlabSystem& system);

}  // namespace casimir

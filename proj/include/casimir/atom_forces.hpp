#pragma once

// Force on a ground-state atom embedded in a host medium at distance d from
// a mirror, and its potential energy. Positive values mean attraction.
//
// The Minkowski part is invariant under the electric/magnetic duality
// (alpha_e <-> alpha_m, eps <-> mu, R^p <-> R^s); the medium part, read as
// the atom-induced force on the medium, is not.

#include "casimir/layers.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/slab_forces.hpp"
#include "casimir/units.hpp"

namespace casimir {

// Which form of the cross term (mu - 1/eps)[...] in the medium force to use.
// `displayed` weights it with alpha_e mu R^p - alpha_m eps R^s; `uncorrected`
// is the earlier form without the alpha_e -> alpha_e/eps, alpha_m ->
// alpha_m/mu replacement, kept for comparison.
enum class MediumTermVariant { displayed, uncorrected };

struct AtomMirrorSystem {
  Medium host;
  AtomModel atom;
  MirrorSpec mirror = PerfectMirror{};
  double distance = 1.0;
  Constants constants{};
  PolarizabilityConvention convention = PolarizabilityConvention::local_field;
  MediumTermVariant medium_term = MediumTermVariant::displayed;
};

struct AtomForceBreakdown {
  IntegralResult minkowski;
  IntegralResult medium;
  double total = 0.0;
  PolarizationParts minkowski_parts;
  // (1/eps - 1) R^p bracket, (mu - 1) R^s bracket, (mu - 1/eps) cross term.
  double medium_p = 0.0, medium_s = 0.0, medium_cross = 0.0;
  bool converged() const { return minkowski.converged && medium.converged; }
};

IntegralResult atom_mirror_force(const AtomMirrorSystem& system, const QuadratureConfig& cfg = {});
IntegralResult atom_medium_force(const AtomMirrorSystem& system, const QuadratureConfig& cfg = {});
AtomForceBreakdown lorentz_atom_force(const AtomMirrorSystem& system,
                                      const QuadratureConfig& cfg = {});

// U_A(d) = integral_d^inf f_A(l) dl, done analytically under the (xi, k)
// integral: exp(-2 kappa d) -> exp(-2 kappa d) / (2 kappa).
IntegralResult atom_potential(const AtomMirrorSystem& system, const QuadratureConfig& cfg = {});

AtomMirrorSystem dual(const AtomMirrorSystem& system);

void validate(const AtomMirrorSystem& system);

}  // namespace casimir

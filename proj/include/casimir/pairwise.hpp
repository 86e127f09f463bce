#pragma once

// Dispersion interaction between two atoms embedded in a magnetodielectric
// host: full retarded energy and force, their non-retarded (van der Waals-
// London) and retarded limits, and the dilute-mirror consistency check that
// ties the pair energy back to the atom-mirror force.
//
// Sign convention: U > 0 and f = -dU/dr > 0 in the attractive channel.
// Same-type products (e-e, m-m) are attractive, cross-type (e-m) repulsive.

#include <array>
#include <optional>

#include "casimir/atom_forces.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/units.hpp"

namespace casimir {

// F(x) = x^4 + 4x^3 + 20x^2 + 48x + 48 and G(x) = (x + 2)^2, ascending
// coefficients.
inline constexpr std::array<double, 5> kFeinbergSucherF = {48.0, 48.0, 20.0, 4.0, 1.0};
inline constexpr std::array<double, 3> kFeinbergSucherG = {4.0, 4.0, 1.0};

constexpr double polynomial_F(double x) { return (((x + 4.0) * x + 20.0) * x + 48.0) * x + 48.0; }
constexpr double polynomial_G(double x) { return (x + 2.0) * (x + 2.0); }

struct PairSystem {
  Medium host;
  AtomModel atom_a;
  AtomModel atom_b;
  double separation = 1.0;
  Constants constants{};
  PolarizabilityConvention convention = PolarizabilityConvention::local_field;
};

struct PairTerms {
  double same_type = 0.0;   // alpha_e alpha_e / eps^2 + alpha_m alpha_m / mu^2 channel
  double cross_type = 0.0;  // alpha_e alpha_m + alpha_m alpha_e channel
  double total() const { return same_type + cross_type; }
};

struct PairResult {
  IntegralResult total;
  PairTerms terms;
};

PairResult interaction_energy(const PairSystem& pair, const QuadratureConfig& cfg = {});
// -dU/dr, differentiated analytically under the frequency integral.
PairResult pair_force(const PairSystem& pair, const QuadratureConfig& cfg = {});

// Non-retarded limit (exp -> 1, F -> 48, G -> 4). Throws
// DivergentIntegralError when a required frequency integral does not
// converge for the given (nondispersive) polarizabilities.
PairTerms vdw_limit_force(const PairSystem& pair, const QuadratureConfig& cfg = {});

// Retarded limit from static values; purely algebraic.
PairTerms retarded_limit_force(const PairSystem& pair);

struct ConsistencyResult {
  IntegralResult lhs;  // atom-mirror force with a dilute mirror of B atoms
  IntegralResult rhs;  // 2 pi N_B integral_d^inf r U_AB(r) dr
  // |lhs - rhs| / max(|lhs|, |rhs|); empty when both vanish.
  std::optional<double> relative_gap;
};

ConsistencyResult mirror_consistency_check(const Medium& host, const AtomModel& atom_a,
                                           const AtomModel& atom_b, double number_density,
                                           double distance, const QuadratureConfig& cfg = {},
                                           Constants constants = {},
                                           PolarizabilityConvention convention =
                                               PolarizabilityConvention::local_field);

PairSystem dual(const PairSystem& pair);
PairSystem swap_atoms(const PairSystem& pair);

void validate(const PairSystem& pair);

}  // namespace casimir

#pragma once

namespace casimir {

// Values of hbar and c used by every force formula. Reduced units set both
// to one; lengths are then measured in c/omega_ref, frequencies in omega_ref
// and polarizabilities in (c/omega_ref)^3.
struct Constants {
  double hbar = 1.0;
  double c = 1.0;

  static constexpr Constants reduced() { return {1.0, 1.0}; }
  // CGS-Gaussian: erg s, cm/s. Forces per area come out in dyn/cm^2.
  static constexpr Constants gaussian() { return {1.054571817e-27, 2.99792458e10}; }

  friend bool operator==(const Constants&, const Constants&) = default;
};

inline constexpr double pi = 3.141592653589793238462643383279502884;

}  // namespace casimir

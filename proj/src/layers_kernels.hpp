#pragma once

// Pointwise reflection algebra shared by the public scalar API and the
// batched force integrands.

#include <cmath>
#include <span>

#include "casimir/layers.hpp"
#include "casimir/units.hpp"

namespace casimir::detail {

// (x2 k1 - x1 k2) / (x2 k1 + x1 k2), x = eps for p and mu for s.
inline double fresnel(double x1, double kap1, double x2, double kap2) {
  const double a = x2 * kap1;
  const double b = x1 * kap2;
  const double den = a + b;
  return den == 0.0 ? 0.0 : (a - b) / den;
}

// Symmetric Fabry-Perot slab from the single-interface coefficient rho and
// the one-way attenuation e1 = exp(-kappa_s d_s).
inline SlabCoeffs slab_from_interface(double rho, double e1) {
  const double e2 = e1 * e1;
  const double den = 1.0 - rho * rho * e2;
  return {rho * (1.0 - e2) / den, (1.0 - rho * rho) * e1 / den};
}

// xi^2 / (kappa^2 c^2) with its k -> 0 limit at kappa = 0.
inline double frequency_ratio(double xi2_over_c2, double kap, double n2) {
  if (kap == 0.0) return xi2_over_c2 > 0.0 ? 1.0 / n2 : 0.0;
  return xi2_over_c2 / (kap * kap);
}

// First-order reflection of a host-matched dilute mirror (p polarization);
// the s coefficient follows by exchanging (eps, alpha_e) with (mu, alpha_m).
inline double dilute_reflection(double number_density, double alpha_same, double alpha_other,
                                double x_same_partner, double x_other, double n2, double ratio) {
  return pi * number_density *
         (alpha_same * x_same_partner * (2.0 / n2 - ratio) - alpha_other * x_other * ratio);
}

// Mirror state frozen at one imaginary frequency.
struct MirrorSlice {
  enum class Kind { perfect, half_space, dilute } kind = Kind::perfect;
  double rp_const = 1.0, rs_const = -1.0;
  // host
  double eps = 1.0, mu = 1.0, n2 = 1.0, xi2_over_c2 = 0.0;
  // half-space
  double eps_m = 1.0, mu_m = 1.0, shift = 0.0;
  // dilute
  double density = 0.0, alpha_e = 0.0, alpha_m = 0.0;

  void reflect(double kap, double kap_m, double& rp, double& rs) const {
    switch (kind) {
      case Kind::perfect:
        rp = rp_const;
        rs = rs_const;
        return;
      case Kind::half_space:
        rp = fresnel(eps, kap, eps_m, kap_m);
        rs = fresnel(mu, kap, mu_m, kap_m);
        return;
      case Kind::dilute: {
        const double ratio = frequency_ratio(xi2_over_c2, kap, n2);
        rp = dilute_reflection(density, alpha_e, alpha_m, mu, eps, n2, ratio);
        rs = dilute_reflection(density, alpha_m, alpha_e, eps, mu, n2, ratio);
        return;
      }
    }
  }
  bool needs_mirror_kappa() const { return kind == Kind::half_space; }
};

MirrorSlice make_mirror_slice(const MirrorSpec& mirror, const Response& host, double xi, double c);

}  // namespace casimir::detail

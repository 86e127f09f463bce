#include "casimir/pairwise.hpp"

#include <cmath>
#include <limits>

#include "casimir/errors.hpp"
#include "casimir/simd.hpp"
#include "system_scales.hpp"

namespace casimir {
namespace {

using detail::kNodes;

enum class PairQuantity { energy, force };

// -d/dr of the energy kernels: 6F + x(F - F') and 4G + x(G - G').
constexpr std::array<double, 6> kForceF = {288.0, 288.0, 128.0, 32.0, 6.0, 1.0};
constexpr std::array<double, 4> kForceG = {16.0, 16.0, 6.0, 1.0};

struct PolarizabilityRows {
  std::array<double, kNodes> ae_a{}, am_a{}, ae_b{}, am_b{};
};

void fill_polarizabilities(const PairSystem& p, std::span<const double> xi,
                           std::span<const double> eps, std::span<const double> mu,
                           PolarizabilityRows& rows) {
  const std::size_t n = xi.size();
  auto row = [&](double a0, double omega, std::array<double, kNodes>& out) {
    simd::lorentzian(a0, 1.0 / omega, xi, std::span(out).first(n));
  };
  row(p.atom_a.alpha_e0, p.atom_a.omega_e, rows.ae_a);
  row(p.atom_a.alpha_m0, p.atom_a.omega_m, rows.am_a);
  row(p.atom_b.alpha_e0, p.atom_b.omega_e, rows.ae_b);
  row(p.atom_b.alpha_m0, p.atom_b.omega_m, rows.am_b);
  if (p.convention == PolarizabilityConvention::local_field) {
    for (std::size_t i = 0; i < n; ++i) {
      rows.ae_a[i] = effective_polarizability(rows.ae_a[i], eps[i]);
      rows.ae_b[i] = effective_polarizability(rows.ae_b[i], eps[i]);
      rows.am_a[i] = effective_polarizability(rows.am_a[i], mu[i]);
      rows.am_b[i] = effective_polarizability(rows.am_b[i], mu[i]);
    }
  }
}

// Rows 0 and 1 of `out` receive the same-type and cross-type integrands.
void pair_integrand(const PairSystem& p, PairQuantity quantity, double r,
                    std::span<const double> xi, std::span<double> out) {
  const std::size_t n = xi.size();
  std::array<double, kNodes> eps{}, mu{}, x{}, e{}, poly_same{}, poly_cross{};
  p.host.at(xi, std::span(eps).first(n), std::span(mu).first(n));
  PolarizabilityRows a;
  fill_polarizabilities(p, xi, std::span(eps).first(n), std::span(mu).first(n), a);

  const double hbar = p.constants.hbar;
  const double c = p.constants.c;
  for (std::size_t i = 0; i < n; ++i) x[i] = 2.0 * std::sqrt(eps[i] * mu[i]) * xi[i] * r / c;
  simd::exp_scaled(std::span<const double>(x).first(n), -1.0, std::span(e).first(n));

  double same_prefactor = 0.0, cross_prefactor = 0.0;
  if (quantity == PairQuantity::energy) {
    simd::horner(kFeinbergSucherF, std::span<const double>(x).first(n), std::span(poly_same).first(n));
    simd::horner(kFeinbergSucherG, std::span<const double>(x).first(n), std::span(poly_cross).first(n));
    same_prefactor = hbar / (16.0 * pi * std::pow(r, 6));
    cross_prefactor = -hbar / (4.0 * pi * c * c * std::pow(r, 4));
  } else {
    simd::horner(kForceF, std::span<const double>(x).first(n), std::span(poly_same).first(n));
    simd::horner(kForceG, std::span<const double>(x).first(n), std::span(poly_cross).first(n));
    same_prefactor = hbar / (16.0 * pi * std::pow(r, 7));
    cross_prefactor = -hbar / (4.0 * pi * c * c * std::pow(r, 5));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double same = a.ae_a[i] * a.ae_b[i] / (eps[i] * eps[i]) +
                        a.am_a[i] * a.am_b[i] / (mu[i] * mu[i]);
    const double cross = a.ae_a[i] * a.am_b[i] + a.am_a[i] * a.ae_b[i];
    out[i] = same_prefactor * e[i] * poly_same[i] * same;
    out[n + i] = cross_prefactor * xi[i] * xi[i] * e[i] * poly_cross[i] * cross;
  }
}

detail::FrequencyRange pair_range(const PairSystem& p) {
  detail::FrequencyRange range;
  range.add(p.host);
  range.add(p.atom_a);
  range.add(p.atom_b);
  return range;
}

VectorIntegral<2> integrate_pair(const PairSystem& p, PairQuantity quantity, double r,
                                 detail::Tolerance tol, const QuadratureConfig& cfg) {
  const auto range = pair_range(p);
  SemiInfiniteMap map{0.0, p.constants.c / (2.0 * r)};
  if (range.min > 0.0) map.scale = std::min(map.scale, range.min);
  if (range.max > 0.0) map.cutoff = cfg.xi_cutoff_factor * range.max;
  auto fn = [&](std::span<const double> xi, std::span<double> y, std::span<double>) {
    pair_integrand(p, quantity, r, xi, y);
  };
  return detail::integrate_mapped<2>(fn, map, tol, cfg.max_subdivisions);
}

PairResult to_result(const VectorIntegral<2>& v) {
  return {v.sum({0, 1}), {v.value[0], v.value[1]}};
}

bool nondispersive(double omega) { return !std::isfinite(omega); }

double atom_scale(const AtomModel& a, const AtomModel& b) {
  detail::FrequencyRange range;
  range.add(a);
  range.add(b);
  return range.min > 0.0 ? range.min : 1.0;
}

}  // namespace

PairResult interaction_energy(const PairSystem& pair, const QuadratureConfig& cfg) {
  validate(pair);
  validate(cfg);
  return to_result(integrate_pair(pair, PairQuantity::energy, pair.separation,
                                  {cfg.rel_tol, cfg.abs_tol}, cfg));
}

PairResult pair_force(const PairSystem& pair, const QuadratureConfig& cfg) {
  validate(pair);
  validate(cfg);
  return to_result(integrate_pair(pair, PairQuantity::force, pair.separation,
                                  {cfg.rel_tol, cfg.abs_tol}, cfg));
}

PairTerms vdw_limit_force(const PairSystem& pair, const QuadratureConfig& cfg) {
  validate(pair);
  validate(cfg);
  const auto& a = pair.atom_a;
  const auto& b = pair.atom_b;
  const bool same_diverges =
      (a.alpha_e0 != 0.0 && b.alpha_e0 != 0.0 && nondispersive(a.omega_e) && nondispersive(b.omega_e)) ||
      (a.alpha_m0 != 0.0 && b.alpha_m0 != 0.0 && nondispersive(a.omega_m) && nondispersive(b.omega_m));
  const bool cross_diverges =
      (a.alpha_e0 != 0.0 && b.alpha_m0 != 0.0 && (nondispersive(a.omega_e) || nondispersive(b.omega_m))) ||
      (a.alpha_m0 != 0.0 && b.alpha_e0 != 0.0 && (nondispersive(a.omega_m) || nondispersive(b.omega_e)));
  if (same_diverges || cross_diverges)
    throw DivergentIntegralError(
        "van der Waals limit needs dispersive polarizabilities: the frequency integral diverges");

  const double hbar = pair.constants.hbar;
  const double c = pair.constants.c;
  const double r = pair.separation;

  // Each channel gets its own adaptive integral on an atom-only frequency
  // map, so the cross channel never sees the host.
  auto channel = [&](bool same) {
    auto fn = [&](std::span<const double> xi, std::span<double> y) {
      const std::size_t n = xi.size();
      std::array<double, kNodes> eps{}, mu{};
      pair.host.at(xi, std::span(eps).first(n), std::span(mu).first(n));
      PolarizabilityRows al;
      fill_polarizabilities(pair, xi, std::span(eps).first(n), std::span(mu).first(n), al);
      for (std::size_t i = 0; i < n; ++i) {
        y[i] = same ? al.ae_a[i] * al.ae_b[i] / (eps[i] * eps[i]) +
                          al.am_a[i] * al.am_b[i] / (mu[i] * mu[i])
                    : xi[i] * xi[i] * (al.ae_a[i] * al.am_b[i] + al.am_a[i] * al.ae_b[i]);
      }
    };
    return integrate_semi_inf(BatchIntegrand(fn), cfg, SemiInfiniteMap{0.0, atom_scale(a, b)});
  };
  PairTerms t;
  t.same_type = 18.0 * hbar / (pi * std::pow(r, 7)) * channel(true).value;
  t.cross_type = -4.0 * hbar / (pi * c * c * std::pow(r, 5)) * channel(false).value;
  return t;
}

PairTerms retarded_limit_force(const PairSystem& pair) {
  validate(pair);
  const Response h = pair.host.static_response();
  if (!std::isfinite(h.eps) || !std::isfinite(h.mu))
    throw DomainError("retarded limit needs finite static eps and mu");
  const auto pa = atom_polarizabilities(pair.atom_a, h, 0.0, pair.convention);
  const auto pb = atom_polarizabilities(pair.atom_b, h, 0.0, pair.convention);
  const double n0 = std::sqrt(h.n2());
  const double r = pair.separation;
  const double coeff =
      7.0 * pair.constants.hbar * pair.constants.c / (4.0 * pi * std::pow(n0, 5) * std::pow(r, 8));
  PairTerms t;
  t.same_type = coeff * 23.0 *
                (pa.electric * pb.electric * h.mu * h.mu + pa.magnetic * pb.magnetic * h.eps * h.eps);
  t.cross_type = -coeff * 7.0 * (pa.electric * pb.magnetic + pa.magnetic * pb.electric) * h.eps * h.mu;
  return t;
}

ConsistencyResult mirror_consistency_check(const Medium& host, const AtomModel& atom_a,
                                           const AtomModel& atom_b, double number_density,
                                           double distance, const QuadratureConfig& cfg,
                                           Constants constants,
                                           PolarizabilityConvention convention) {
  validate(cfg);
  if (!(number_density >= 0.0)) throw DomainError("number density must be >= 0");
  ConsistencyResult out;

  AtomMirrorSystem ams{host, atom_a, DiluteMirror{number_density, atom_b, convention}, distance,
                       constants, convention};
  out.lhs = atom_mirror_force(ams, cfg);

  PairSystem pair{host, atom_a, atom_b, distance, constants, convention};
  validate(pair);

  // Truncate the r integral where the retarded r^-7 tail of U_AB can no
  // longer matter: 2 pi N C / (5 R^5) < 0.1 rel_tol |lhs|.
  const auto range = pair_range(pair);
  const double slowest = range.min > 0.0 ? constants.c / range.min : distance;
  double r_max = 100.0 * std::max(distance, slowest);
  const Response h0 = host.static_response();
  if (std::isfinite(h0.eps) && std::isfinite(h0.mu) && out.lhs.value != 0.0) {
    const auto pa = atom_polarizabilities(atom_a, h0, 0.0, convention);
    const auto pb = atom_polarizabilities(atom_b, h0, 0.0, convention);
    const double n0 = std::sqrt(h0.n2());
    const double same = std::abs(pa.electric * pb.electric / (h0.eps * h0.eps) +
                                 pa.magnetic * pb.magnetic / (h0.mu * h0.mu));
    const double cross = std::abs(pa.electric * pb.magnetic + pa.magnetic * pb.electric);
    const double tail_coeff = constants.hbar * constants.c * (23.0 * same / n0 + 7.0 * cross / (n0 * n0 * n0)) / (4.0 * pi);
    const double bound = 2.0 * pi * number_density * tail_coeff /
                         (5.0 * 0.1 * cfg.rel_tol * std::abs(out.lhs.value));
    r_max = std::max(r_max, std::pow(bound, 0.2));
  } else if (!std::isfinite(h0.eps) || !std::isfinite(h0.mu)) {
    r_max = std::numeric_limits<double>::infinity();
  }

  const detail::Tolerance inner_tol{0.1 * cfg.rel_tol, 0.1 * cfg.abs_tol};
  std::size_t inner_evaluations = 0;
  bool inner_ok = true;
  auto outer = [&](std::span<const double> r, std::span<double> y, std::span<double> err) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto u = integrate_pair(pair, PairQuantity::energy, r[i], inner_tol, cfg);
      inner_evaluations += u.evaluations;
      inner_ok = inner_ok && u.converged;
      const double w = 2.0 * pi * number_density * r[i];
      y[i] = w * (u.value[0] + u.value[1]);
      err[i] = w * (u.error[0] + u.error[1]);
    }
  };
  const SemiInfiniteMap map{distance, distance, r_max};
  auto rhs = detail::integrate_mapped<1>(outer, map, {cfg.rel_tol, cfg.abs_tol}, cfg.max_subdivisions);
  rhs.evaluations += inner_evaluations;
  rhs.converged = rhs.converged && inner_ok;
  out.rhs = rhs.component(0);

  const double scale = std::max(std::abs(out.lhs.value), std::abs(out.rhs.value));
  if (scale > 0.0) out.relative_gap = std::abs(out.lhs.value - out.rhs.value) / scale;
  return out;
}

PairSystem dual(const PairSystem& pair) {
  PairSystem out = pair;
  out.host = dual(pair.host);
  out.atom_a = dual(pair.atom_a);
  out.atom_b = dual(pair.atom_b);
  return out;
}

PairSystem swap_atoms(const PairSystem& pair) {
  PairSystem out = pair;
  std::swap(out.atom_a, out.atom_b);
  return out;
}

void validate(const PairSystem& pair) {
  if (!(pair.separation > 0.0)) throw DomainError("atom-atom separation r must be > 0");
  validate(pair.host);
  validate(pair.atom_a);
  validate(pair.atom_b);
}

}  // namespace casimir

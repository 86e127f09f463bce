#include "casimir/atom_forces.hpp"

#include <array>
#include <cmath>

#include "casimir/errors.hpp"
#include "layers_kernels.hpp"
#include "system_scales.hpp"

namespace casimir {
namespace {

enum class AtomParts { minkowski, medium, all, potential };

template <AtomParts Parts>
class AtomKernel {
 public:
  // Layout: Minkowski (p, s), then medium (p bracket, s bracket, cross).
  static constexpr std::size_t components =
      Parts == AtomParts::all ? 5 : (Parts == AtomParts::medium ? 3 : 2);
  static constexpr detail::Groups<components> groups = [] {
    detail::Groups<components> g{};
    if constexpr (Parts == AtomParts::all) g = {0, 0, 1, 1, 1};
    return g;
  }();

  struct Slice {
    double kappa0 = 0.0;
    double xi2 = 0.0;
    double alpha_e = 0.0, alpha_m = 0.0;
    double screen_p = 0.0, screen_s = 0.0, cross_weight = 0.0;
    detail::MirrorSlice mirror;
  };

  explicit AtomKernel(const AtomMirrorSystem& sys) : sys_(sys) {}

  void prepare(std::span<const double> xi, std::span<Slice> out) const {
    const std::size_t n = xi.size();
    std::array<double, detail::kNodes> eps{}, mu{};
    sys_.host.at(xi, std::span(eps).first(n), std::span(mu).first(n));
    const double c = sys_.constants.c;
    for (std::size_t i = 0; i < n; ++i) {
      Slice& s = out[i];
      const Response host{eps[i], mu[i]};
      s.kappa0 = std::sqrt(host.n2()) * xi[i] / c;
      s.xi2 = xi[i] * xi[i];
      const auto a = atom_polarizabilities(sys_.atom, host, xi[i], sys_.convention);
      s.alpha_e = a.electric;
      s.alpha_m = a.magnetic;
      s.screen_p = 1.0 / eps[i] - 1.0;
      s.screen_s = mu[i] - 1.0;
      s.cross_weight = mu[i] - 1.0 / eps[i];
      s.mirror = detail::make_mirror_slice(sys_.mirror, host, xi[i], c);
    }
  }

  void evaluate(const Slice& s, std::span<const double> kap, std::span<double> out) const {
    constexpr std::size_t K = detail::kNodes;
    const std::size_t n = kap.size();
    std::array<double, K> e{}, kap_m{};
    simd::exp_scaled(kap, -2.0 * sys_.distance, std::span(e).first(n));
    if (s.mirror.needs_mirror_kappa()) simd::hypot_shift(kap, s.mirror.shift, std::span(kap_m).first(n));

    const double c2 = sys_.constants.c * sys_.constants.c;
    const double prefactor = sys_.constants.hbar / (pi * c2);
    const double eps = s.mirror.eps, mu = s.mirror.mu;
    for (std::size_t m = 0; m < n; ++m) {
      double rp = 0.0, rs = 0.0;
      s.mirror.reflect(kap[m], kap_m[m], rp, rs);
      // xi^2 is multiplied into the brackets so nothing divides by xi.
      const double k2c2 = 2.0 * kap[m] * kap[m] * c2;
      const double bracket_p = s.alpha_e * (k2c2 / eps - mu * s.xi2) - s.alpha_m * eps * s.xi2;
      const double bracket_s = s.alpha_m * (k2c2 / mu - eps * s.xi2) - s.alpha_e * mu * s.xi2;
      const double base = Parts == AtomParts::potential ? prefactor * 0.5 * e[m]
                                                         : prefactor * kap[m] * e[m];
      const double mink_p = base * bracket_p * rp;
      const double mink_s = base * bracket_s * rs;
      std::size_t j = 0;
      if constexpr (Parts != AtomParts::medium) {
        out[(j++) * n + m] = mink_p;
        out[(j++) * n + m] = mink_s;
      }
      if constexpr (Parts == AtomParts::medium || Parts == AtomParts::all) {
        double cross = 0.0;
        if (sys_.medium_term == MediumTermVariant::displayed) {
          cross = s.alpha_e * mu * rp - s.alpha_m * eps * rs;
        } else {
          cross = eps * mu * (s.alpha_e * rp - s.alpha_m * rs);
        }
        out[(j++) * n + m] = s.screen_p * mink_p;
        out[(j++) * n + m] = s.screen_s * mink_s;
        out[(j++) * n + m] = base * s.cross_weight * cross * s.xi2;
      }
    }
  }

 private:
  const AtomMirrorSystem& sys_;
};

template <AtomParts Parts>
auto integrate_atom(const AtomMirrorSystem& sys, const QuadratureConfig& cfg) {
  validate(sys);
  validate(cfg);
  detail::FrequencyRange range;
  range.add(sys.host);
  range.add(sys.atom);
  range.add(sys.mirror);
  const auto dom = make_nested_domain(sys.distance, sys.constants.c, range.min, range.max, cfg);
  return nested_force_integral(AtomKernel<Parts>(sys), dom, cfg);
}

}  // namespace

IntegralResult atom_mirror_force(const AtomMirrorSystem& system, const QuadratureConfig& cfg) {
  return integrate_atom<AtomParts::minkowski>(system, cfg).sum({0, 1});
}

IntegralResult atom_medium_force(const AtomMirrorSystem& system, const QuadratureConfig& cfg) {
  return integrate_atom<AtomParts::medium>(system, cfg).sum({0, 1, 2});
}

AtomForceBreakdown lorentz_atom_force(const AtomMirrorSystem& system, const QuadratureConfig& cfg) {
  const auto v = integrate_atom<AtomParts::all>(system, cfg);
  AtomForceBreakdown b;
  b.minkowski = v.sum({0, 1});
  b.medium = v.sum({2, 3, 4});
  b.total = b.minkowski.value + b.medium.value;
  b.minkowski_parts = {v.value[0], v.value[1]};
  b.medium_p = v.value[2];
  b.medium_s = v.value[3];
  b.medium_cross = v.value[4];
  return b;
}

IntegralResult atom_potential(const AtomMirrorSystem& system, const QuadratureConfig& cfg) {
  return integrate_atom<AtomParts::potential>(system, cfg).sum({0, 1});
}

AtomMirrorSystem dual(const AtomMirrorSystem& system) {
  AtomMirrorSystem out = system;
  out.host = dual(system.host);
  out.atom = dual(system.atom);
  out.mirror = dual(system.mirror);
  return out;
}

void validate(const AtomMirrorSystem& system) {
  if (!(system.distance > 0.0)) throw DomainError("atom-mirror distance d must be > 0");
  validate(system.host);
  validate(system.atom);
  validate(system.mirror);
}

}  // namespace casimir

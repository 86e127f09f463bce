#include "casimir/slab_forces.hpp"

#include <array>
#include <cmath>

#include "casimir/errors.hpp"
#include "layers_kernels.hpp"
#include "system_scales.hpp"

namespace casimir {
namespace {

enum class SlabParts { minkowski, medium, all };

template <SlabParts Parts>
class SlabKernel {
 public:
  // Component layout: Minkowski (p, s), screening (p, s), assisted (p, s);
  // the first or last pair of blocks when only one part is requested.
  static constexpr std::size_t components = Parts == SlabParts::all ? 6 : (Parts == SlabParts::minkowski ? 2 : 4);
  static constexpr detail::Groups<components> groups = [] {
    detail::Groups<components> g{};
    if constexpr (Parts == SlabParts::all) g = {0, 0, 1, 1, 1, 1};
    return g;
  }();

  struct Slice {
    double kappa0 = 0.0;
    double screen_p = 0.0, screen_s = 0.0;
    double assisted_prefactor = 0.0;
    double eps_s = 1.0, mu_s = 1.0, slab_shift = 0.0;
    detail::MirrorSlice mirror;
  };

  explicit SlabKernel(const SlabSystem& sys) : sys_(sys) {
    if (const auto* p = std::get_if<PerfectMirror>(&sys.slab)) {
      perfect_slab_ = true;
      slab_rp_ = p->magnetic ? -1.0 : 1.0;
    }
  }

  void prepare(std::span<const double> xi, std::span<Slice> out) const {
    const std::size_t n = xi.size();
    std::array<double, detail::kNodes> eps{}, mu{}, eps_s{}, mu_s{};
    sys_.host.at(xi, std::span(eps).first(n), std::span(mu).first(n));
    if (!perfect_slab_)
      std::get<Medium>(sys_.slab).at(xi, std::span(eps_s).first(n), std::span(mu_s).first(n));
    const double c = sys_.constants.c;
    const double hbar = sys_.constants.hbar;
    for (std::size_t i = 0; i < n; ++i) {
      Slice& s = out[i];
      const Response host{eps[i], mu[i]};
      const double n2 = host.n2();
      const double xc = xi[i] / c;
      s.kappa0 = std::sqrt(n2) * xc;
      s.screen_p = 1.0 / eps[i] - 1.0;
      s.screen_s = mu[i] - 1.0;
      s.assisted_prefactor = hbar / (8.0 * pi * pi * c * c) * xi[i] * xi[i] * mu[i] * (n2 - 1.0);
      if (!perfect_slab_) {
        s.eps_s = eps_s[i];
        s.mu_s = mu_s[i];
        s.slab_shift = (eps_s[i] * mu_s[i] - n2) * xc * xc;
      }
      s.mirror = detail::make_mirror_slice(sys_.mirror, host, xi[i], c);
    }
  }

  void evaluate(const Slice& s, std::span<const double> kap, std::span<double> out) const {
    constexpr std::size_t K = detail::kNodes;
    const std::size_t n = kap.size();
    std::array<double, K> e{}, kap_s{}, e_s{}, kap_m{};
    simd::exp_scaled(kap, -2.0 * sys_.distance, std::span(e).first(n));
    if (!perfect_slab_) {
      simd::hypot_shift(kap, s.slab_shift, std::span(kap_s).first(n));
      simd::exp_scaled(std::span<const double>(kap_s).first(n), -sys_.slab_thickness,
                       std::span(e_s).first(n));
    }
    if (s.mirror.needs_mirror_kappa()) simd::hypot_shift(kap, s.mirror.shift, std::span(kap_m).first(n));

    const double hbar = sys_.constants.hbar;
    const double mink_prefactor = hbar / (2.0 * pi * pi);
    const double eps = s.mirror.eps, mu = s.mirror.mu;
    for (std::size_t m = 0; m < n; ++m) {
      double r[2], t[2], big_r[2] = {0.0, 0.0};
      if (perfect_slab_) {
        r[0] = slab_rp_;
        r[1] = -slab_rp_;
        t[0] = t[1] = 0.0;
      } else {
        const auto cp = detail::slab_from_interface(detail::fresnel(eps, kap[m], s.eps_s, kap_s[m]), e_s[m]);
        const auto cs = detail::slab_from_interface(detail::fresnel(mu, kap[m], s.mu_s, kap_s[m]), e_s[m]);
        r[0] = cp.r;
        t[0] = cp.t;
        r[1] = cs.r;
        t[1] = cs.t;
      }
      s.mirror.reflect(kap[m], kap_m[m], big_r[0], big_r[1]);

      double mink[2], assisted[2];
      for (int q = 0; q < 2; ++q) {
        const double x = r[q] * big_r[q] * e[m];
        const double one_minus = 1.0 - x;
        mink[q] = mink_prefactor * kap[m] * kap[m] * (x / one_minus);
        const double sign = q == 0 ? 1.0 : -1.0;
        const double opr = 1.0 + r[q];
        assisted[q] = sign * s.assisted_prefactor * (opr * opr - t[q] * t[q]) * big_r[q] * e[m] / one_minus;
      }
      std::size_t j = 0;
      if constexpr (Parts != SlabParts::medium) {
        out[(j++) * n + m] = mink[0];
        out[(j++) * n + m] = mink[1];
      }
      if constexpr (Parts != SlabParts::minkowski) {
        out[(j++) * n + m] = s.screen_p * mink[0];
        out[(j++) * n + m] = s.screen_s * mink[1];
        out[(j++) * n + m] = assisted[0];
        out[(j++) * n + m] = assisted[1];
      }
    }
  }

 private:
  const SlabSystem& sys_;
  bool perfect_slab_ = false;
  double slab_rp_ = 1.0;
};

NestedDomain slab_domain(const SlabSystem& sys, const QuadratureConfig& cfg) {
  detail::FrequencyRange range;
  range.add(sys.host);
  if (const auto* m = std::get_if<Medium>(&sys.slab)) range.add(*m);
  range.add(sys.mirror);
  return make_nested_domain(sys.distance, sys.constants.c, range.min, range.max, cfg);
}

template <SlabParts Parts>
auto integrate_slab(const SlabSystem& sys, const QuadratureConfig& cfg) {
  validate(sys);
  validate(cfg);
  return nested_force_integral(SlabKernel<Parts>(sys), slab_domain(sys, cfg), cfg);
}

}  // namespace

IntegralResult minkowski_slab_force(const SlabSystem& system, const QuadratureConfig& cfg) {
  return integrate_slab<SlabParts::minkowski>(system, cfg).sum({0, 1});
}

IntegralResult medium_slab_force(const SlabSystem& system, const QuadratureConfig& cfg) {
  return integrate_slab<SlabParts::medium>(system, cfg).sum({0, 1, 2, 3});
}

ForceBreakdown lorentz_slab_force(const SlabSystem& system, const QuadratureConfig& cfg) {
  const auto v = integrate_slab<SlabParts::all>(system, cfg);
  ForceBreakdown b;
  b.minkowski_parts = {v.value[0], v.value[1]};
  b.screening_parts = {v.value[2], v.value[3]};
  b.assisted_parts = {v.value[4], v.value[5]};
  b.minkowski = b.minkowski_parts.sum();
  b.medium = b.screening_parts.sum() + b.assisted_parts.sum();
  b.total = b.minkowski + b.medium;
  b.screened = b.minkowski + b.screening_parts.sum();
  b.assisted = b.total - b.screened;
  b.minkowski_error = v.error[0] + v.error[1];
  b.medium_error = v.error[2] + v.error[3] + v.error[4] + v.error[5];
  for (double t : v.tail) b.tail_estimate += t;
  b.evaluations = v.evaluations;
  b.converged = v.converged;
  return b;
}

SlabSystem dual(const SlabSystem& system) {
  SlabSystem out = system;
  out.host = dual(system.host);
  if (const auto* m = std::get_if<Medium>(&system.slab)) {
    out.slab = dual(*m);
  } else {
    out.slab = PerfectMirror{!std::get<PerfectMirror>(system.slab).magnetic};
  }
  out.mirror = dual(system.mirror);
  return out;
}

void validate(const SlabSystem& system) {
  if (!(system.distance > 0.0)) throw DomainError("slab-mirror distance d must be > 0");
  if (!(system.slab_thickness >= 0.0)) throw DomainError("slab thickness d_s must be >= 0");
  validate(system.host);
  if (const auto* m = std::get_if<Medium>(&system.slab)) validate(*m);
  validate(system.mirror);
}

}  // namespace casimir

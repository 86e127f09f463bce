#pragma once

// Adaptive Gauss-Kronrod (G10/K21) integration on mapped semi-infinite
// domains, and the nested (xi, kappa) driver behind every force integral.
//
// Integrands are evaluated in batches of 21 abscissae so that material
// responses, exponentials and square roots can go through the batched
// kernels in casimir/simd.hpp. Integrals may be vector-valued: every
// component carries its own error estimate, and components are grouped by
// the sum that gets reported. Each group's summed error must meet the
// tolerance relative to the group's summed value, so a component that
// changes sign or is tiny next to its partners cannot stall refinement.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/simd.hpp"

namespace casimir {

enum class InnerVariable { kappa, k };

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  // Outer frequency integrals stop at xi_cutoff_factor times the largest
  // resonance of any model in the system.
  double xi_cutoff_factor = 1e3;
  std::size_t max_subdivisions = 2000;
  InnerVariable inner_variable = InnerVariable::kappa;

  friend bool operator==(const QuadratureConfig&, const QuadratureConfig&) = default;
};

void validate(const QuadratureConfig& cfg);

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
  // Estimated contribution beyond a finite cutoff (0 if none was applied).
  double tail_estimate = 0.0;
};

template <std::size_t N>
struct VectorIntegral {
  std::array<double, N> value{};
  std::array<double, N> error{};
  std::array<double, N> tail{};
  std::size_t evaluations = 0;
  bool converged = true;

  IntegralResult component(std::size_t i) const {
    return {value[i], error[i], evaluations, converged, tail[i]};
  }
  // Sum of a subset of components with summed error bounds.
  IntegralResult sum(std::initializer_list<std::size_t> idx) const {
    IntegralResult r{0.0, 0.0, evaluations, converged, 0.0};
    for (auto i : idx) {
      r.value += value[i];
      r.error_estimate += error[i];
      r.tail_estimate += tail[i];
    }
    return r;
  }
};

// Map [lower, cutoff) <- t in [0, t_max): x = lower + scale t / (1 - t).
struct SemiInfiniteMap {
  double lower = 0.0;
  double scale = 1.0;
  double cutoff = std::numeric_limits<double>::infinity();
};

using ScalarIntegrand = std::function<double(double)>;
using BatchIntegrand = std::function<void(std::span<const double> x, std::span<double> y)>;

IntegralResult integrate_semi_inf(const ScalarIntegrand& f, const QuadratureConfig& cfg,
                                  SemiInfiniteMap map = {});
IntegralResult integrate_semi_inf(const BatchIntegrand& f, const QuadratureConfig& cfg,
                                  SemiInfiniteMap map = {});
IntegralResult integrate_interval(const ScalarIntegrand& f, double a, double b,
                                  const QuadratureConfig& cfg);

namespace detail {

inline constexpr std::size_t kNodes = 21;

// QUADPACK qk21 abscissae and weights, laid out left-to-right over [-1, 1].
struct KronrodRule {
  std::array<double, kNodes> x{};
  std::array<double, kNodes> wk{};
  std::array<double, kNodes> wg{};
};

const KronrodRule& kronrod21();

struct Tolerance {
  double rel = 1e-8;
  double abs = 0.0;
};

// groups[j] is the group index of component j, each below N.
template <std::size_t N>
using Groups = std::array<std::size_t, N>;

template <std::size_t N>
constexpr Groups<N> separate_groups() {
  Groups<N> g{};
  for (std::size_t j = 0; j < N; ++j) g[j] = j;
  return g;
}

// fn(t, values, errors): t has kNodes abscissae; values/errors are N*kNodes,
// component-major. errors carries propagated inner error (may stay zero).
template <std::size_t N, class Fn>
VectorIntegral<N> adaptive_gk(Fn&& fn, double a, double b, Tolerance tol,
                              std::size_t max_subdivisions,
                              const Groups<N>& groups = separate_groups<N>()) {
  struct Panel {
    double a, b;
    std::array<double, N> value, error, roundoff;
    bool splittable = true;
  };
  const KronrodRule& rule = kronrod21();
  constexpr double eps = std::numeric_limits<double>::epsilon();

  VectorIntegral<N> out;
  std::array<double, kNodes> t{};
  std::array<double, N * kNodes> fv{};
  std::array<double, N * kNodes> fe{};
  std::array<double, kNodes> absf{};

  auto evaluate = [&](double lo, double hi) {
    Panel p{lo, hi, {}, {}, {}, true};
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < kNodes; ++i) t[i] = c + h * rule.x[i];
    fe.fill(0.0);
    fn(std::span<const double>(t), std::span<double>(fv), std::span<double>(fe));
    out.evaluations += kNodes;
    for (std::size_t j = 0; j < N; ++j) {
      const std::span<const double> row(fv.data() + j * kNodes, kNodes);
      for (std::size_t i = 0; i < kNodes; ++i) {
        if (!std::isfinite(row[i])) throw QuadratureError("integrand returned a non-finite value");
        absf[i] = std::abs(row[i]);
      }
      const double k = h * simd::dot(rule.wk, row);
      const double g = h * simd::dot(rule.wg, row);
      const double resabs = h * simd::dot(rule.wk, absf);
      const double inner = h * simd::dot(rule.wk, std::span<const double>(fe.data() + j * kNodes, kNodes));
      p.value[j] = k;
      p.roundoff[j] = 50.0 * eps * resabs;
      p.error[j] = std::max(std::abs(k - g), p.roundoff[j]) + std::abs(inner);
    }
    const double width_floor = 64.0 * eps * std::max(std::abs(lo), std::abs(hi));
    p.splittable = (hi - lo) > width_floor;
    return p;
  };

  std::vector<Panel> panels;
  panels.reserve(64);
  panels.push_back(evaluate(a, b));

  std::array<double, N> total{}, total_err{}, group_tol{};
  auto refresh = [&] {
    total.fill(0.0);
    total_err.fill(0.0);
    std::array<double, N> value{}, err{}, round{};
    for (const auto& p : panels)
      for (std::size_t j = 0; j < N; ++j) {
        total[j] += p.value[j];
        total_err[j] += p.error[j];
        value[groups[j]] += p.value[j];
        err[groups[j]] += p.error[j];
        round[groups[j]] += p.roundoff[j];
      }
    bool ok = true;
    for (std::size_t g = 0; g < N; ++g) {
      group_tol[g] = std::max({tol.abs, tol.rel * std::abs(value[g]), 2.0 * round[g]});
      if (err[g] > group_tol[g]) ok = false;
    }
    return ok;
  };

  bool ok = refresh();
  while (!ok && panels.size() < max_subdivisions) {
    std::size_t worst = panels.size();
    double worst_key = 0.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (!panels[i].splittable) continue;
      std::array<double, N> e{};
      for (std::size_t j = 0; j < N; ++j) e[groups[j]] += panels[i].error[j];
      double key = 0.0;
      for (std::size_t g = 0; g < N; ++g) {
        if (e[g] <= 0.0) continue;
        key = std::max(key, group_tol[g] > 0.0 ? e[g] / group_tol[g] : std::numeric_limits<double>::max());
      }
      if (key > worst_key) {
        worst_key = key;
        worst = i;
      }
    }
    if (worst == panels.size()) break;
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    panels[worst] = evaluate(p.a, mid);
    panels.push_back(evaluate(mid, p.b));
    ok = refresh();
  }

  out.value = total;
  out.error = total_err;
  out.converged = ok;
  return out;
}

// Wraps a batch integrand in x into one over the mapped variable t.
template <std::size_t N, class Fn>
auto mapped(const SemiInfiniteMap& map, Fn&& fn) {
  return [&map, &fn](std::span<const double> t, std::span<double> values, std::span<double> errors) {
    std::array<double, kNodes> x{}, jac{};
    for (std::size_t i = 0; i < kNodes; ++i) {
      const double one_minus = 1.0 - t[i];
      x[i] = map.lower + map.scale * t[i] / one_minus;
      jac[i] = map.scale / (one_minus * one_minus);
    }
    fn(std::span<const double>(x), values, errors);
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t i = 0; i < kNodes; ++i) {
        values[j * kNodes + i] *= jac[i];
        errors[j * kNodes + i] *= jac[i];
      }
  };
}

inline double mapped_upper(const SemiInfiniteMap& map) {
  if (!std::isfinite(map.cutoff)) return 1.0;
  const double span = std::max(map.cutoff - map.lower, 0.0);
  return span / (map.scale + span);
}

// Adaptive integral over [map.lower, map.cutoff) plus a one-panel estimate
// of what lies beyond a finite cutoff.
template <std::size_t N, class Fn>
VectorIntegral<N> integrate_mapped(Fn&& fn, const SemiInfiniteMap& map, Tolerance tol,
                                   std::size_t max_subdivisions,
                                   const Groups<N>& groups = separate_groups<N>()) {
  auto g = mapped<N>(map, fn);
  const double t_max = mapped_upper(map);
  auto res = adaptive_gk<N>(g, 0.0, t_max, tol, max_subdivisions, groups);
  if (t_max < 1.0) {
    auto tail = adaptive_gk<N>(g, t_max, 1.0, Tolerance{1e-3, 0.0}, 1, groups);
    res.evaluations += tail.evaluations;
    std::array<double, N> value{}, beyond{};
    for (std::size_t j = 0; j < N; ++j) {
      res.tail[j] = std::abs(tail.value[j]) + tail.error[j];
      value[groups[j]] += res.value[j];
      beyond[groups[j]] += res.tail[j];
    }
    for (std::size_t k = 0; k < N; ++k) {
      const double bound = 0.1 * std::max(tol.abs, tol.rel * std::abs(value[k]));
      if (beyond[k] > bound && beyond[k] > 100.0 * std::numeric_limits<double>::min()) res.converged = false;
    }
  }
  return res;
}

}  // namespace detail

// Where the nested force integrals live: the distance that fixes the
// exponential scale exp(-2 kappa d), the natural frequency scale for the
// outer map, and the outer cutoff.
struct NestedDomain {
  double distance = 1.0;
  double xi_scale = 1.0;
  double xi_cutoff = std::numeric_limits<double>::infinity();
};

// Frequency scale min(c / 2d, lowest resonance) and cutoff factor * highest
// resonance (infinite when the system has no resonances).
NestedDomain make_nested_domain(double distance, double c, double min_frequency,
                                double max_frequency, const QuadratureConfig& cfg);

namespace detail {
template <class Kernel>
constexpr Groups<Kernel::components> kernel_groups() {
  if constexpr (requires { Kernel::groups; }) {
    return Kernel::groups;
  } else {
    return separate_groups<Kernel::components>();
  }
}
}  // namespace detail

// A kernel for nested_force_integral provides
//   using Slice = ...;                         // state frozen at one xi
//   static constexpr std::size_t components;
//   void prepare(std::span<const double> xi, std::span<Slice> out) const;
//   static constexpr detail::Groups<components> groups;  // optional
//   void evaluate(const Slice&, std::span<const double> kappa,
//                 std::span<double> out) const;   // components * kappa.size()
// and every Slice exposes `double kappa0` (= n xi / c, the lower limit).
//
// Computes sum over xi in [0, cutoff) and kappa in [kappa0, inf) of
// kernel(xi, kappa) dkappa dxi. With the k dk = kappa dkappa substitution
// the measure dk k kappa g becomes dkappa kappa^2 g.
template <class Kernel>
VectorIntegral<Kernel::components> nested_force_integral(const Kernel& kernel,
                                                         const NestedDomain& domain,
                                                         const QuadratureConfig& cfg) {
  constexpr std::size_t N = Kernel::components;
  using detail::kNodes;
  using Slice = typename Kernel::Slice;
  constexpr auto groups = detail::kernel_groups<Kernel>();

  const detail::Tolerance outer_tol{cfg.rel_tol, cfg.abs_tol};
  const detail::Tolerance inner_tol{0.1 * cfg.rel_tol, 0.1 * cfg.abs_tol};
  const double two_d = 2.0 * domain.distance;
  std::size_t inner_evaluations = 0;
  bool inner_ok = true;

  auto outer = [&](std::span<const double> xi, std::span<double> values, std::span<double> errors) {
    std::array<Slice, kNodes> slices{};
    kernel.prepare(xi, std::span<Slice>(slices));
    for (std::size_t i = 0; i < kNodes; ++i) {
      const Slice& s = slices[i];
      VectorIntegral<N> in;
      if (cfg.inner_variable == InnerVariable::kappa) {
        const SemiInfiniteMap map{0.0, 1.0};
        auto inner = [&](std::span<const double> u, std::span<double> v, std::span<double>) {
          std::array<double, kNodes> kap{};
          for (std::size_t m = 0; m < kNodes; ++m) kap[m] = s.kappa0 + u[m] / two_d;
          kernel.evaluate(s, std::span<const double>(kap), v);
          for (auto& y : v) y /= two_d;
        };
        in = detail::integrate_mapped<N>(inner, map, inner_tol, cfg.max_subdivisions, groups);
      } else {
        const SemiInfiniteMap map{0.0, 1.0 / two_d};
        const double k0sq = s.kappa0 * s.kappa0;
        auto inner = [&](std::span<const double> k, std::span<double> v, std::span<double>) {
          std::array<double, kNodes> kap{};
          simd::hypot_shift(k, k0sq, std::span<double>(kap));
          kernel.evaluate(s, std::span<const double>(kap), v);
          for (std::size_t j = 0; j < N; ++j)
            for (std::size_t m = 0; m < kNodes; ++m)
              v[j * kNodes + m] *= kap[m] > 0.0 ? k[m] / kap[m] : 0.0;
        };
        in = detail::integrate_mapped<N>(inner, map, inner_tol, cfg.max_subdivisions, groups);
      }
      inner_evaluations += in.evaluations;
      inner_ok = inner_ok && in.converged;
      for (std::size_t j = 0; j < N; ++j) {
        values[j * kNodes + i] = in.value[j];
        errors[j * kNodes + i] = in.error[j];
      }
    }
  };

  const SemiInfiniteMap map{0.0, domain.xi_scale, domain.xi_cutoff};
  auto res = detail::integrate_mapped<N>(outer, map, outer_tol, cfg.max_subdivisions, groups);
  res.evaluations += inner_evaluations;
  res.converged = res.converged && inner_ok;
  return res;
}

}  // namespace casimir

#include "casimir/quadrature.hpp"

#include <sstream>

namespace casimir {

namespace detail {

const KronrodRule& kronrod21() {
  static const KronrodRule rule = [] {
    constexpr std::array<double, 11> xgk = {
        0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
        0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
        0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
        0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
        0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
        0.0};
    constexpr std::array<double, 11> wgk = {
        0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
        0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
        0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
        0.123491976262065851077600525452970, 0.134709217311473325928054001771707,
        0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
        0.149445554002916905664936468389821};
    // 10-point Gauss weights for xgk[1], xgk[3], ..., xgk[9].
    constexpr std::array<double, 5> wg = {
        0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
        0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
        0.295524224714752870173892994651338};

    KronrodRule r;
    for (std::size_t j = 0; j < 10; ++j) {
      r.x[j] = -xgk[j];
      r.x[20 - j] = xgk[j];
      r.wk[j] = r.wk[20 - j] = wgk[j];
      const double g = (j % 2 == 1) ? wg[j / 2] : 0.0;
      r.wg[j] = r.wg[20 - j] = g;
    }
    r.x[10] = 0.0;
    r.wk[10] = wgk[10];
    r.wg[10] = 0.0;
    return r;
  }();
  return rule;
}

}  // namespace detail

void validate(const QuadratureConfig& cfg) {
  std::ostringstream os;
  if (!(cfg.rel_tol > 0.0)) os << "rel_tol must be > 0; ";
  if (!(cfg.abs_tol >= 0.0)) os << "abs_tol must be >= 0; ";
  if (!(cfg.xi_cutoff_factor >= 10.0)) os << "xi_cutoff_factor must be >= 10; ";
  if (cfg.max_subdivisions < 1) os << "max_subdivisions must be >= 1; ";
  const auto msg = os.str();
  if (!msg.empty()) throw DomainError("invalid quadrature config: " + msg.substr(0, msg.size() - 2));
}

NestedDomain make_nested_domain(double distance, double c, double min_frequency,
                                double max_frequency, const QuadratureConfig& cfg) {
  if (!(distance > 0.0)) throw DomainError("distance must be > 0");
  NestedDomain dom;
  dom.distance = distance;
  dom.xi_scale = c / (2.0 * distance);
  if (min_frequency > 0.0) dom.xi_scale = std::min(dom.xi_scale, min_frequency);
  if (max_frequency > 0.0) dom.xi_cutoff = cfg.xi_cutoff_factor * max_frequency;
  return dom;
}

IntegralResult integrate_semi_inf(const BatchIntegrand& f, const QuadratureConfig& cfg,
                                  SemiInfiniteMap map) {
  validate(cfg);
  if (!(map.scale > 0.0)) throw DomainError("semi-infinite map needs a positive scale");
  auto fn = [&f](std::span<const double> x, std::span<double> y, std::span<double>) { f(x, y); };
  return detail::integrate_mapped<1>(fn, map, {cfg.rel_tol, cfg.abs_tol}, cfg.max_subdivisions)
      .component(0);
}

IntegralResult integrate_semi_inf(const ScalarIntegrand& f, const QuadratureConfig& cfg,
                                  SemiInfiniteMap map) {
  return integrate_semi_inf(
      BatchIntegrand([&f](std::span<const double> x, std::span<double> y) {
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
      }),
      cfg, map);
}

IntegralResult integrate_interval(const ScalarIntegrand& f, double a, double b,
                                  const QuadratureConfig& cfg) {
  validate(cfg);
  auto fn = [&f](std::span<const double> x, std::span<double> y, std::span<double>) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  };
  return detail::adaptive_gk<1>(fn, a, b, {cfg.rel_tol, cfg.abs_tol}, cfg.max_subdivisions)
      .component(0);
}

}  // namespace casimir

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "casimir/errors.hpp"
#include "casimir/pairwise.hpp"
#include "oracle.hpp"

using namespace casimir;

namespace {

Medium lorentz(double eps0, double mu0, double we, double wm, double g) {
  return {OscillatorModel::single(eps0, we, g), OscillatorModel::single(mu0, wm, g), std::nullopt};
}

PairSystem mixed_pair() {
  PairSystem p;
  p.host = lorentz(2.0, 1.5, 1.0, 0.8, 0.1);
  p.atom_a = AtomModel{1e-3, 1.0, 2e-4, 1.3};
  p.atom_b = AtomModel{2e-3, 0.8, 1e-4, 1.7};
  p.separation = 0.8;
  return p;
}

// Interaction energy straight from the polynomial form, one Simpson sweep.
double reference_energy(const PairSystem& p) {
  const double r = p.separation;
  return oracle::half_line(
      [&](double xi) {
        const auto h = oracle::response(p.host, xi);
        const double n = std::sqrt(h.eps * h.mu);
        const double x = 2.0 * n * xi * r;
        const double F = x * x * x * x + 4 * x * x * x + 20 * x * x + 48 * x + 48;
        const double G = (x + 2) * (x + 2);
        const double ae = oracle::local_field(p.atom_a.alpha_e0, p.atom_a.omega_e, xi, h.eps);
        const double am = oracle::local_field(p.atom_a.alpha_m0, p.atom_a.omega_m, xi, h.mu);
        const double be = oracle::local_field(p.atom_b.alpha_e0, p.atom_b.omega_e, xi, h.eps);
        const double bm = oracle::local_field(p.atom_b.alpha_m0, p.atom_b.omega_m, xi, h.mu);
        const double same = std::exp(-x) * F * (ae * be / (h.eps * h.eps) + am * bm / (h.mu * h.mu)) /
                            (16.0 * oracle::kPi * std::pow(r, 6));
        const double cross =
            xi * xi * std::exp(-x) * G * (ae * bm + am * be) / (4.0 * oracle::kPi * std::pow(r, 4));
        return same - cross;
      },
      0.5 / r, 4000);
}

}  // namespace

TEST_CASE("polynomials") {
  CHECK(polynomial_F(0.0) == 48.0);
  CHECK(polynomial_F(1.0) == 121.0);
  CHECK(polynomial_G(1.0) == 9.0);
  double f = 0.0;
  for (std::size_t i = kFeinbergSucherF.size(); i-- > 0;) f = f * 2.0 + kFeinbergSucherF[i];
  CHECK(f == polynomial_F(2.0));
}

TEST_CASE("interaction energy against a direct sum") {
  const auto p = mixed_pair();
  const auto e = interaction_energy(p);
  CHECK(e.total.converged);
  CHECK(e.total.value == doctest::Approx(reference_energy(p)).epsilon(1e-6));
  CHECK(e.terms.total() == doctest::Approx(e.total.value).epsilon(1e-14));
  CHECK(e.terms.same_type > 0.0);
  CHECK(e.terms.cross_type < 0.0);
}

TEST_CASE("force is minus the derivative of the energy") {
  const auto p = mixed_pair();
  const double h = 1e-4 * p.separation;
  auto energy_at = [&](double r) {
    PairSystem q = p;
    q.separation = r;
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-12;
    return interaction_energy(q, cfg).total.value;
  };
  const double fd = (energy_at(p.separation - h) - energy_at(p.separation + h)) / (2.0 * h);
  CHECK(pair_force(p).total.value == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("asymptotes in vacuum") {
  PairSystem p;
  p.atom_a = AtomModel::electric(1.0, 1.0);
  p.atom_b = AtomModel::electric(1.0, 2.0);

  SUBCASE("London") {
    p.separation = 1e-3;
    const double want = 9.0 * 2.0 / 3.0 / std::pow(p.separation, 7);
    CHECK(pair_force(p).total.value == doctest::Approx(want).epsilon(1e-3));
    CHECK(vdw_limit_force(p).total() == doctest::Approx(want).epsilon(1e-12));
  }
  SUBCASE("Feinberg-Sucher") {
    p.separation = 300.0;
    const double want = 161.0 / (4.0 * pi * std::pow(p.separation, 8));
    CHECK(pair_force(p).total.value == doctest::Approx(want).epsilon(1e-3));
    CHECK(retarded_limit_force(p).total() == doctest::Approx(want).epsilon(1e-15));
  }
  SUBCASE("electric-magnetic pairs repel") {
    p.atom_b = AtomModel::magnetic(1.0, 1.0);
    p.separation = 100.0;
    const double want = -49.0 / (4.0 * pi * std::pow(p.separation, 8));
    CHECK(retarded_limit_force(p).total() == doctest::Approx(want).epsilon(1e-15));
    CHECK(pair_force(p).total.value == doctest::Approx(want).epsilon(2e-3));
  }
  SUBCASE("nondispersive atoms have no London integral") {
    p.atom_a.omega_e = std::numeric_limits<double>::infinity();
    p.atom_b.omega_e = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(vdw_limit_force(p), DivergentIntegralError);
    // The full force is fine: retardation cuts the integral off.
    p.separation = 1.0;
    CHECK(pair_force(p).total.value == doctest::Approx(161.0 / (4.0 * pi)).epsilon(1e-8));
  }
}

TEST_CASE("retarded limit in a medium") {
  PairSystem p = mixed_pair();
  p.host = Medium::nondispersive(2.0, 1.5);
  p.convention = PolarizabilityConvention::as_given;
  const double e = 2.0, m = 1.5, n = std::sqrt(3.0);
  const auto& a = p.atom_a;
  const auto& b = p.atom_b;
  const double r = 7.0;
  p.separation = r;
  const double want = 7.0 / (4.0 * pi * std::pow(n, 5) * std::pow(r, 8)) *
                      (23.0 * (a.alpha_e0 * b.alpha_e0 * m * m + a.alpha_m0 * b.alpha_m0 * e * e) -
                       7.0 * (a.alpha_e0 * b.alpha_m0 + a.alpha_m0 * b.alpha_e0) * e * m);
  CHECK(retarded_limit_force(p).total() == doctest::Approx(want).epsilon(1e-14));

  SUBCASE("cross term scales as n^-3") {
    PairSystem vac = p;
    vac.host = Medium::vacuum();
    const double ratio = retarded_limit_force(p).cross_type / retarded_limit_force(vac).cross_type;
    CHECK(ratio * n * n * n == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("non-retarded cross term ignores the host") {
  PairSystem vac = mixed_pair();
  vac.host = Medium::vacuum();
  vac.convention = PolarizabilityConvention::as_given;
  PairSystem med = vac;
  med.host = lorentz(1.05, 1.02, 2.0, 3.0, 0.1);
  CHECK(vdw_limit_force(vac).cross_type == vdw_limit_force(med).cross_type);
  CHECK(vdw_limit_force(vac).same_type != vdw_limit_force(med).same_type);
}

TEST_CASE("symmetries") {
  const auto p = mixed_pair();
  const double f = pair_force(p).total.value;
  CHECK(pair_force(swap_atoms(p)).total.value == doctest::Approx(f).epsilon(1e-12));
  CHECK(pair_force(dual(p)).total.value == doctest::Approx(f).epsilon(2e-8));
  CHECK(retarded_limit_force(dual(p)).total() == doctest::Approx(retarded_limit_force(p).total()).epsilon(1e-14));
}

TEST_CASE("dilute mirror consistency") {
  const AtomModel a{1e-3, 1.0, 2e-4, 1.3};
  const AtomModel b{2e-3, 0.7, 1e-4, 1.5};
  SUBCASE("vacuum") {
    const auto c = mirror_consistency_check(Medium::vacuum(), a, b, 1e-2, 1.0);
    REQUIRE(c.relative_gap);
    CHECK(*c.relative_gap < 1e-6);
  }
  SUBCASE("magnetodielectric host") {
    const auto c = mirror_consistency_check(lorentz(2.0, 1.5, 1.0, 0.8, 0.1), a, b, 1e-2, 0.5);
    REQUIRE(c.relative_gap);
    CHECK(*c.relative_gap < 1e-6);
  }
  SUBCASE("no atoms in the mirror") {
    const auto c = mirror_consistency_check(Medium::vacuum(), a, b, 0.0, 1.0);
    CHECK(c.lhs.value == 0.0);
    CHECK(c.rhs.value == 0.0);
    CHECK_FALSE(c.relative_gap);
  }
}

TEST_CASE("validation") {
  PairSystem p = mixed_pair();
  p.separation = 0.0;
  CHECK_THROWS_AS(pair_force(p), DomainError);
  p = mixed_pair();
  p.atom_b.alpha_e0 = -1.0;
  CHECK_THROWS_AS(validate(p), DomainError);
}

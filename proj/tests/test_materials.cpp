#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/materials.hpp"
#include "casimir/units.hpp"

using namespace casimir;

namespace {

Medium lorentz(double eps0, double mu0, double w = 1.0, double g = 0.1) {
  return {OscillatorModel::single(eps0, w, g), OscillatorModel::single(mu0, w, g), std::nullopt};
}

}  // namespace

TEST_CASE("oscillator sums") {
  SUBCASE("single term hits its static value") {
    const auto m = OscillatorModel::single(3.5, 2.0, 0.3);
    CHECK(m.static_value() == doctest::Approx(3.5).epsilon(1e-15));
    CHECK(eval_response(m, 2.0) == doctest::Approx(1.0 + 2.5 * 4.0 / (4.0 + 2.0 * 2.3)));
  }
  SUBCASE("vacuum and constants") {
    CHECK(eval_response(OscillatorModel::vacuum(), 7.0) == 1.0);
    CHECK(eval_response(OscillatorModel::constant(2.25), 1e9) == 2.25);
    CHECK(OscillatorModel::constant(2.0).is_nondispersive());
  }
  SUBCASE("drude term") {
    const OscillatorModel drude{1.0, {{9.0, 0.0, 0.5}}};
    CHECK(eval_response(drude, 1.0) == doctest::Approx(1.0 + 9.0 / 1.5));
    CHECK(std::isinf(eval_response(drude, 0.0)));
  }
  SUBCASE("frequency scales") {
    const OscillatorModel m{1.0, {{16.0, 1.0, 0.1}, {1.0, 3.0, 5.0}}};
    CHECK(m.max_frequency() == 5.0);
    CHECK(m.min_frequency() == 1.0);
    CHECK(OscillatorModel::vacuum().max_frequency() == 0.0);
  }
  SUBCASE("negative frequency rejected") {
    CHECK_THROWS_AS(eval_response(OscillatorModel::vacuum(), -1.0), DomainError);
  }
}

TEST_CASE("responses are positive and non-increasing along the imaginary axis") {
  const Medium m{OscillatorModel{1.0, {{4.0, 1.0, 0.2}, {30.0, 5.0, 1.0}, {2.0, 0.0, 0.3}}},
                 OscillatorModel::single(2.0, 0.7, 0.0), std::nullopt};
  double prev_e = std::numeric_limits<double>::infinity(), prev_m = prev_e;
  for (double xi = 1e-3; xi < 1e4; xi *= 1.3) {
    const auto r = m.at(xi);
    CHECK(r.eps >= 1.0);
    CHECK(r.mu >= 1.0);
    CHECK(r.eps <= prev_e);
    CHECK(r.mu <= prev_m);
    prev_e = r.eps;
    prev_m = r.mu;
  }
}

TEST_CASE("batched response matches pointwise") {
  Medium m = lorentz(3.0, 1.7, 1.3, 0.2);
  m.permittivity.terms.push_back({5.0, 4.0, 0.5});
  m = with_admixture(m, 1e-2, AtomModel{1e-2, 1.0, 5e-3, 2.0});
  std::vector<double> xi, eps(40), mu(40);
  for (int i = 0; i < 40; ++i) xi.push_back(0.05 * i * i);
  m.at(xi, eps, mu);
  for (int i = 0; i < 40; ++i) {
    const auto r = m.at(xi[i]);
    CHECK(eps[i] == doctest::Approx(r.eps).epsilon(1e-14));
    CHECK(mu[i] == doctest::Approx(r.mu).epsilon(1e-14));
  }
}

TEST_CASE("atomic polarizabilities") {
  const AtomModel a{2e-3, 2.0, 1e-3, 0.5};
  CHECK(eval_polarizability(a, Channel::electric, 0.0) == 2e-3);
  CHECK(eval_polarizability(a, Channel::electric, 2.0) == doctest::Approx(1e-3));
  CHECK(eval_polarizability(a, Channel::magnetic, 1.0) == doctest::Approx(1e-3 / 5.0));
  const AtomModel flat{1e-3, std::numeric_limits<double>::infinity(), 0.0, 1.0};
  CHECK(eval_polarizability(flat, Channel::electric, 1e6) == 1e-3);

  SUBCASE("local field factor") {
    CHECK(effective_polarizability(1.0, 1.0) == 1.0);
    CHECK(effective_polarizability(2.0, 4.0) == doctest::Approx(8.0));
    const Response host{4.0, 2.5};
    const auto lf = atom_polarizabilities(a, host, 0.0, PolarizabilityConvention::local_field);
    const auto given = atom_polarizabilities(a, host, 0.0, PolarizabilityConvention::as_given);
    CHECK(lf.electric == doctest::Approx(2e-3 * 4.0));
    CHECK(lf.magnetic == doctest::Approx(1e-3 * 1.5 * 1.5));
    CHECK(given.electric == 2e-3);
    CHECK(given.magnetic == 1e-3);
  }
}

TEST_CASE("dilute mixture") {
  const Medium host = lorentz(2.0, 1.5);
  const AtomModel atom{1e-3, 1.0, 4e-4, 2.0};
  const double n = 0.5;
  const double xi = 0.7;
  const auto mix = dilute_mix(host, n, atom, xi);
  const auto h = host.at(xi);
  const double ae = eval_polarizability(atom, Channel::electric, xi) * std::pow((h.eps + 2.0) / 3.0, 2);
  const double am = eval_polarizability(atom, Channel::magnetic, xi) * std::pow((h.mu + 2.0) / 3.0, 2);
  CHECK(mix.epsilon_s == doctest::Approx(h.eps + 4.0 * pi * n * ae).epsilon(1e-14));
  CHECK(mix.mu_s == doctest::Approx(h.mu + 4.0 * pi * n * am).epsilon(1e-14));
  CHECK(mix.dilution == doctest::Approx(4.0 * pi * n * ae));

  const Medium mixed = with_admixture(host, n, atom);
  CHECK(mixed.at(xi).eps == doctest::Approx(mix.epsilon_s).epsilon(1e-15));
  CHECK(mixed.max_frequency() == doctest::Approx(2.0));
  CHECK_THROWS_AS(with_admixture(mixed, n, atom), DomainError);
  CHECK_THROWS_AS(with_admixture(host, -1.0, atom), DomainError);
}

TEST_CASE("duality swaps electric and magnetic") {
  const Medium m = with_admixture(lorentz(3.0, 1.2, 0.8), 0.1, AtomModel{1e-3, 1.0, 0.0, 1.0});
  const Medium d = dual(m);
  for (double xi : {0.0, 0.3, 2.0}) {
    CHECK(d.at(xi).eps == doctest::Approx(m.at(xi).mu).epsilon(1e-15));
    CHECK(d.at(xi).mu == doctest::Approx(m.at(xi).eps).epsilon(1e-15));
  }
  CHECK(dual(d) == m);
  const AtomModel a{1.0, 2.0, 3.0, 4.0};
  CHECK(dual(a) == AtomModel{3.0, 4.0, 1.0, 2.0});
}

TEST_CASE("validation and diagnostics") {
  CHECK_THROWS_AS(validate(OscillatorModel{0.5, {}}), DomainError);
  CHECK_THROWS_AS(validate(OscillatorModel{1.0, {{-1.0, 1.0, 0.0}}}), DomainError);
  CHECK_THROWS_AS(validate(OscillatorModel{1.0, {{1.0, 0.0, 0.0}}}), DomainError);
  CHECK_NOTHROW(validate(OscillatorModel{1.0, {{1.0, 0.0, 0.1}}}));
  CHECK_THROWS_AS(validate(AtomModel{-1e-3, 1.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(validate(AtomModel{1e-3, 0.0, 0.0, 1.0}), DomainError);

  CHECK(diagnostics(lorentz(2.0, 1.5)).empty());
  CHECK(diagnostics(Medium::nondispersive(2.0, 1.0)).size() == 1);
  CHECK(diagnostics(Medium::nondispersive(2.0, 3.0)).size() == 2);
  const Medium crowded = with_admixture(Medium::vacuum(), 100.0, AtomModel{1e-3, 1.0, 0.0, 1.0});
  CHECK(diagnostics(crowded).size() == 1);
}

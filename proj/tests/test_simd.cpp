#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "casimir/atom_forces.hpp"
#include "casimir/pairwise.hpp"
#include "casimir/simd.hpp"
#include "casimir/slab_forces.hpp"

using namespace casimir;

namespace {

// Distance in units in the last place, with values below the normal range
// compared on the denormal grid.
double ulps(double a, double b) {
  if (a == b) return 0.0;
  const double scale = std::max(std::abs(b), std::numeric_limits<double>::min());
  return std::abs(a - b) / (scale * std::numeric_limits<double>::epsilon());
}

bool have_avx2() { return simd::avx2_table() != nullptr && simd::cpu_supports_avx2(); }

struct LevelGuard {
  simd::Level saved = simd::active_level();
  ~LevelGuard() { simd::set_level(saved); }
};

std::vector<const simd::KernelTable*> tables() {
  std::vector<const simd::KernelTable*> t{&simd::scalar_table()};
  if (have_avx2()) t.push_back(simd::avx2_table());
  return t;
}

}  // namespace

TEST_CASE("level selection") {
  LevelGuard guard;
  CHECK(simd::set_level(simd::Level::scalar));
  CHECK(simd::active_level() == simd::Level::scalar);
  CHECK(&simd::active() == &simd::scalar_table());
  CHECK(simd::set_level(simd::Level::avx2) == have_avx2());
  CHECK(simd::level_name(simd::Level::scalar) == "scalar");
  CHECK(simd::level_name(simd::Level::avx2) == "avx2");
}

TEST_CASE("exp kernel accuracy including underflow") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-760.0, 60.0);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 21u, 1000u}) {
    std::vector<double> x(n), out(n);
    for (auto& v : x) v = u(rng);
    if (n > 4) {
      x[0] = 0.0;
      x[1] = -708.5;  // subnormal result
      x[2] = -745.5;  // underflows to zero
      x[3] = -1e6;
    }
    for (const auto* t : tables()) {
      t->exp_scaled(x.data(), 1.0, out.data(), n);
      for (std::size_t i = 0; i < n; ++i) {
        CAPTURE(x[i]);
        const double want = std::exp(x[i]);
        if (want < std::numeric_limits<double>::min()) {
          CHECK(std::abs(out[i] - want) <= 4.0 * std::numeric_limits<double>::denorm_min());
        } else {
          CHECK(ulps(out[i], want) <= 4.0);
        }
        CHECK(out[i] >= 0.0);
      }
    }
  }
  SUBCASE("scale factor") {
    const double x[] = {1.0, 2.0, 3.0, 4.0, 5.0};
    double out[5];
    for (const auto* t : tables()) {
      t->exp_scaled(x, -0.5, out, 5);
      for (int i = 0; i < 5; ++i) CHECK(ulps(out[i], std::exp(-0.5 * x[i])) <= 4.0);
    }
  }
}

TEST_CASE("kernel tables agree") {
  if (!have_avx2()) return;
  const auto& s = simd::scalar_table();
  const auto& v = *simd::avx2_table();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (std::size_t n : {1u, 2u, 4u, 7u, 21u, 64u}) {
    std::vector<double> x(n), a(n), b(n);
    for (auto& e : x) e = u(rng);

    s.hypot_shift(x.data(), 2.5, a.data(), n);
    v.hypot_shift(x.data(), 2.5, b.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(ulps(b[i], a[i]) <= 2.0);

    s.hypot_shift(x.data(), -30.0, a.data(), n);
    v.hypot_shift(x.data(), -30.0, b.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(b[i] >= 0.0);
      CHECK(std::abs(b[i] - a[i]) <= 1e-6 * std::max(1.0, a[i]));
    }

    const double str[] = {4.0, 30.0, 2.0}, w2[] = {1.0, 25.0, 0.0}, g[] = {0.2, 1.0, 0.3};
    s.oscillator_sum(1.0, str, w2, g, 3, x.data(), a.data(), n);
    v.oscillator_sum(1.0, str, w2, g, 3, x.data(), b.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(ulps(b[i], a[i]) <= 8.0);

    s.lorentzian(1e-3, 0.7, x.data(), a.data(), n);
    v.lorentzian(1e-3, 0.7, x.data(), b.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(ulps(b[i], a[i]) <= 4.0);

    const double poly[] = {288.0, 288.0, 128.0, 32.0, 6.0, 1.0};
    s.horner(poly, 6, x.data(), a.data(), n);
    v.horner(poly, 6, x.data(), b.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(ulps(b[i], a[i]) <= 8.0);

    const double ds = s.dot(x.data(), a.data(), n);
    const double dv = v.dot(x.data(), a.data(), n);
    CHECK(ulps(dv, ds) <= 16.0);
  }
}

TEST_CASE("forces agree across kernel sets") {
  if (!have_avx2()) return;
  LevelGuard guard;
  const Medium host{OscillatorModel::single(2.0, 1.0, 0.1), OscillatorModel::single(1.4, 0.8, 0.1), std::nullopt};
  SlabSystem slab;
  slab.host = host;
  slab.slab = Medium{OscillatorModel::single(4.0, 2.0, 0.2), OscillatorModel::vacuum(), std::nullopt};
  slab.slab_thickness = 0.4;
  slab.mirror = HalfSpaceMirror{Medium{OscillatorModel{1.0, {{50.0, 0.0, 0.2}}}, OscillatorModel::vacuum(), std::nullopt}};
  slab.distance = 0.8;
  AtomMirrorSystem atom;
  atom.host = host;
  atom.atom = AtomModel{1e-3, 1.0, 2e-4, 1.5};
  atom.mirror = slab.mirror;
  PairSystem pair;
  pair.host = host;
  pair.atom_a = atom.atom;
  pair.atom_b = AtomModel{2e-3, 0.7, 0.0, 1.0};
  pair.separation = 0.5;

  QuadratureConfig cfg;
  simd::set_level(simd::Level::scalar);
  const auto fs = lorentz_slab_force(slab, cfg);
  const auto fa = lorentz_atom_force(atom, cfg);
  const auto fp = pair_force(pair, cfg);
  simd::set_level(simd::Level::avx2);
  const auto gs = lorentz_slab_force(slab, cfg);
  const auto ga = lorentz_atom_force(atom, cfg);
  const auto gp = pair_force(pair, cfg);
  CHECK(gs.total == doctest::Approx(fs.total).epsilon(1e-11));
  CHECK(gs.medium == doctest::Approx(fs.medium).epsilon(1e-11));
  CHECK(ga.total == doctest::Approx(fa.total).epsilon(1e-11));
  CHECK(gp.total.value == doctest::Approx(fp.total.value).epsilon(1e-11));
}

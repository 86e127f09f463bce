// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include "casimir/simd.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace casimir::simd {
namespace {

inline __m256d load_tail(const double* p, std::size_t m) {
  alignas(32) double buf[4] = {0.0, 0.0, 0.0, 0.0};
  std::copy_n(p, m, buf);
  return _mm256_load_pd(buf);
}

inline void store_tail(double* p, __m256d v, std::size_t m) {
  alignas(32) double buf[4];
  _mm256_store_pd(buf, v);
  std::copy_n(buf, m, p);
}

// Cody-Waite reduction to |r| <= ln2/2, then the Cephes rational
// approximation exp(r) = 1 + 2 r P(r^2) / (Q(r^2) - r P(r^2)).
inline __m256d exp_pd(__m256d x) {
  const __m256d hi = _mm256_set1_pd(709.78271289338397);
  const __m256d lo = _mm256_set1_pd(-745.13321910194122);  // below: rounds to 0
  const __m256d over = _mm256_cmp_pd(x, hi, _CMP_GT_OQ);
  const __m256d under = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  const __m256d nan = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634073599)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93145751953125E-1), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.42860682030941723212E-6), r);

  const __m256d rr = _mm256_mul_pd(r, r);
  __m256d p = _mm256_set1_pd(1.26177193074810590878E-4);
  p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(3.02994407707441961300E-2));
  p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(9.99999999999999999910E-1));
  p = _mm256_mul_pd(p, r);
  __m256d q = _mm256_set1_pd(3.00198505138664455042E-6);
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.52448340349684104310E-3));
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.27265548208155028766E-1));
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.00000000000000000009E0));
  __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

  // 2^n: n sits in the low mantissa bits after adding 1.5 * 2^52; the
  // magic constant's own bits vanish under the 52-bit shift. n spans
  // [-1075, 1024], so split the scale in two factors; the second multiply
  // rounds once into the subnormal range.
  const __m256d magic = _mm256_set1_pd(6755399441055744.0);
  const __m256d n1 = _mm256_round_pd(_mm256_mul_pd(n, _mm256_set1_pd(0.5)),
                                     _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC);
  const __m256d n2 = _mm256_sub_pd(n, n1);
  auto pow2 = [&](__m256d k) {
    __m256i bits = _mm256_castpd_si256(_mm256_add_pd(k, magic));
    bits = _mm256_add_epi64(bits, _mm256_set1_epi64x(1023));
    return _mm256_castsi256_pd(_mm256_slli_epi64(bits, 52));
  };
  e = _mm256_mul_pd(_mm256_mul_pd(e, pow2(n1)), pow2(n2));

  e = _mm256_blendv_pd(e, _mm256_set1_pd(HUGE_VAL), over);
  e = _mm256_blendv_pd(e, _mm256_setzero_pd(), under);
  return _mm256_blendv_pd(e, _mm256_set1_pd(NAN), nan);
}

void exp_scaled_avx2(const double* x, double scale, double* out, std::size_t n) {
  const __m256d s = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, exp_pd(_mm256_mul_pd(s, _mm256_loadu_pd(x + i))));
  if (i < n) store_tail(out + i, exp_pd(_mm256_mul_pd(s, load_tail(x + i, n - i))), n - i);
}

inline __m256d hypot_shift_pd(__m256d x, __m256d shift) {
  const __m256d v = _mm256_max_pd(_mm256_fmadd_pd(x, x, shift), _mm256_setzero_pd());
  return _mm256_sqrt_pd(v);
}

void hypot_shift_avx2(const double* x, double shift, double* out, std::size_t n) {
  const __m256d s = _mm256_set1_pd(shift);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, hypot_shift_pd(_mm256_loadu_pd(x + i), s));
  if (i < n) store_tail(out + i, hypot_shift_pd(load_tail(x + i, n - i), s), n - i);
}

inline __m256d oscillator_pd(double baseline, const double* strength, const double* omega0_sq,
                             const double* damping, std::size_t terms, __m256d xi) {
  __m256d acc = _mm256_set1_pd(baseline);
  for (std::size_t j = 0; j < terms; ++j) {
    const __m256d den = _mm256_fmadd_pd(xi, _mm256_add_pd(_mm256_set1_pd(damping[j]), xi),
                                        _mm256_set1_pd(omega0_sq[j]));
    acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_set1_pd(strength[j]), den));
  }
  return acc;
}

void oscillator_sum_avx2(double baseline, const double* strength, const double* omega0_sq,
                         const double* damping, std::size_t terms, const double* xi, double* out,
                         std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, oscillator_pd(baseline, strength, omega0_sq, damping, terms,
                                            _mm256_loadu_pd(xi + i)));
  if (i < n)
    store_tail(out + i,
               oscillator_pd(baseline, strength, omega0_sq, damping, terms, load_tail(xi + i, n - i)),
               n - i);
}

inline __m256d lorentzian_pd(__m256d a0, __m256d inv_omega, __m256d xi) {
  const __m256d u = _mm256_mul_pd(xi, inv_omega);
  return _mm256_div_pd(a0, _mm256_fmadd_pd(u, u, _mm256_set1_pd(1.0)));
}

void lorentzian_avx2(double alpha0, double inv_omega, const double* xi, double* out,
                     std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha0);
  const __m256d w = _mm256_set1_pd(inv_omega);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, lorentzian_pd(a, w, _mm256_loadu_pd(xi + i)));
  if (i < n) store_tail(out + i, lorentzian_pd(a, w, load_tail(xi + i, n - i)), n - i);
}

inline __m256d horner_pd(const double* coeffs, std::size_t m, __m256d x) {
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t k = m; k-- > 0;) acc = _mm256_fmadd_pd(acc, x, _mm256_set1_pd(coeffs[k]));
  return acc;
}

void horner_avx2(const double* coeffs, std::size_t m, const double* x, double* out,
                 std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, horner_pd(coeffs, m, _mm256_loadu_pd(x + i)));
  if (i < n) store_tail(out + i, horner_pd(coeffs, m, load_tail(x + i, n - i)), n - i);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  if (i < n) acc = _mm256_fmadd_pd(load_tail(a + i, n - i), load_tail(b + i, n - i), acc);
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

const KernelTable* avx2_table() noexcept {
  static const KernelTable table{exp_scaled_avx2, hypot_shift_avx2, oscillator_sum_avx2,
                                 lorentzian_avx2, horner_avx2,      dot_avx2};
  return &table;
}

}  // namespace casimir::simd

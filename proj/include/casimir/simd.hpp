#pragma once

// Batched arithmetic kernels used on the quadrature hot path.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant. The active table is chosen once at startup from CPUID
// and can be overridden with CASIMIR_SIMD=scalar|avx2 or set_level().

#include <cstddef>
#include <span>
#include <string_view>

namespace casimir::simd {

enum class Level { scalar, avx2 };

struct KernelTable {
  // out[i] = exp(scale * x[i])
  void (*exp_scaled)(const double* x, double scale, double* out, std::size_t n);
  // out[i] = sqrt(max(x[i]^2 + shift, 0))
  void (*hypot_shift)(const double* x, double shift, double* out, std::size_t n);
  // out[i] = baseline + sum_j strength[j] / (omega0_sq[j] + xi[i] * (damping[j] + xi[i]))
  void (*oscillator_sum)(double baseline, const double* strength, const double* omega0_sq,
                         const double* damping, std::size_t terms, const double* xi, double* out,
                         std::size_t n);
  // out[i] = alpha0 / (1 + (xi[i] * inv_omega)^2)
  void (*lorentzian)(double alpha0, double inv_omega, const double* xi, double* out, std::size_t n);
  // out[i] = sum_k coeffs[k] x[i]^k, coeffs in ascending order
  void (*horner)(const double* coeffs, std::size_t degree_plus_one, const double* x, double* out,
                 std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
// Returns nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table() noexcept;

bool cpu_supports_avx2() noexcept;
Level active_level() noexcept;
// Ignored (returns false) if the requested level is unavailable.
bool set_level(Level level) noexcept;
std::string_view level_name(Level level) noexcept;

const KernelTable& active() noexcept;

// Span conveniences over the active table.
inline void exp_scaled(std::span<const double> x, double scale, std::span<double> out) {
  active().exp_scaled(x.data(), scale, out.data(), x.size());
}
inline void hypot_shift(std::span<const double> x, double shift, std::span<double> out) {
  active().hypot_shift(x.data(), shift, out.data(), x.size());
}
inline void lorentzian(double alpha0, double inv_omega, std::span<const double> xi,
                       std::span<double> out) {
  active().lorentzian(alpha0, inv_omega, xi.data(), out.data(), xi.size());
}
inline void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
  active().horner(coeffs.data(), coeffs.size(), x.data(), out.data(), x.size());
}
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

}  // namespace casimir::simd

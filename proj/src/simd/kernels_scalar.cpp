#include "casimir/simd.hpp"

#include <algorithm>
#include <cmath>

namespace casimir::simd {
namespace {

void exp_scaled_scalar(const double* x, double scale, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(scale * x[i]);
}

void hypot_shift_scalar(const double* x, double shift, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::sqrt(std::max(x[i] * x[i] + shift, 0.0));
}

void oscillator_sum_scalar(double baseline, const double* strength, const double* omega0_sq,
                           const double* damping, std::size_t terms, const double* xi, double* out,
                           std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = baseline;
    for (std::size_t j = 0; j < terms; ++j)
      acc += strength[j] / (omega0_sq[j] + xi[i] * (damping[j] + xi[i]));
    out[i] = acc;
  }
}

void lorentzian_scalar(double alpha0, double inv_omega, const double* xi, double* out,
                       std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double u = xi[i] * inv_omega;
    out[i] = alpha0 / (1.0 + u * u);
  }
}

void horner_scalar(const double* coeffs, std::size_t m, const double* x, double* out,
                   std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = m; k-- > 0;) acc = acc * x[i] + coeffs[k];
    out[i] = acc;
  }
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{exp_scaled_scalar, hypot_shift_scalar, oscillator_sum_scalar,
                                 lorentzian_scalar, horner_scalar,      dot_scalar};
  return table;
}

}  // namespace casimir::simd

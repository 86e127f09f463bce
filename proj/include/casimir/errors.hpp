#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

// Argument outside the mathematical domain of an operation (negative
// frequency, nonpositive distance, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The integrand produced a NaN; no meaningful estimate can be formed.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An integral required by a limiting formula diverges for the given models
// (e.g. nondispersive polarizabilities in the van der Waals limit).
class DivergentIntegralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace casimir

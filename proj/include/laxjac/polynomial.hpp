#pragma once

#include <vector>

#include "laxjac/types.hpp"

namespace laxjac {

/// Univariate complex polynomial, coefficients in ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {}

  cplx operator()(cplx x) const;
  cplx derivative_at(cplx x) const;

  const std::vector<cplx>& coeffs() const { return c_; }
  std::size_t size() const { return c_.size(); }
  cplx operator[](std::size_t i) const { return i < c_.size() ? c_[i] : cplx{}; }

  /// Index of the highest coefficient with |c| > tol, or -1 for the zero polynomial.
  int degree(double tol = 0.0) const;

  /// Roots via companion-matrix eigenvalues, each polished with Newton steps.
  std::vector<cplx> roots(int newton_steps = 2) const;

 private:
  std::vector<cplx> c_;
};

/// Discriminant of a*x^4 + b*x^3 + c*x^2 + d*x + e.
cplx quartic_discriminant(cplx a, cplx b, cplx c, cplx d, cplx e);

}  // namespace laxjac

#include "laxjac/polynomial.hpp"

#include <cmath>

#include "laxjac/error.hpp"

namespace laxjac {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonzeroRemainder: return "NonzeroRemainder";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::RelationViolation: return "RelationViolation";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::ContourTooClose: return "ContourTooClose";
    case ErrorKind::AGMNonconvergence: return "AGMNonconvergence";
    case ErrorKind::NormalizationFailure: return "NormalizationFailure";
    case ErrorKind::PathThroughBranchPoint: return "PathThroughBranchPoint";
    case ErrorKind::DegenerateDivisor: return "DegenerateDivisor";
    case ErrorKind::RankDeficientLattice: return "RankDeficientLattice";
    case ErrorKind::DegenerateTau: return "DegenerateTau";
    case ErrorKind::DivisorDegeneracy: return "DivisorDegeneracy";
    case ErrorKind::BranchCollision: return "BranchCollision";
    case ErrorKind::NonIntegerMonodromy: return "NonIntegerMonodromy";
    case ErrorKind::NoRealTorus: return "NoRealTorus";
    case ErrorKind::IntegerRelationFailure: return "IntegerRelationFailure";
    case ErrorKind::SingularCurve: return "SingularCurve";
  }
  return "Unknown";
}

cplx Polynomial::operator()(cplx x) const {
  cplx acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

cplx Polynomial::derivative_at(cplx x) const {
  cplx acc{};
  for (std::size_t i = c_.size(); i-- > 1;) acc = acc * x + double(i) * c_[i];
  return acc;
}

int Polynomial::degree(double tol) const {
  for (int i = int(c_.size()) - 1; i >= 0; --i)
    if (std::abs(c_[i]) > tol) return i;
  return -1;
}

std::vector<cplx> Polynomial::roots(int newton_steps) const {
  const int n = degree();
  if (n < 1) return {};
  CMatrix companion = CMatrix::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c_[i] / c_[n];
  Eigen::ComplexEigenSolver<CMatrix> es(companion, false);
  std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + n);
  for (auto& z : r) {
    for (int s = 0; s < newton_steps; ++s) {
      const cplx d = derivative_at(z);
      if (std::abs(d) == 0.0) break;
      const cplx step = (*this)(z) / d;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      z -= step;
    }
  }
  return r;
}

cplx quartic_discriminant(cplx a, cplx b, cplx c, cplx d, cplx e) {
  return 256.0 * a * a * a * e * e * e - 192.0 * a * a * b * d * e * e -
         128.0 * a * a * c * c * e * e + 144.0 * a * a * c * d * d * e -
         27.0 * a * a * d * d * d * d + 144.0 * a * b * b * c * e * e -
         6.0 * a * b * b * d * d * e - 80.0 * a * b * c * c * d * e +
         18.0 * a * b * c * d * d * d + 16.0 * a * c * c * c * c * e -
         4.0 * a * c * c * c * d * d - 27.0 * b * b * b * b * e * e +
         18.0 * b * b * b * c * d * e - 4.0 * b * b * b * d * d * d -
         4.0 * b * b * c * c * c * e + b * b * c * c * d * d;
}

}  // namespace laxjac

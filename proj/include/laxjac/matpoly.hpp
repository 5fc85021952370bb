#pragma once

#include <optional>
#include <vector>

#include "laxjac/polynomial.hpp"
#include "laxjac/types.hpp"

namespace laxjac {

/// A(x) = A_0 + A_1 x + ... + A_d x^d with r x r complex coefficients.
/// The leading coefficient A_d plays the role of the fixed matrix J.
class MatrixPolynomial {
 public:
  MatrixPolynomial(int r, std::vector<CMatrix> coeffs);

  static MatrixPolynomial zero(int r, int d);

  int dim() const { return r_; }
  int degree() const { return int(coeffs_.size()) - 1; }
  const CMatrix& coeff(int i) const { return coeffs_.at(i); }
  CMatrix& coeff(int i) { return coeffs_.at(i); }
  const std::vector<CMatrix>& coeffs() const { return coeffs_; }
  const CMatrix& leading() const { return coeffs_.back(); }

  /// Horner evaluation at x0.
  CMatrix operator()(cplx x0) const;

  MatrixPolynomial& operator+=(const MatrixPolynomial& other);
  MatrixPolynomial operator*(cplx s) const;

  /// Max-modulus over all coefficient entries.
  double max_abs() const;

 private:
  int r_;
  std::vector<CMatrix> coeffs_;
};

/// Matrix product of polynomials (degrees add).
MatrixPolynomial multiply(const MatrixPolynomial& a, const MatrixPolynomial& b);
/// [a, b] as a polynomial.
MatrixPolynomial commutator(const MatrixPolynomial& a, const MatrixPolynomial& b);

/// P(x, y) = y^r + s_1(x) y^{r-1} + ... + s_r(x), with deg s_i <= i*d.
struct PlaneSpectralPolynomial {
  int r = 0;
  int d = 0;
  std::vector<Polynomial> s;  // s[i-1] holds s_i

  cplx operator()(cplx x, cplx y) const;
  /// max |s_i coefficient difference| between two spectral polynomials of equal shape.
  double max_coeff_distance(const PlaneSpectralPolynomial& other) const;
};

/// Coefficients of det(y I - A) for a numeric square matrix, descending powers of y,
/// leading coefficient 1 (Samuelson-Berkowitz recursion, division free).
std::vector<cplx> characteristic_coefficients(const CMatrix& a);

/// det(y I - A(x)) made monic in y.
PlaneSpectralPolynomial char_poly(const MatrixPolynomial& a);

/// [A(a)^k, A(x)] / (x - a). The result keeps A's degree with a zero top coefficient,
/// so it is a tangent vector to the affine space of polynomials with fixed leading term.
MatrixPolynomial lax_vector_field(const MatrixPolynomial& a, int k, cplx at, double rel_tol = 1e-12);

struct EigenCluster {
  cplx value;
  int algebraic = 0;
  int geometric = 0;
};

struct EigenStructure {
  std::vector<EigenCluster> clusters;  // ordered by (Re, Im)
  int distinct = 0;                    // s
  bool regular = false;                // minimal polynomial == characteristic polynomial
  bool diagonalizable = false;
};

EigenStructure eigen_structure(const CMatrix& j, double tol = 1e-9);

/// u restricted to the i-th eigenspace E_i = Ker(J - lambda_i) in a fixed eigenbasis.
/// For diagonal J this is the corresponding diagonal minor of u.
CMatrix restrict_to_eigenspace(const CMatrix& u, const CMatrix& j, int i, double tol = 1e-9);

struct StabilizerRank {
  int torus_rank = 0;     // number of C^* factors
  int additive_rank = 0;  // number of C factors
  int dimension() const { return torus_rank + additive_rank; }
};

/// Dimension split of PGL_r(C; J) (regular J), or of PGL_r(C; J, K) for a non-regular
/// diagonalizable J with one regular matrix K_i per eigenspace of dimension > 1.
StabilizerRank stabilizer_dimension(const CMatrix& j,
                                    const std::optional<std::vector<CMatrix>>& k = std::nullopt,
                                    double tol = 1e-9);

}  // namespace laxjac

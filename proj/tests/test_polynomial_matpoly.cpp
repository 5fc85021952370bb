#include <doctest.h>

#include <algorithm>
#include <random>

#include <Eigen/Eigenvalues>

#include "laxjac/error.hpp"
#include "laxjac/matpoly.hpp"
#include "laxjac/monodromy.hpp"
#include "laxjac/polynomial.hpp"

using namespace laxjac;

namespace {

CMatrix random_matrix(std::mt19937_64& rng, int r) {
  std::normal_distribution<double> n01;
  CMatrix m(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m(i, j) = cplx(n01(rng), n01(rng));
  return m;
}

MatrixPolynomial random_poly(std::mt19937_64& rng, int r, int d) {
  std::vector<CMatrix> c;
  for (int i = 0; i <= d; ++i) c.push_back(random_matrix(rng, r));
  return MatrixPolynomial(r, c);
}

}  // namespace

TEST_CASE("polynomial roots reproduce a product of linear factors") {
  const std::vector<cplx> want{1.0, 2.0, cplx(0.0, 3.0), -0.5};
  Polynomial p({1.0});
  std::vector<cplx> c{1.0};
  for (cplx r : want) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  const auto roots = Polynomial(c).roots();
  REQUIRE(roots.size() == 4);
  for (cplx r : want) {
    double best = 1e300;
    for (cplx q : roots) best = std::min(best, std::abs(q - r));
    CHECK(best < 1e-12);
  }
}

TEST_CASE("quartic discriminant equals a^6 times the squared root differences") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  for (int t = 0; t < 10; ++t) {
    std::vector<cplx> c(5);
    for (auto& x : c) x = cplx(n01(rng), n01(rng));
    const auto r = Polynomial(c).roots(4);
    cplx prod = std::pow(c[4], 6);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) prod *= (r[i] - r[j]) * (r[i] - r[j]);
    const cplx d = quartic_discriminant(c[4], c[3], c[2], c[1], c[0]);
    CHECK(std::abs(d - prod) < 1e-9 * std::max(1.0, std::abs(prod)));
  }
}

TEST_CASE("pendulum discriminant matches the general quartic formula") {
  for (double h : {-0.7, 0.3, 1.0, 1.3, 2.4})
    for (double k : {-1.1, 0.0, 0.6}) {
      const cplx d = quartic_discriminant(1.0, 2.0 * k, 2.0 * h, 0.0, 1.0);
      CHECK(pendulum_discriminant(h, k) == doctest::Approx(d.real()).epsilon(1e-12));
    }
}

TEST_CASE("characteristic coefficients are the signed elementary symmetric functions") {
  std::mt19937_64 rng(5);
  for (int r : {1, 2, 3, 5}) {
    const CMatrix a = random_matrix(rng, r);
    const auto c = characteristic_coefficients(a);
    const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<CMatrix>(a).eigenvalues();
    // e_k by the usual recursion over eigenvalues
    std::vector<cplx> e(r + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < r; ++i)
      for (int k = i + 1; k >= 1; --k) e[k] += e[k - 1] * ev(i);
    for (int k = 0; k <= r; ++k) {
      const cplx want = (k % 2 ? -1.0 : 1.0) * e[k];
      CHECK(std::abs(c[k] - want) < 1e-10 * (1.0 + std::abs(want)));
    }
  }
}

TEST_CASE("char_poly agrees with det(yI - A(x)) at sample points") {
  std::mt19937_64 rng(7);
  const auto a = random_poly(rng, 3, 2);
  const auto p = char_poly(a);
  CHECK(p.r == 3);
  CHECK(p.d == 2);
  for (cplx x : {cplx(0.3, -0.2), cplx(-1.1, 0.4)})
    for (cplx y : {cplx(0.7, 0.1), cplx(-0.2, 1.3)}) {
      const CMatrix m = y * CMatrix::Identity(3, 3) - a(x);
      const cplx det = m.determinant();
      CHECK(std::abs(p(x, y) - det) < 1e-10 * (1.0 + std::abs(det)));
    }
}

TEST_CASE("lax vector field is the divided commutator") {
  std::mt19937_64 rng(9);
  const auto a = random_poly(rng, 2, 3);
  const cplx at(0.4, -0.3);
  for (int k : {1, 2}) {
    const auto f = lax_vector_field(a, k, at);
    CHECK(f.degree() == a.degree());
    CHECK(f.leading().cwiseAbs().maxCoeff() < 1e-12);
    CMatrix ak = CMatrix::Identity(2, 2);
    for (int i = 0; i < k; ++i) ak = ak * a(at);
    for (cplx x : {cplx(1.2, 0.5), cplx(-0.7, 0.9)}) {
      const CMatrix direct = (ak * a(x) - a(x) * ak) / (x - at);
      CHECK((f(x) - direct).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("commutator and multiply") {
  std::mt19937_64 rng(11);
  const auto a = random_poly(rng, 2, 1), b = random_poly(rng, 2, 2);
  const auto c = commutator(a, b);
  const cplx x(0.3, 0.8);
  CHECK((c(x) - (a(x) * b(x) - b(x) * a(x))).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((multiply(a, b)(x) - a(x) * b(x)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("eigen structure classifies regular and diagonalizable matrices") {
  CMatrix d = CMatrix::Zero(3, 3);
  d.diagonal() << 1.0, 1.0, 2.0;
  const auto s = eigen_structure(d);
  CHECK(s.distinct == 2);
  CHECK_FALSE(s.regular);
  CHECK(s.diagonalizable);

  CMatrix jb = CMatrix::Zero(2, 2);
  jb << 3.0, 1.0, 0.0, 3.0;
  const auto t = eigen_structure(jb);
  CHECK(t.distinct == 1);
  CHECK(t.regular);
  CHECK_FALSE(t.diagonalizable);
}

TEST_CASE("restriction to an eigenspace of a diagonal J is a diagonal minor") {
  std::mt19937_64 rng(13);
  const CMatrix u = random_matrix(rng, 3);
  CMatrix j = CMatrix::Zero(3, 3);
  j.diagonal() << 2.0, 5.0, 2.0;
  const CMatrix r = restrict_to_eigenspace(u, j, 0);
  REQUIRE(r.rows() == 2);
  CMatrix minor(2, 2);
  minor << u(0, 0), u(0, 2), u(2, 0), u(2, 2);
  CHECK((r - minor).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("stabilizer dimensions") {
  CMatrix j = CMatrix::Zero(3, 3);
  j.diagonal() << 1.0, 2.0, 3.0;
  const auto s = stabilizer_dimension(j);
  CHECK(s.torus_rank == 2);
  CHECK(s.additive_rank == 0);

  CMatrix jb = CMatrix::Zero(2, 2);
  jb << 1.0, 1.0, 0.0, 1.0;
  const auto t = stabilizer_dimension(jb);
  CHECK(t.torus_rank == 0);
  CHECK(t.additive_rank == 1);

  CMatrix nr = CMatrix::Zero(3, 3);
  nr.diagonal() << 1.0, 1.0, 2.0;
  CHECK_THROWS_AS(stabilizer_dimension(nr), Error);
  CMatrix k = CMatrix::Zero(2, 2);
  k.diagonal() << 3.0, 4.0;
  const auto w = stabilizer_dimension(nr, std::vector<CMatrix>{k});
  CHECK(w.torus_rank == 2);
  CHECK(w.additive_rank == 0);

  CMatrix nd = CMatrix::Zero(3, 3);
  nd << 1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0;
  try {
    stabilizer_dimension(nd, std::vector<CMatrix>{k});
    FAIL("expected NotDiagonalizable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotDiagonalizable);
  }
}

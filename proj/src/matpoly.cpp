#include "laxjac/matpoly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "laxjac/error.hpp"

namespace laxjac {

MatrixPolynomial::MatrixPolynomial(int r, std::vector<CMatrix> coeffs) : r_(r), coeffs_(std::move(coeffs)) {
  if (r_ < 1) throw Error(ErrorKind::InvalidArgument, "matrix dimension must be positive");
  if (coeffs_.empty()) throw Error(ErrorKind::InvalidArgument, "a matrix polynomial needs at least one coefficient");
  for (const auto& c : coeffs_)
    if (c.rows() != r_ || c.cols() != r_)
      throw Error(ErrorKind::InvalidArgument, "coefficient shape does not match dimension");
}

MatrixPolynomial MatrixPolynomial::zero(int r, int d) {
  return MatrixPolynomial(r, std::vector<CMatrix>(std::size_t(d + 1), CMatrix::Zero(r, r)));
}

CMatrix MatrixPolynomial::operator()(cplx x0) const {
  CMatrix acc = coeffs_.back();
  for (int i = degree() - 1; i >= 0; --i) acc = acc * x0 + coeffs_[i];
  return acc;
}

MatrixPolynomial& MatrixPolynomial::operator+=(const MatrixPolynomial& other) {
  if (other.r_ != r_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), CMatrix::Zero(r_, r_));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

MatrixPolynomial MatrixPolynomial::operator*(cplx s) const {
  MatrixPolynomial out = *this;
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

double MatrixPolynomial::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, c.cwiseAbs().maxCoeff());
  return m;
}

MatrixPolynomial multiply(const MatrixPolynomial& a, const MatrixPolynomial& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  auto out = MatrixPolynomial::zero(a.dim(), a.degree() + b.degree());
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; j <= b.degree(); ++j) out.coeff(i + j) += a.coeff(i) * b.coeff(j);
  return out;
}

MatrixPolynomial commutator(const MatrixPolynomial& a, const MatrixPolynomial& b) {
  auto out = multiply(a, b);
  out += multiply(b, a) * cplx(-1.0);
  return out;
}

cplx PlaneSpectralPolynomial::operator()(cplx x, cplx y) const {
  cplx acc = 1.0;
  for (const auto& si : s) acc = acc * y + si(x);
  return acc;
}

double PlaneSpectralPolynomial::max_coeff_distance(const PlaneSpectralPolynomial& other) const {
  double m = 0.0;
  for (std::size_t i = 0; i < std::max(s.size(), other.s.size()); ++i) {
    const Polynomial empty;
    const auto& p = i < s.size() ? s[i] : empty;
    const auto& q = i < other.s.size() ? other.s[i] : empty;
    for (std::size_t j = 0; j < std::max(p.size(), q.size()); ++j) m = std::max(m, std::abs(p[j] - q[j]));
  }
  return m;
}

std::vector<cplx> characteristic_coefficients(const CMatrix& a) {
  const int n = int(a.rows());
  if (n == 0) return {1.0};
  // Start from the trailing 1x1 block and grow leftwards: p_new = T p_old with T lower
  // triangular Toeplitz, first column (1, -a11, -R C, -R A1 C, -R A1^2 C, ...).
  std::vector<cplx> p{1.0, -a(n - 1, n - 1)};
  for (int m = n - 2; m >= 0; --m) {
    const int k = n - m;  // size of the current block
    const Eigen::RowVectorXcd row = a.block(m, m + 1, 1, k - 1);
    const CMatrix a1 = a.block(m + 1, m + 1, k - 1, k - 1);
    Eigen::VectorXcd col = a.block(m + 1, m, k - 1, 1);
    std::vector<cplx> t(k + 1);
    t[0] = 1.0;
    t[1] = -a(m, m);
    for (int l = 2; l <= k; ++l) {
      t[l] = -(row * col)(0, 0);
      col = a1 * col;
    }
    std::vector<cplx> next(k + 1, cplx{});
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= std::min(i, k - 1); ++j) next[i] += t[i - j] * p[j];
    p = std::move(next);
  }
  return p;
}

PlaneSpectralPolynomial char_poly(const MatrixPolynomial& a) {
  const int r = a.dim();
  const int d = a.degree();
  const int n = r * d + 1;
  std::vector<std::vector<cplx>> samples(n);
  for (int m = 0; m < n; ++m) samples[m] = characteristic_coefficients(a(std::polar(1.0, 2.0 * kPi * m / n)));

  PlaneSpectralPolynomial out;
  out.r = r;
  out.d = d;
  out.s.reserve(r);
  for (int i = 1; i <= r; ++i) {
    std::vector<cplx> c(std::size_t(i * d + 1));
    for (int j = 0; j <= i * d; ++j) {
      cplx acc{};
      for (int m = 0; m < n; ++m) acc += samples[m][i] * std::polar(1.0, -2.0 * kPi * double(m) * j / n);
      c[j] = acc / double(n);
    }
    out.s.emplace_back(std::move(c));
  }
  return out;
}

MatrixPolynomial lax_vector_field(const MatrixPolynomial& a, int k, cplx at, double rel_tol) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "Lax exponent k must be positive");
  const int r = a.dim();
  const int d = a.degree();
  const CMatrix base = a(at);
  CMatrix power = base;
  for (int i = 1; i < k; ++i) power = power * base;

  std::vector<CMatrix> c(d + 1);
  for (int i = 0; i <= d; ++i) c[i] = power * a.coeff(i) - a.coeff(i) * power;

  // Synthetic division by (x - at); the remainder equals [A(at)^k, A(at)].
  auto out = MatrixPolynomial::zero(r, d);
  CMatrix carry = CMatrix::Zero(r, r);
  for (int i = d; i >= 1; --i) {
    carry = c[i] + at * carry;
    out.coeff(i - 1) = carry;
  }
  const CMatrix remainder = c[0] + at * carry;

  double scale = 0.0;
  for (int i = 0; i <= d; ++i) scale += a.coeff(i).cwiseAbs().maxCoeff() * std::pow(std::abs(at), i);
  scale = std::max(scale, 1.0) * std::max(power.cwiseAbs().maxCoeff(), 1.0) * r;
  const double rem = remainder.cwiseAbs().maxCoeff();
  if (rem > rel_tol * scale)
    throw Error(ErrorKind::NonzeroRemainder, "division remainder " + std::to_string(rem));
  return out;
}

namespace {

int nullity(const CMatrix& m, double tol) {
  if (m.cols() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return int(m.cols()) - rank;
}

CMatrix null_space(const CMatrix& m, double tol) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

bool is_diagonal(const CMatrix& j) {
  for (int a = 0; a < j.rows(); ++a)
    for (int b = 0; b < j.cols(); ++b)
      if (a != b && j(a, b) != cplx{}) return false;
  return true;
}

double cluster_scale(cplx z) { return std::max(1.0, std::abs(z)); }

}  // namespace

EigenStructure eigen_structure(const CMatrix& j, double tol) {
  const int r = int(j.rows());
  if (r == 0 || j.cols() != r) throw Error(ErrorKind::InvalidArgument, "square matrix expected");
  Eigen::ComplexEigenSolver<CMatrix> es(j, false);
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + r);
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });

  // single-link clustering
  std::vector<int> label(r);
  std::iota(label.begin(), label.end(), 0);
  std::function<int(int)> find = [&](int x) { return label[x] == x ? x : label[x] = find(label[x]); };
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      if (std::abs(ev[a] - ev[b]) <= tol * cluster_scale(ev[a])) label[find(b)] = find(a);
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      if (find(a) != find(b) && std::abs(ev[a] - ev[b]) < 10.0 * tol * cluster_scale(ev[a]))
        throw Error(ErrorKind::IllConditioned, "eigenvalue clustering is ambiguous at tolerance");

  EigenStructure out;
  std::vector<int> seen;
  for (int a = 0; a < r; ++a) {
    const int root = find(a);
    if (std::find(seen.begin(), seen.end(), root) != seen.end()) continue;
    seen.push_back(root);
    EigenCluster c;
    cplx sum{};
    for (int b = 0; b < r; ++b)
      if (find(b) == root) {
        sum += ev[b];
        ++c.algebraic;
      }
    c.value = sum / double(c.algebraic);
    c.geometric = nullity(j - c.value * CMatrix::Identity(r, r), 1e3 * tol);
    out.clusters.push_back(c);
  }
  out.distinct = int(out.clusters.size());
  out.regular = std::all_of(out.clusters.begin(), out.clusters.end(), [](const EigenCluster& c) { return c.geometric == 1; });
  int geo = 0;
  for (const auto& c : out.clusters) geo += c.geometric;
  out.diagonalizable = geo == r;
  return out;
}

namespace {

// Columns of the fixed eigenbasis, grouped by cluster, plus the index range of each group.
struct Eigenbasis {
  CMatrix s;
  std::vector<std::pair<int, int>> blocks;  // (start, size)
};

Eigenbasis eigenbasis(const CMatrix& j, const EigenStructure& es, double tol) {
  const int r = int(j.rows());
  Eigenbasis out;
  out.s = CMatrix::Zero(r, r);
  if (is_diagonal(j)) {
    // standard basis vectors, ordered by cluster then by position
    int col = 0;
    for (const auto& c : es.clusters) {
      const int start = col;
      for (int a = 0; a < r; ++a)
        if (std::abs(j(a, a) - c.value) <= tol * cluster_scale(c.value) * 10.0) out.s(a, col++) = 1.0;
      out.blocks.emplace_back(start, col - start);
    }
    return out;
  }
  int col = 0;
  for (const auto& c : es.clusters) {
    const CMatrix basis = null_space(j - c.value * CMatrix::Identity(r, r), 1e3 * tol);
    out.blocks.emplace_back(col, int(basis.cols()));
    out.s.middleCols(col, basis.cols()) = basis;
    col += int(basis.cols());
  }
  return out;
}

}  // namespace

CMatrix restrict_to_eigenspace(const CMatrix& u, const CMatrix& j, int i, double tol) {
  const auto es = eigen_structure(j, tol);
  if (!es.diagonalizable) throw Error(ErrorKind::NotDiagonalizable, "restriction needs a diagonalizable J");
  if (i < 0 || i >= es.distinct) throw Error(ErrorKind::InvalidArgument, "eigenvalue index out of range");
  const auto basis = eigenbasis(j, es, tol);
  const CMatrix in_basis = basis.s.inverse() * u * basis.s;
  const auto [start, size] = basis.blocks[i];
  return in_basis.block(start, start, size, size);
}

StabilizerRank stabilizer_dimension(const CMatrix& j, const std::optional<std::vector<CMatrix>>& k, double tol) {
  const int r = int(j.rows());
  const auto es = eigen_structure(j, tol);
  const bool has_k = k.has_value() && !k->empty();

  if (es.regular) {
    if (has_k) throw Error(ErrorKind::InvalidArgument, "K constraints apply only to non-regular J");
    // the centralizer of a regular matrix has dimension r
    CMatrix op(r * r, r * r);
    for (int c = 0; c < r * r; ++c) {
      CMatrix x = CMatrix::Zero(r, r);
      x(c % r, c / r) = 1.0;
      const CMatrix img = x * j - j * x;
      op.col(c) = Eigen::Map<const Eigen::VectorXcd>(img.data(), r * r);
    }
    if (nullity(op, 1e3 * tol) != r)
      throw Error(ErrorKind::IllConditioned, "centralizer dimension disagrees with regularity test");
    return {es.distinct - 1, r - es.distinct};
  }

  if (!es.diagonalizable) throw Error(ErrorKind::NotDiagonalizable, "non-regular J must be diagonalizable");
  if (!has_k) throw Error(ErrorKind::InvalidArgument, "non-regular J needs one K matrix per multiple eigenspace");

  const auto basis = eigenbasis(j, es, tol);
  std::vector<int> big;
  for (int c = 0; c < es.distinct; ++c)
    if (basis.blocks[c].second > 1) big.push_back(c);
  if (big.size() != k->size())
    throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(big.size()) + " K matrices");

  const CMatrix d = basis.s.inverse() * j * basis.s;
  int rows = r * r;
  for (std::size_t b = 0; b < big.size(); ++b) {
    const int m = basis.blocks[big[b]].second;
    if ((*k)[b].rows() != m || (*k)[b].cols() != m)
      throw Error(ErrorKind::InvalidArgument, "K matrix size does not match its eigenspace");
    rows += m * m;
  }

  // Linearized conditions on X (in the eigenbasis): [X, D] = 0 and [X|_{E_i}, K_i] = 0.
  CMatrix op = CMatrix::Zero(rows, r * r);
  for (int c = 0; c < r * r; ++c) {
    CMatrix x = CMatrix::Zero(r, r);
    x(c % r, c / r) = 1.0;
    const CMatrix img = x * d - d * x;
    op.col(c).head(r * r) = Eigen::Map<const Eigen::VectorXcd>(img.data(), r * r);
    int row = r * r;
    for (std::size_t b = 0; b < big.size(); ++b) {
      const auto [start, m] = basis.blocks[big[b]];
      const CMatrix xb = x.block(start, start, m, m);
      const CMatrix kb = (*k)[b];
      const CMatrix cb = xb * kb - kb * xb;
      op.col(c).segment(row, m * m) = Eigen::Map<const Eigen::VectorXcd>(cb.data(), m * m);
      row += m * m;
    }
  }
  const int total = nullity(op, 1e3 * tol) - 1;

  int torus = 0;
  std::size_t kb = 0;
  for (int c = 0; c < es.distinct; ++c) {
    if (basis.blocks[c].second == 1) {
      ++torus;
    } else {
      torus += eigen_structure((*k)[kb++], tol).distinct;
    }
  }
  torus -= 1;
  return {torus, total - torus};
}

}  // namespace laxjac

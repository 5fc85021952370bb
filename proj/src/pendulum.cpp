#include "laxjac/pendulum.hpp"

#include <cmath>

#include "laxjac/error.hpp"

namespace laxjac {

namespace {

const Vec3c kE3(0.0, 0.0, 1.0);

Vec3c cross(const Vec3c& a, const Vec3c& b) {
  return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0)};
}

CMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

PendulumState PendulumState::make(const Vec3c& x, const Vec3c& v, double tol) {
  PendulumState s{x, v};
  const double r = s.residual().max_abs();
  if (!(r <= tol)) throw Error(ErrorKind::ConstraintViolation, "state is off the constraint manifold by " + std::to_string(r));
  return s;
}

ConstraintResidual PendulumState::residual() const { return {dot(x, x) - 1.0, dot(x, v)}; }

PendulumState project_to_manifold(const PendulumState& s) {
  const Vec3c x = s.x / std::sqrt(dot(s.x, s.x));
  return {x, s.v - dot(x, s.v) * x};
}

std::pair<Vec3c, Vec3c> pendulum_rhs_unchecked(const Vec3c& x, const Vec3c& v) {
  // the multiplier keeps <x,x> unsubstituted: equal on M, and <x,v> is then exactly conserved off M
  return {v, -kE3 + ((x(2) - dot(v, v)) / dot(x, x)) * x};
}

std::pair<Vec3c, Vec3c> pendulum_rhs(const PendulumState& s, double tol) {
  const double r = s.residual().max_abs();
  if (!(r <= tol)) throw Error(ErrorKind::ConstraintViolation, "state drifted off the manifold by " + std::to_string(r));
  return pendulum_rhs_unchecked(s.x, s.v);
}

Integrals integrals(const PendulumState& s) {
  return {0.5 * dot(s.v, s.v) + s.x(2), s.x(0) * s.v(1) - s.x(1) * s.v(0)};
}

std::pair<Vec3c, Vec3c> cushman_map(const PendulumState& s) { return {s.x, cross(s.x, s.v)}; }

PendulumState cushman_inverse(const Vec3c& y, const Vec3c& u) { return {y, cross(u, y)}; }

std::pair<Vec3c, Vec3c> reduced_rhs(const Vec3c& y, const Vec3c& u) { return {cross(u, y), cross(kE3, y)}; }

LaxVariables to_lax_vars(const Vec3c& y, const Vec3c& u) {
  return {u(2) - kI * u(1), y(2) - kI * y(1), u(0), y(0), u(2) + kI * u(1), y(2) + kI * y(1)};
}

LaxVariables lax_vars(const PendulumState& s) {
  const auto [y, u] = cushman_map(s);
  return to_lax_vars(y, u);
}

std::pair<MatrixPolynomial, MatrixPolynomial> lax_matrices(const LaxVariables& lv) {
  MatrixPolynomial a(2, {mat2(lv.v2, lv.u2, lv.w2, -lv.v2), mat2(lv.v1, lv.u1, lv.w1, -lv.v1), mat2(0, 1, 1, 0)});
  MatrixPolynomial b(2, {a.coeff(1), a.coeff(2)});
  return {a, b};
}

MatrixPolynomial lax_time_derivative(const Vec3c& y, const Vec3c& u) {
  const auto [dy, du] = reduced_rhs(y, u);
  // the change of variables is linear, so it maps (dy, du) to the time derivatives directly
  const auto d = to_lax_vars(dy, du);
  return MatrixPolynomial(2, {mat2(d.v2, d.u2, d.w2, -d.v2), mat2(d.v1, d.u1, d.w1, -d.v1), CMatrix::Zero(2, 2)});
}

Polynomial pendulum_quartic(cplx h, cplx k) { return Polynomial({1.0, 0.0, 2.0 * h, 2.0 * k, 1.0}); }

SpectralInvariants spectral_invariants(const LaxVariables& lv, double tol) {
  SpectralInvariants out;
  out.k = 0.5 * (lv.u1 + lv.w1);
  out.h = 0.5 * (lv.u2 + lv.w2 + lv.u1 * lv.w1 + lv.v1 * lv.v1);
  out.linear_coeff = lv.u1 * lv.w2 + lv.u2 * lv.w1 + 2.0 * lv.v1 * lv.v2;
  out.constant_coeff = lv.u2 * lv.w2 + lv.v2 * lv.v2;
  out.f = pendulum_quartic(out.h, out.k);
  if (std::abs(out.linear_coeff) > tol || std::abs(out.constant_coeff - 1.0) > tol)
    throw Error(ErrorKind::RelationViolation, "Lax variables do not come from the constraint manifold");
  return out;
}

PendulumState rotate_about_e3(const PendulumState& s, cplx theta) {
  const cplx c = std::cos(theta), sn = std::sin(theta);
  Eigen::Matrix3cd r;
  r << c, -sn, 0, sn, c, 0, 0, 0, 1;
  return {r * s.x, r * s.v};
}

PendulumState random_real_state(std::mt19937_64& rng, double speed) {
  std::normal_distribution<double> n01;
  std::uniform_real_distribution<double> u01;
  Eigen::Vector3d x(n01(rng), n01(rng), n01(rng));
  x.normalize();
  Eigen::Vector3d v(n01(rng), n01(rng), n01(rng));
  v -= v.dot(x) * x;
  v *= speed * u01(rng) / v.norm();
  return {x.cast<cplx>(), v.cast<cplx>()};
}

PendulumState random_complex_state(std::mt19937_64& rng, double eps) {
  std::normal_distribution<double> n01;
  PendulumState s = random_real_state(rng);
  for (int i = 0; i < 3; ++i) {
    s.x(i) += eps * cplx(n01(rng), n01(rng));
    s.v(i) += eps * cplx(n01(rng), n01(rng));
  }
  return project_to_manifold(s);
}

PendulumState real_state_from_hk(double h, double k) {
  // g(z) = rho^2 b^2 = 2(h - z)(1 - z^2) - k^2 is maximal at the lower critical point
  const double z = (h - std::sqrt(h * h + 3.0)) / 3.0;
  if (!(z >= -1.0)) throw Error(ErrorKind::NoRealTorus, "energy below the stable equilibrium");
  const double g = 2.0 * (h - z) * (1.0 - z * z) - k * k;
  if (!(g > 0.0)) throw Error(ErrorKind::NoRealTorus, "no real motion with these (h, k)");
  const double rho = std::sqrt(1.0 - z * z);
  const double a = k / rho;
  const double b = std::sqrt(g) / rho;
  return {Vec3c(rho, 0.0, z), Vec3c(b * z, a, -b * rho)};
}

}  // namespace laxjac

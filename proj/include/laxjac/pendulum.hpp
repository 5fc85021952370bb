#pragma once

#include <algorithm>
#include <random>
#include <utility>

#include "laxjac/matpoly.hpp"
#include "laxjac/polynomial.hpp"
#include "laxjac/types.hpp"

namespace laxjac {

/// Bilinear (non-Hermitian) pairing sum a_i b_i.
inline cplx dot(const Vec3c& a, const Vec3c& b) { return (a.array() * b.array()).sum(); }

struct ConstraintResidual {
  cplx norm;        // <x,x> - 1
  cplx tangency;    // <x,v>
  double max_abs() const { return std::max(std::abs(norm), std::abs(tangency)); }
};

/// A point of M = {<x,x> = 1, <x,v> = 0} in C^3 x C^3.
struct PendulumState {
  Vec3c x = Vec3c::Zero();
  Vec3c v = Vec3c::Zero();

  /// Checked constructor; throws ConstraintViolation if the residual exceeds tol.
  static PendulumState make(const Vec3c& x, const Vec3c& v, double tol = 1e-6);

  ConstraintResidual residual() const;
  bool operator==(const PendulumState&) const = default;
};

/// Normalize x with the bilinear norm and remove the x-component of v. Never applied implicitly.
PendulumState project_to_manifold(const PendulumState& s);

/// Right-hand side of the constrained pendulum equations.
std::pair<Vec3c, Vec3c> pendulum_rhs(const PendulumState& s, double tol = 1e-6);
/// Same, without the constraint check (used inside the integrator). The multiplier is
/// divided by <x,x>, which changes nothing on M but keeps nearby states from drifting off it.
std::pair<Vec3c, Vec3c> pendulum_rhs_unchecked(const Vec3c& x, const Vec3c& v);

struct Integrals {
  cplx h;  // energy
  cplx k;  // angular momentum about e3
};
Integrals integrals(const PendulumState& s);

/// (x, v) -> (x, x cross v) and its inverse (y, u) -> (y, u cross y).
std::pair<Vec3c, Vec3c> cushman_map(const PendulumState& s);
PendulumState cushman_inverse(const Vec3c& y, const Vec3c& u);

/// Reduced vector field on the image: y' = u x y, u' = e3 x y.
std::pair<Vec3c, Vec3c> reduced_rhs(const Vec3c& y, const Vec3c& u);

struct LaxVariables {
  cplx u1, u2, v1, v2, w1, w2;
};
LaxVariables to_lax_vars(const Vec3c& y, const Vec3c& u);
LaxVariables lax_vars(const PendulumState& s);

/// A(lambda) (r=2, d=2) and B(lambda) = (A(lambda) - A(0)) / lambda (r=2, d=1).
std::pair<MatrixPolynomial, MatrixPolynomial> lax_matrices(const LaxVariables& lv);

/// dA/dt obtained by pushing the reduced vector field through the change of variables.
MatrixPolynomial lax_time_derivative(const Vec3c& y, const Vec3c& u);

/// The four coefficient identities of det(mu I - A(lambda)) with their residuals.
struct SpectralInvariants {
  cplx h;
  cplx k;
  Polynomial f;        // F_c(lambda) = lambda^4 + 2k lambda^3 + 2h lambda^2 + 1
  cplx linear_coeff;   // U1 W2 + U2 W1 + 2 V1 V2, should vanish
  cplx constant_coeff; // U2 W2 + V2^2, should be 1
};
SpectralInvariants spectral_invariants(const LaxVariables& lv, double tol = 1e-8);

/// Quartic lambda^4 + 2k lambda^3 + 2h lambda^2 + 1.
Polynomial pendulum_quartic(cplx h, cplx k);

/// Rotation about e3 by a (possibly complex) angle, applied to x and v.
PendulumState rotate_about_e3(const PendulumState& s, cplx theta);

/// Random real state: x uniform on the sphere, v tangent with |v| <= speed.
PendulumState random_real_state(std::mt19937_64& rng, double speed = 1.5);
/// Random complex state: a real state plus a complex perturbation of size eps, then projected.
PendulumState random_complex_state(std::mt19937_64& rng, double eps = 0.3);

/// Real state with prescribed (h, k) on the physical sheet: x = (rho, 0, z) at the height
/// where the radial velocity is largest. Throws NoRealTorus if no real motion exists.
PendulumState real_state_from_hk(double h, double k);

}  // namespace laxjac

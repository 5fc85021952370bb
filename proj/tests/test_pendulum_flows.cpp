#include <doctest.h>

#include <cmath>
#include <random>

#include "laxjac/error.hpp"
#include "laxjac/flows.hpp"
#include "laxjac/ode.hpp"
#include "laxjac/pendulum.hpp"

using namespace laxjac;

namespace {

const PendulumState kS0{Vec3c(0.6, 0.0, 0.8), Vec3c(0.0, 1.0, 0.0)};

Vec3c cross3(const Vec3c& a, const Vec3c& b) {
  return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0)};
}

}  // namespace

TEST_CASE("checked constructor rejects states off the manifold") {
  CHECK_NOTHROW(PendulumState::make(kS0.x, kS0.v));
  try {
    PendulumState::make(Vec3c(1.0, 0.1, 0.0), Vec3c(0.0, 1.0, 0.0));
    FAIL("expected ConstraintViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConstraintViolation);
  }
  const PendulumState p = project_to_manifold({Vec3c(1.0, 0.1, 0.0), Vec3c(0.3, 1.0, 0.0)});
  CHECK(p.residual().max_abs() < 1e-14);
}

TEST_CASE("integrals and spectral invariants at the reference state") {
  const Integrals in = integrals(kS0);
  CHECK(std::abs(in.h - 1.3) < 1e-15);
  CHECK(std::abs(in.k - 0.6) < 1e-15);
  const SpectralInvariants s = spectral_invariants(lax_vars(kS0));
  CHECK(std::abs(s.h - 1.3) < 1e-14);
  CHECK(std::abs(s.k - 0.6) < 1e-14);
}

TEST_CASE("the vector field is tangent to the constraint manifold") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    const PendulumState s = random_complex_state(rng);
    CHECK(s.residual().max_abs() < 1e-10);
    const auto [dx, dv] = pendulum_rhs(s);
    CHECK(std::abs(dot(s.x, dx)) < 1e-12);
    CHECK(std::abs(dot(dx, s.v) + dot(s.x, dv)) < 1e-12);
  }
}

TEST_CASE("the automorphism pushes the pendulum field to the reduced field") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 10; ++i) {
    const PendulumState s = random_complex_state(rng);
    const auto [dx, dv] = pendulum_rhs(s);
    const auto [y, u] = cushman_map(s);
    const auto [dy, du] = reduced_rhs(y, u);
    // chain rule for (x, x cross v)
    CHECK((dy - dx).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((du - (cross3(dx, s.v) + cross3(s.x, dv))).cwiseAbs().maxCoeff() < 1e-12);
    const PendulumState back = cushman_inverse(y, u);
    CHECK(state_distance(back, s) < 1e-12);
  }
}

TEST_CASE("rotation about e3 preserves both integrals") {
  std::mt19937_64 rng(25);
  const PendulumState s = random_complex_state(rng);
  const Integrals a = integrals(s);
  for (cplx th : {cplx(0.4), cplx(1.0, 0.3)}) {
    const Integrals b = integrals(rotate_about_e3(s, th));
    CHECK(std::abs(a.h - b.h) < 1e-12);
    CHECK(std::abs(a.k - b.k) < 1e-12);
  }
}

TEST_CASE("real state with prescribed integrals") {
  const PendulumState s = real_state_from_hk(1.3, 0.6);
  CHECK(s.residual().max_abs() < 1e-14);
  CHECK(std::abs(integrals(s).h - 1.3) < 1e-14);
  CHECK(std::abs(integrals(s).k - 0.6) < 1e-14);
  CHECK_THROWS_AS(real_state_from_hk(-2.0, 0.0), Error);
}

TEST_CASE("dop853 against exact solutions") {
  OdeRhs osc = [](double, const RealVector& y, RealVector& d) {
    d.resize(2);
    d(0) = y(1);
    d(1) = -y(0);
  };
  RealVector y0(2);
  y0 << 1.0, 0.0;
  Dop853 ode({1e-12, 1e-12});
  const auto ys = ode.sample(osc, 0.0, y0, {0.0, 1.7, 6.0, 20.0});
  for (auto [i, t] : {std::pair{1, 1.7}, {2, 6.0}, {3, 20.0}}) {
    CHECK(std::abs(ys[i](0) - std::cos(t)) < 1e-11);
    CHECK(std::abs(ys[i](1) + std::sin(t)) < 1e-11);
  }
  const auto back = ode.integrate(osc, 0.0, y0, -5.0);
  CHECK(std::abs(back(0) - std::cos(5.0)) < 1e-11);

  // dense output against the exact solution inside steps
  double worst = 0.0;
  Dop853({1e-10, 1e-10}).integrate(osc, 0.0, y0, 10.0, [&](const DenseStep& s) {
    const double t = 0.5 * (s.t_old + s.t_new);
    worst = std::max(worst, std::abs(s(t)(0) - std::cos(t)));
    return true;
  });
  CHECK(worst < 1e-9);

  // blow-up of y' = y^2 at t = 1
  OdeRhs sq = [](double, const RealVector& y, RealVector& d) { d = y.array().square(); };
  RealVector one(1);
  one << 1.0;
  CHECK_THROWS_AS(Dop853({1e-10, 1e-10}).integrate(sq, 0.0, one, 2.0), Error);
}

TEST_CASE("reference trajectory conserves H, K and the constraints") {
  const auto traj = integrate_pendulum(kS0, 20.0, 1e-12, 201);
  CHECK(traj.max_energy_drift() < 1e-9);
  CHECK(traj.max_momentum_drift() < 1e-9);
  CHECK(traj.max_constraint_drift() < 1e-8);
}

TEST_CASE("drift decreases with the tolerance") {
  std::mt19937_64 rng(27);
  const PendulumState s = random_real_state(rng);
  double prev = 1e300;
  for (double tol : {1e-6, 1e-8, 1e-10}) {
    const double d = integrate_pendulum(s, 20.0, tol, 41).max_energy_drift();
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("complex time direction conserves the integrals") {
  const auto traj = integrate_pendulum(kS0, 0.5, 1e-12, 11, cplx(0.0, 1.0));
  CHECK(traj.max_energy_drift() < 1e-10);
  CHECK(traj.max_momentum_drift() < 1e-10);
}

TEST_CASE("the Hamiltonian and rotation flows commute") {
  CHECK(commuting_flows_deviation(kS0, 1.3, 0.7, 1e-12) < 1e-9);
}

TEST_CASE("lax flows are isospectral") {
  const auto a0 = lax_matrices(lax_vars(kS0)).first;
  const auto traj = integrate_lax(a0, 1, 0.0, 10.0, 1e-12, 51, 1.0 / cplx(0.0, 2.0));
  CHECK(isospectral_deviation(traj) < 1e-9);
  // this flow is the pendulum flow read through the Lax variables
  const auto pend = integrate_pendulum(kS0, 10.0, 1e-12, 51);
  const auto a_end = lax_matrices(lax_vars(pend.states.back())).first;
  double diff = 0.0;
  for (int i = 0; i <= 2; ++i) diff = std::max(diff, (a_end.coeff(i) - traj.states.back().coeff(i)).cwiseAbs().maxCoeff());
  CHECK(diff < 1e-8);
}

#include "laxjac/flows.hpp"

#include <algorithm>

#include "laxjac/error.hpp"
#include "laxjac/ode.hpp"

namespace laxjac {

namespace {

RealVector pack(const PendulumState& s) {
  RealVector y(12);
  for (int i = 0; i < 3; ++i) {
    y(2 * i) = s.x(i).real();
    y(2 * i + 1) = s.x(i).imag();
    y(6 + 2 * i) = s.v(i).real();
    y(7 + 2 * i) = s.v(i).imag();
  }
  return y;
}

PendulumState unpack(const RealVector& y) {
  PendulumState s;
  for (int i = 0; i < 3; ++i) {
    s.x(i) = cplx(y(2 * i), y(2 * i + 1));
    s.v(i) = cplx(y(6 + 2 * i), y(7 + 2 * i));
  }
  return s;
}

RealVector pack(const MatrixPolynomial& a) {
  const int r = a.dim();
  RealVector y(2 * r * r * (a.degree() + 1));
  long p = 0;
  for (const auto& c : a.coeffs())
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        y(p++) = c(i, j).real();
        y(p++) = c(i, j).imag();
      }
  return y;
}

MatrixPolynomial unpack(const RealVector& y, int r, int d) {
  auto a = MatrixPolynomial::zero(r, d);
  long p = 0;
  for (int c = 0; c <= d; ++c)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        a.coeff(c)(i, j) = cplx(y(p), y(p + 1));
        p += 2;
      }
  return a;
}

OdeOptions options_for(double tol) {
  OdeOptions o;
  o.rtol = tol;
  o.atol = tol;
  return o;
}

}  // namespace

double PendulumTrajectory::max_energy_drift() const {
  double m = 0.0;
  for (const auto& d : diagnostics) m = std::max(m, d.energy_drift);
  return m;
}

double PendulumTrajectory::max_momentum_drift() const {
  double m = 0.0;
  for (const auto& d : diagnostics) m = std::max(m, d.momentum_drift);
  return m;
}

double PendulumTrajectory::max_constraint_drift() const {
  double m = 0.0;
  for (const auto& d : diagnostics) m = std::max(m, d.constraint_drift);
  return m;
}

std::vector<double> sample_times(double t_end, int n_samples) {
  if (n_samples < 2) throw Error(ErrorKind::InvalidArgument, "need at least two samples");
  std::vector<double> t(n_samples);
  for (int i = 0; i < n_samples; ++i) t[i] = t_end * double(i) / double(n_samples - 1);
  t.back() = t_end;
  return t;
}

PendulumTrajectory integrate_pendulum_at(const PendulumState& state0, const std::vector<double>& times, double tol,
                                         cplx direction) {
  const double r = state0.residual().max_abs();
  if (!(r <= 1e-6)) throw Error(ErrorKind::ConstraintViolation, "initial state is off the manifold");
  OdeRhs rhs = [direction](double, const RealVector& y, RealVector& dy) {
    const PendulumState s = unpack(y);
    auto [dx, dv] = pendulum_rhs_unchecked(s.x, s.v);
    dy = pack(PendulumState{direction * dx, direction * dv});
  };
  Dop853 solver(options_for(tol));
  const auto ys = solver.sample(rhs, 0.0, pack(state0), times);

  PendulumTrajectory out;
  out.times = times;
  out.direction = direction;
  out.integrator_tol = tol;
  const Integrals i0 = integrals(state0);
  for (const auto& y : ys) {
    out.states.push_back(unpack(y));
    const Integrals it = integrals(out.states.back());
    out.diagnostics.push_back({std::abs(it.h - i0.h), std::abs(it.k - i0.k), out.states.back().residual().max_abs()});
  }
  return out;
}

PendulumTrajectory integrate_pendulum(const PendulumState& state0, double t_end, double tol, int n_samples,
                                      cplx direction) {
  return integrate_pendulum_at(state0, sample_times(t_end, n_samples), tol, direction);
}

PendulumState pendulum_flow(const PendulumState& state0, double t, double tol) {
  if (t == 0.0) return state0;
  return integrate_pendulum_at(state0, {0.0, t}, tol).states.back();
}

LaxTrajectory integrate_lax(const MatrixPolynomial& a0, int k, cplx at, double t_end, double tol, int n_samples,
                            cplx time_factor) {
  const int r = a0.dim();
  const int d = a0.degree();
  OdeRhs rhs = [&](double, const RealVector& y, RealVector& dy) {
    dy = pack(lax_vector_field(unpack(y, r, d), k, at, 1e-8) * time_factor);
  };
  Dop853 solver(options_for(tol));
  const auto times = sample_times(t_end, n_samples);
  const auto ys = solver.sample(rhs, 0.0, pack(a0), times);
  LaxTrajectory out;
  out.times = times;
  out.integrator_tol = tol;
  for (const auto& y : ys) out.states.push_back(unpack(y, r, d));
  return out;
}

double isospectral_deviation(const LaxTrajectory& traj) {
  if (traj.states.empty()) return 0.0;
  const auto p0 = char_poly(traj.states.front());
  double m = 0.0;
  for (const auto& a : traj.states) m = std::max(m, char_poly(a).max_coeff_distance(p0));
  return m;
}

double state_distance(const PendulumState& a, const PendulumState& b) {
  return std::max((a.x - b.x).cwiseAbs().maxCoeff(), (a.v - b.v).cwiseAbs().maxCoeff());
}

double commuting_flows_deviation(const PendulumState& state0, double t, double s, double tol) {
  const PendulumState ks_then_ht = pendulum_flow(rotate_about_e3(state0, s), t, tol);
  const PendulumState ht_then_ks = rotate_about_e3(pendulum_flow(state0, t, tol), s);
  return state_distance(ks_then_ht, ht_then_ks);
}

}  // namespace laxjac

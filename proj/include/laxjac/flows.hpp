#pragma once

#include <vector>

#include "laxjac/matpoly.hpp"
#include "laxjac/pendulum.hpp"

namespace laxjac {

struct SampleDiagnostics {
  double energy_drift = 0.0;      // |H(t) - H(0)|
  double momentum_drift = 0.0;    // |K(t) - K(0)|
  double constraint_drift = 0.0;  // max(|<x,x> - 1|, |<x,v>|)
};

struct PendulumTrajectory {
  std::vector<double> times;  // real parameter along the ray t = direction * tau
  cplx direction = 1.0;
  std::vector<PendulumState> states;
  std::vector<SampleDiagnostics> diagnostics;
  double integrator_tol = 0.0;

  double max_energy_drift() const;
  double max_momentum_drift() const;
  double max_constraint_drift() const;
};

struct LaxTrajectory {
  std::vector<double> times;
  std::vector<MatrixPolynomial> states;
  double integrator_tol = 0.0;
};

/// n_samples equally spaced values from 0 to t_end inclusive.
std::vector<double> sample_times(double t_end, int n_samples);

/// Integrates the pendulum from state0 along t = direction * tau, tau from 0 to t_end.
/// The samples are dense-output values; no projection is applied.
PendulumTrajectory integrate_pendulum(const PendulumState& state0, double t_end, double tol, int n_samples,
                                      cplx direction = 1.0);
/// Same at explicit (monotone) sample times.
PendulumTrajectory integrate_pendulum_at(const PendulumState& state0, const std::vector<double>& times,
                                         double tol, cplx direction = 1.0);

/// The time-t map of the pendulum flow.
PendulumState pendulum_flow(const PendulumState& state0, double t, double tol);

/// Integrates dA/dt = time_factor * [A(a)^k, A(x)] / (x - a) coefficientwise.
LaxTrajectory integrate_lax(const MatrixPolynomial& a0, int k, cplx at, double t_end, double tol, int n_samples,
                            cplx time_factor = 1.0);

/// max over samples and coefficients of the drift of char_poly relative to the first sample.
double isospectral_deviation(const LaxTrajectory& traj);

/// Distance between Phi^H_t Phi^K_s (state0) and Phi^K_s Phi^H_t (state0), Phi^K_s = rotation by s.
double commuting_flows_deviation(const PendulumState& state0, double t, double s, double tol);

/// Max-modulus distance between two states.
double state_distance(const PendulumState& a, const PendulumState& b);

}  // namespace laxjac

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "laxjac/curves.hpp"
#include "laxjac/exec.hpp"
#include "laxjac/jacobian.hpp"

namespace laxjac {

/// Real quartic discriminant of lambda^4 + 2k lambda^3 + 2h lambda^2 + 1, with its
/// gradient and Hessian in (h, k).
double pendulum_discriminant(double h, double k);
Eigen::Vector2d pendulum_discriminant_gradient(double h, double k);
Eigen::Matrix2d pendulum_discriminant_hessian(double h, double k);

struct GridSpec {
  double h_min = 0.0, h_max = 1.0;
  double k_min = 0.0, k_max = 1.0;
  int nh = 2, nk = 2;

  double h_at(int i) const { return nh == 1 ? h_min : h_min + (h_max - h_min) * i / (nh - 1); }
  double k_at(int j) const { return nk == 1 ? k_min : k_min + (k_max - k_min) * j / (nk - 1); }
};

using PlanePoint = std::pair<double, double>;  // (h, k)

struct DiscriminantLocus {
  std::vector<std::vector<PlanePoint>> polylines;  // zero contour of the discriminant
  std::vector<PlanePoint> isolated;                // zeros without a sign change around them
};

DiscriminantLocus discriminant_locus(const GridSpec& grid, ExecPolicy policy = ExecPolicy::Parallel);

struct LoopSpec {
  double h0 = 1.0, k0 = 0.0;
  double radius = 0.3;
  int n_steps = 128;
  int orientation = 1;  // +1 counterclockwise in the (h, k) plane

  PlanePoint at(double phase) const;  // phase in [0, 1]
};

/// Checks the loop (and the annulus radius*(1 +- 0.1)) for sign changes / zeros of the
/// discriminant on a fine sampling.
bool loop_avoids_discriminant(const LoopSpec& loop);

struct MonodromyResult {
  Eigen::Matrix2i m;      // transported (omega_a, omega_b) = m * initial
  Eigen::Matrix3i m_ext;  // transported (g1, g2, g3) = m_ext * initial
  double continuation_residual = 0.0;  // distance of the closing coefficients from integers
  double max_step_residual = 0.0;      // largest per-step rounding distance
  int steps_taken = 0;
  ExtendedLattice initial;
};

/// Transports the period lattices along the loop and reads off the integer monodromy.
MonodromyResult continue_periods(const LoopSpec& loop);

/// Integer relations n (rows) with sum n_j g_j in span_R(v_h, v_k), reduced to a basis of
/// the relation lattice, and the corresponding real times (T, Theta).
struct TorusLattice {
  Eigen::Matrix<long, 2, 3> relations;  // rows in the g-basis
  Eigen::Matrix2d times;                // rows (T, Theta): rows(i) = time of relations.row(i)
};

TorusLattice real_torus_lattice(const ExtendedLattice& lattice, const Vec2c& v_h, const Vec2c& v_k,
                                int bound = 64, double rel_tol = 1e-7);

/// Action of m_ext on the relation lattice: new relations = relations * m_ext, expressed in
/// the old relation basis. Throws NonIntegerMonodromy if the relation lattice is not preserved.
Eigen::Matrix2i real_torus_monodromy(const TorusLattice& torus, const Eigen::Matrix3i& m_ext);

struct FrequencyOptions {
  double tol = 1e-12;
  double fit_time = 2.0;
  int fit_samples = 64;
  std::optional<CycleSpec> cycles;  // override the cycle choice (for basis-invariance checks)
};

struct FrequencyResult {
  double omega1 = 0.0;  // 2 pi / T
  double omega2 = 0.0;  // delta_phi / T
  double period = 0.0;  // T, return time of the radial motion
  double delta_phi = 0.0;
  double rotation_number = 0.0;  // delta_phi / (2 pi)
  Vec2c v_h = Vec2c::Zero();
  Vec2c v_k = Vec2c::Zero();
  double fit_residual = 0.0;
  TorusLattice torus;
};

FrequencyResult frequency_map(double h, double k, const FrequencyOptions& opt = {});

struct FrequencyJacobian {
  Eigen::Matrix2d jacobian;  // d(omega1, omega2) / d(h, k)
  double det = 0.0;
  double det_half_step = 0.0;  // the same with half the stencil
  double richardson_change = 0.0;  // |det - det_half_step| / |det_half_step|
};

FrequencyJacobian frequency_jacobian(double h, double k, double step = 1e-3, const FrequencyOptions& opt = {});

/// Direct dynamical oracle: integrate the real pendulum with the azimuth attached and
/// measure the azimuth advance between two consecutive minima of x3.
struct PoincareResult {
  double period = 0.0;
  double delta_phi = 0.0;
  double rotation_number = 0.0;
};

PoincareResult poincare_rotation(double h, double k, double tol = 1e-12);

}  // namespace laxjac

#pragma once

#include <array>
#include <vector>

#include "laxjac/curves.hpp"
#include "laxjac/flows.hpp"

namespace laxjac {

/// A point of C^2 read modulo the extended lattice.
struct ExtendedAbelPoint {
  Vec2c z = Vec2c::Zero();
  ExtendedLattice lattice;
};

struct Reduction {
  Vec2c reduced;
  std::array<long, 3> coeffs{0, 0, 0};
};

/// Real coordinates of z in the frame (g1, g2, g3, n), n a unit normal completing the span.
Eigen::Vector4d lattice_coordinates(const Vec2c& z, const ExtendedLattice& l);

/// Fundamental-cell reduction: coefficients along g1, g2, g3 brought into [0, 1).
Reduction reduce_mod_lattice(const Vec2c& z, const ExtendedLattice& l);
/// Centered reduction: coefficients brought into [-1/2, 1/2).
Reduction reduce_centered(const Vec2c& z, const ExtendedLattice& l);

/// z1 modulo the rank-2 lattice spanned by the first components of g1, g2.
cplx extension_projection(const ExtendedAbelPoint& p);
/// Reduction of a complex number modulo a rank-2 lattice, into the cell [0,1)^2 or centered.
cplx reduce_mod_base(cplx z, std::pair<cplx, cplx> basis, bool centered = false);

/// (z1, z2) -> (z1, z2 + g).
ExtendedAbelPoint group_action_shift(const ExtendedAbelPoint& p, cplx g);

/// Generators (2 pi i, 0), (tau1, tau2), (0, 2 pi i). Throws DegenerateTau.
ExtendedLattice model_lattice(cplx tau1, cplx tau2);

/// Sum of the extended Abel maps of the two eigenvector-divisor points.
Vec2c divisor_abel_sum(const QuarticCurve& curve, const PendulumState& s, const DivisorPoint& base,
                       bool use_lower_entry = false);

struct AbelFit {
  Vec2c velocity = Vec2c::Zero();
  Vec2c intercept = Vec2c::Zero();  // of the first segment
  double residual = 0.0;            // max-norm residual over the four real coordinates
  int segments = 0;
  std::vector<double> theta_crossings;  // times of skipped degenerate samples
  double max_jump = 0.0;                // largest centered lattice coefficient between neighbours
  std::vector<Vec2c> unwrapped;         // z(t) after unwrapping (NaN for skipped samples)
};

/// Fits z(t) = z(0) + V t to the unwrapped divisor Abel sums along a sampled trajectory.
AbelFit abel_flow_fit(const std::vector<double>& times, const std::vector<PendulumState>& states,
                      const QuarticCurve& curve, const ExtendedLattice& lattice, const DivisorPoint& base,
                      bool use_lower_entry = false);
AbelFit abel_flow_fit(const PendulumTrajectory& traj, const QuarticCurve& curve);

/// Integrates the X_H flow and fits; the sampling is doubled while unwrapping jumps exceed 0.4 cell.
AbelFit fit_hamiltonian_flow(const PendulumState& s0, double t_end, int n_samples, double tol,
                             const QuarticCurve& curve, const ExtendedLattice& lattice, const DivisorPoint& base);
/// Same for the rotation flow theta -> rotate_about_e3(s0, theta).
AbelFit fit_rotation_flow(const PendulumState& s0, double theta_end, int n_samples, const QuarticCurve& curve,
                          const ExtendedLattice& lattice, const DivisorPoint& base);

struct Equivariance {
  double dz1_residual = 0.0;  // |z1(R s) - z1(s)| modulo Lambda
  cplx dz2;                   // fiber shift, imaginary part in (-pi, pi]
};

Equivariance symmetry_equivariance(const PendulumState& s, double theta, const QuarticCurve& curve,
                                   const ExtendedLattice& lattice, const DivisorPoint& base,
                                   bool use_lower_entry = false);

/// Distance of c to 2 pi i Z (for comparing fiber shifts).
double distance_mod_2pii(cplx c);

}  // namespace laxjac

#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "laxjac/pendulum.hpp"
#include "laxjac/polynomial.hpp"
#include "laxjac/types.hpp"

namespace laxjac {

/// mu^2 = f(lambda) with deg f = 4. The two points at infinity are labelled by the
/// branches mu ~ +sqrt(lead) lambda^2 (infinity+) and mu ~ -sqrt(lead) lambda^2 (infinity-).
struct QuarticCurve {
  Polynomial f;
  cplx lead;
  cplx sqrt_lead;
  std::array<cplx, 4> branch_points;
  cplx disc;
  bool singular = false;

  int genus() const { return singular ? 0 : 1; }
  static constexpr int points_at_infinity = 2;
  /// Arithmetic genus of the curve singularized along infinity+ + infinity-.
  int arithmetic_genus() const { return genus() + points_at_infinity - 1; }
  double min_separation() const;
  /// Distance from lambda to the nearest branch point.
  double branch_distance(cplx lambda) const;
};

QuarticCurve curve_from_poly(const Polynomial& f);
QuarticCurve curve_from_hk(cplx h, cplx k);

/// Branch-point labels (p, q, r, s) as indices into branch_points. The a-cycle encircles
/// the cut [p, q] counterclockwise; the b-cycle runs from q to r on the infinity+ sheet
/// and back on the other sheet.
struct CycleSpec {
  std::array<int, 4> order{0, 1, 2, 3};
  bool lexicographic = true;
  double clearance = 0.0;  // min distance between the cycle geometry and foreign branch points / minsep
};

/// Lexicographic (Re, Im) order of the branch points.
CycleSpec lexicographic_cycles(const QuarticCurve& curve);
/// The given labelling with its clearance filled in.
CycleSpec cycles_with_order(const QuarticCurve& curve, const std::array<int, 4>& order);
/// The lexicographic order when its geometry is clear of the other branch points, otherwise
/// the pairing with the largest clearance. Throws ContourTooClose if nothing is admissible.
CycleSpec choose_cycles(const QuarticCurve& curve);

/// mu on the infinity+ sheet for the given cut system: cuts along [p, q] and [r, s].
cplx mu_plus(const QuarticCurve& curve, const CycleSpec& cycles, cplx lambda);

struct PeriodData {
  cplx omega_a, omega_b;  // periods of dlambda/mu
  cplx eta_a, eta_b;      // periods of the normalized third-kind differential
  cplx residue_plus;      // residue of eta at infinity+ (should be -1)
  cplx residue_minus;     // residue at infinity- (should be +1)
  cplx residue_gen = kTwoPiI;
  cplx eta_scale;         // eta = eta_scale * lambda dlambda / mu
  CycleSpec cycles;
};

/// (omega_a, omega_b) by composite Gauss-Legendre quadrature along an ellipse around [p, q]
/// and along the segment [q, r].
std::pair<cplx, cplx> periods_first_kind(const QuarticCurve& curve, const CycleSpec& cycles);
/// (eta_a, eta_b, residue at infinity+, residue at infinity-); throws NormalizationFailure.
struct ThirdKindPeriods {
  cplx eta_a, eta_b, residue_plus, residue_minus, scale;
};
ThirdKindPeriods periods_third_kind(const QuarticCurve& curve, const CycleSpec& cycles);

/// Both kinds with the orientation normalized so that Im(omega_b / omega_a) > 0.
PeriodData compute_periods(const QuarticCurve& curve, const CycleSpec& cycles);
PeriodData compute_periods(const QuarticCurve& curve);

/// Independent oracle: complete periods from arithmetic-geometric means. The pair spans
/// the same lattice as the contour periods for the same cycle specification.
std::pair<cplx, cplx> periods_agm(const QuarticCurve& curve, const CycleSpec& cycles);
std::pair<cplx, cplx> periods_agm(const QuarticCurve& curve);
/// Optimal-branch AGM of two complex numbers.
cplx agm(cplx a, cplx b);

/// Whether two rank-2 lattices in C coincide: integer change of basis with |det| = 1.
struct LatticeComparison {
  bool equal = false;
  Eigen::Matrix2i change;  // second basis = change * first basis
  double residual = 0.0;   // relative
};
LatticeComparison lattices_equal(std::pair<cplx, cplx> first, std::pair<cplx, cplx> second, double tol = 1e-9);

/// Integral of dlambda/mu from infinity- to infinity+ along a ray from a branch point.
cplx infinity_integral(const QuarticCurve& curve, const CycleSpec& cycles);
/// |omega_a eta_b - omega_b eta_a + 2 pi i * int_{inf-}^{inf+} dlambda/mu| modulo 2 pi i Lambda.
double reciprocity_residual(const QuarticCurve& curve, const PeriodData& p);

struct ExtendedLattice {
  std::array<Vec2c, 3> g;  // g1 = (omega_a, eta_a), g2 = (omega_b, eta_b), g3 = (0, 2 pi i)
  double min_singular = 0.0;

  std::pair<cplx, cplx> base_lattice() const { return {g[0](0), g[1](0)}; }
  /// Generators as columns of a real 4x3 matrix.
  Eigen::Matrix<double, 4, 3> real_matrix() const;
  int rank(double tol = 1e-8) const;
};

ExtendedLattice make_lattice(const Vec2c& g1, const Vec2c& g2, const Vec2c& g3);
ExtendedLattice extended_lattice(const PeriodData& p);
ExtendedLattice extended_lattice(const QuarticCurve& curve);

struct DivisorPoint {
  cplx lambda;
  cplx mu;
};
double on_curve_residual(const QuarticCurve& curve, const DivisorPoint& p);

/// (lambda, mu) = (0, sqrt f(0)) when 0 is clear of branch points, otherwise a nearby clear point.
DivisorPoint default_base_point(const QuarticCurve& curve);

/// (int dlambda/mu, int eta) from base to p along the polyline base -> hint... -> p, with
/// continuous tracking of mu. A sheet mismatch at the end is repaired with a loop around the
/// nearest branch point. Throws PathThroughBranchPoint.
Vec2c abel_map_extended(const QuarticCurve& curve, const DivisorPoint& p, const DivisorPoint& base,
                        const std::vector<cplx>& path_hint = {});

/// Zeros of the (1,2) entry of A(lambda) (or of the (2,1) entry) with the matching eigenvalue.
std::array<DivisorPoint, 2> eigenvector_divisor(const LaxVariables& lv, bool use_lower_entry = false);

}  // namespace laxjac

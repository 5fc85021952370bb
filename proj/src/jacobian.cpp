#include "laxjac/jacobian.hpp"

#include <cmath>
#include <limits>

#include "laxjac/error.hpp"
#include "laxjac/kernels.hpp"

namespace laxjac {

Eigen::Vector4d lattice_coordinates(const Vec2c& z, const ExtendedLattice& l) {
  if (!(l.min_singular > 1e-8)) throw Error(ErrorKind::RankDeficientLattice, "lattice rank is below 3");
  const Eigen::Matrix<double, 4, 3> g = l.real_matrix();
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 3>> svd(g, Eigen::ComputeFullU);
  Eigen::Matrix4d frame;
  frame.leftCols<3>() = g;
  frame.col(3) = svd.matrixU().col(3);
  return frame.partialPivLu().solve(to_real4(z));
}

namespace {

Reduction reduce_with(const Vec2c& z, const ExtendedLattice& l, bool centered) {
  const Eigen::Vector4d c = lattice_coordinates(z, l);
  Reduction out;
  out.reduced = z;
  for (int i = 0; i < 3; ++i) {
    double n;
    if (centered) {
      n = std::floor(c(i) + 0.5);
    } else {
      const double r = std::round(c(i));
      n = std::abs(c(i) - r) < 1e-9 ? r : std::floor(c(i));
    }
    out.coeffs[i] = long(n);
    out.reduced -= n * l.g[i];
  }
  return out;
}

}  // namespace

Reduction reduce_mod_lattice(const Vec2c& z, const ExtendedLattice& l) { return reduce_with(z, l, false); }

Reduction reduce_centered(const Vec2c& z, const ExtendedLattice& l) { return reduce_with(z, l, true); }

cplx reduce_mod_base(cplx z, std::pair<cplx, cplx> basis, bool centered) {
  Eigen::Matrix2d m;
  m << basis.first.real(), basis.second.real(), basis.first.imag(), basis.second.imag();
  if (std::abs(m.determinant()) <= 1e-300) throw Error(ErrorKind::RankDeficientLattice, "degenerate base lattice");
  const Eigen::Vector2d c = m.inverse() * Eigen::Vector2d(z.real(), z.imag());
  cplx out = z;
  for (int i = 0; i < 2; ++i) {
    double n;
    if (centered) {
      n = std::floor(c(i) + 0.5);
    } else {
      const double r = std::round(c(i));
      n = std::abs(c(i) - r) < 1e-9 ? r : std::floor(c(i));
    }
    out -= n * (i == 0 ? basis.first : basis.second);
  }
  return out;
}

cplx extension_projection(const ExtendedAbelPoint& p) { return reduce_mod_base(p.z(0), p.lattice.base_lattice()); }

ExtendedAbelPoint group_action_shift(const ExtendedAbelPoint& p, cplx g) {
  ExtendedAbelPoint out = p;
  out.z(1) += g;
  return out;
}

ExtendedLattice model_lattice(cplx tau1, cplx tau2) {
  if (std::abs(tau1.imag()) <= 1e-12)
    throw Error(ErrorKind::DegenerateTau, "tau1 must have a nonzero imaginary part");
  ExtendedLattice l = make_lattice(Vec2c(kTwoPiI, 0.0), Vec2c(tau1, tau2), Vec2c(0.0, kTwoPiI));
  if (l.rank() != 3) throw Error(ErrorKind::DegenerateTau, "model lattice has rank below 3");
  return l;
}

Vec2c divisor_abel_sum(const QuarticCurve& curve, const PendulumState& s, const DivisorPoint& base,
                       bool use_lower_entry) {
  const auto pts = eigenvector_divisor(lax_vars(s), use_lower_entry);
  return abel_map_extended(curve, pts[0], base) + abel_map_extended(curve, pts[1], base);
}

AbelFit abel_flow_fit(const std::vector<double>& times, const std::vector<PendulumState>& states,
                      const QuarticCurve& curve, const ExtendedLattice& lattice, const DivisorPoint& base,
                      bool use_lower_entry) {
  const std::size_t n = times.size();
  if (states.size() != n || n < 2) throw Error(ErrorKind::InvalidArgument, "need matching times and states");
  const auto samples = abel_sums(curve, states, base, use_lower_entry, ExecPolicy::Parallel);
  std::vector<Vec2c> raw(n);
  std::vector<bool> good(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    if (samples[i].ok) {
      raw[i] = samples[i].z;
      continue;
    }
    if (samples[i].error != ErrorKind::DegenerateDivisor && samples[i].error != ErrorKind::PathThroughBranchPoint)
      throw Error(samples[i].error, samples[i].message);
    good[i] = false;
  }
  AbelFit fit;
  std::vector<bool> keep = good;
  for (std::size_t i = 0; i < n; ++i)
    if (!good[i]) {
      fit.theta_crossings.push_back(times[i]);
      for (std::size_t j = (i >= 2 ? i - 2 : 0); j <= std::min(n - 1, i + 2); ++j) keep[j] = false;
    }

  // unwrap each run of kept samples
  const Vec2c nan = Vec2c::Constant(cplx(std::numeric_limits<double>::quiet_NaN(), 0.0));
  fit.unwrapped.assign(n, nan);
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < n;) {
    if (!keep[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    fit.unwrapped[i] = raw[i];
    while (j + 1 < n && keep[j + 1]) {
      const Vec2c d = raw[j + 1] - fit.unwrapped[j];
      const Reduction red = reduce_centered(d, lattice);
      const Eigen::Vector4d frac = lattice_coordinates(red.reduced, lattice);
      fit.max_jump = std::max(fit.max_jump, frac.head<3>().cwiseAbs().maxCoeff());
      fit.unwrapped[j + 1] = fit.unwrapped[j] + red.reduced;
      ++j;
    }
    runs.emplace_back(i, j + 1);
    i = j + 1;
  }
  if (runs.empty()) throw Error(ErrorKind::DivisorDegeneracy, "every sample has a degenerate divisor");
  fit.segments = int(runs.size());

  // common slope, one intercept per run, jointly in the four real coordinates
  Eigen::Vector4d num = Eigen::Vector4d::Zero();
  double den = 0.0;
  std::vector<double> tbar(runs.size());
  std::vector<Eigen::Vector4d> ybar(runs.size());
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto [a, b] = runs[r];
    double ts = 0.0;
    Eigen::Vector4d ys = Eigen::Vector4d::Zero();
    for (std::size_t i = a; i < b; ++i) {
      ts += times[i];
      ys += to_real4(fit.unwrapped[i]);
    }
    tbar[r] = ts / double(b - a);
    ybar[r] = ys / double(b - a);
    for (std::size_t i = a; i < b; ++i) {
      num += (times[i] - tbar[r]) * (to_real4(fit.unwrapped[i]) - ybar[r]);
      den += (times[i] - tbar[r]) * (times[i] - tbar[r]);
    }
  }
  const Eigen::Vector4d v = den > 0.0 ? Eigen::Vector4d(num / den) : Eigen::Vector4d::Zero();
  fit.velocity = from_real4(v);
  fit.intercept = from_real4(ybar[0] - tbar[0] * v);
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto [a, b] = runs[r];
    for (std::size_t i = a; i < b; ++i) {
      const Eigen::Vector4d res = to_real4(fit.unwrapped[i]) - ybar[r] - (times[i] - tbar[r]) * v;
      fit.residual = std::max(fit.residual, res.cwiseAbs().maxCoeff());
    }
    // each long run on its own must give the same slope
    if (runs.size() > 1 && b - a >= 3) {
      Eigen::Vector4d rn = Eigen::Vector4d::Zero();
      double rd = 0.0;
      for (std::size_t i = a; i < b; ++i) {
        rn += (times[i] - tbar[r]) * (to_real4(fit.unwrapped[i]) - ybar[r]);
        rd += (times[i] - tbar[r]) * (times[i] - tbar[r]);
      }
      if ((rn / rd - v).cwiseAbs().maxCoeff() > 1e-6 * (1.0 + v.norm()))
        throw Error(ErrorKind::DivisorDegeneracy, "segments on both sides of a degenerate divisor disagree");
    }
  }
  return fit;
}

AbelFit abel_flow_fit(const PendulumTrajectory& traj, const QuarticCurve& curve) {
  return abel_flow_fit(traj.times, traj.states, curve, extended_lattice(curve), default_base_point(curve));
}

AbelFit fit_hamiltonian_flow(const PendulumState& s0, double t_end, int n_samples, double tol,
                             const QuarticCurve& curve, const ExtendedLattice& lattice, const DivisorPoint& base) {
  for (int attempt = 0;; ++attempt) {
    const auto traj = integrate_pendulum(s0, t_end, tol, n_samples);
    AbelFit fit = abel_flow_fit(traj.times, traj.states, curve, lattice, base);
    if (fit.max_jump <= 0.4 || attempt == 4) return fit;
    n_samples *= 2;
  }
}

AbelFit fit_rotation_flow(const PendulumState& s0, double theta_end, int n_samples, const QuarticCurve& curve,
                          const ExtendedLattice& lattice, const DivisorPoint& base) {
  for (int attempt = 0;; ++attempt) {
    const auto times = sample_times(theta_end, n_samples);
    std::vector<PendulumState> states;
    states.reserve(times.size());
    for (double t : times) states.push_back(rotate_about_e3(s0, t));
    AbelFit fit = abel_flow_fit(times, states, curve, lattice, base);
    if (fit.max_jump <= 0.4 || attempt == 4) return fit;
    n_samples *= 2;
  }
}

double distance_mod_2pii(cplx c) { return std::abs(c - kTwoPiI * std::round(c.imag() / (2.0 * kPi))); }

Equivariance symmetry_equivariance(const PendulumState& s, double theta, const QuarticCurve& curve,
                                   const ExtendedLattice& lattice, const DivisorPoint& base, bool use_lower_entry) {
  const Vec2c z0 = divisor_abel_sum(curve, s, base, use_lower_entry);
  const Vec2c z1 = divisor_abel_sum(curve, rotate_about_e3(s, theta), base, use_lower_entry);
  const Vec2c d = z1 - z0;
  const auto [wa, wb] = lattice.base_lattice();
  Eigen::Matrix2d m;
  m << wa.real(), wb.real(), wa.imag(), wb.imag();
  const Eigen::Vector2d c = m.inverse() * Eigen::Vector2d(d(0).real(), d(0).imag());
  const double na = std::round(c(0)), nb = std::round(c(1));
  const Vec2c shifted = d - na * lattice.g[0] - nb * lattice.g[1];
  Equivariance out;
  out.dz1_residual = std::abs(shifted(0));
  out.dz2 = shifted(1) - kTwoPiI * std::round(shifted(1).imag() / (2.0 * kPi));
  return out;
}

}  // namespace laxjac

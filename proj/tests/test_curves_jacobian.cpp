#include <doctest.h>

#include <cmath>
#include <random>

#include "laxjac/curves.hpp"
#include "laxjac/error.hpp"
#include "laxjac/flows.hpp"
#include "laxjac/jacobian.hpp"

using namespace laxjac;

namespace {

const PendulumState kS0{Vec3c(0.6, 0.0, 0.8), Vec3c(0.0, 1.0, 0.0)};

bool is_lattice_vector(cplx z, std::pair<cplx, cplx> b, double tol) {
  Eigen::Matrix2d m;
  m << b.first.real(), b.second.real(), b.first.imag(), b.second.imag();
  const Eigen::Vector2d c = m.inverse() * Eigen::Vector2d(z.real(), z.imag());
  return (c - c.array().round().matrix()).cwiseAbs().maxCoeff() < tol;
}

}  // namespace

TEST_CASE("smooth and singular pendulum curves") {
  const QuarticCurve c = curve_from_hk(1.3, 0.6);
  CHECK_FALSE(c.singular);
  CHECK(c.genus() == 1);
  CHECK(c.arithmetic_genus() == 2);
  const QuarticCurve s = curve_from_hk(1.0, 0.0);
  CHECK(s.singular);
  CHECK(std::abs(s.disc) == 0.0);
  CHECK_THROWS_AS(compute_periods(s), Error);
}

TEST_CASE("lemniscatic curve has the lemniscate period") {
  // mu^2 = lambda^4 - 1: the cycle around [-1, 1] has period 2i * varpi, varpi = sqrt2 K(1/sqrt2)
  const QuarticCurve c = curve_from_poly(Polynomial({-1.0, 0.0, 0.0, 0.0, 1.0}));
  const PeriodData p = compute_periods(c);
  const double varpi = std::sqrt(2.0) * std::comp_ellint_1(1.0 / std::sqrt(2.0));
  CHECK(varpi == doctest::Approx(2.62205755429212).epsilon(1e-13));
  CHECK(is_lattice_vector(cplx(0.0, 2.0 * varpi), {p.omega_a, p.omega_b}, 1e-12));
  CHECK(is_lattice_vector(cplx(2.0 * varpi, 0.0), {p.omega_a, p.omega_b}, 1e-12));
}

TEST_CASE("contour periods span the AGM lattice") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> n01;
  int tested = 0;
  while (tested < 20) {
    std::vector<cplx> co(5);
    for (auto& x : co) x = cplx(n01(rng), n01(rng));
    const QuarticCurve c = curve_from_poly(Polynomial(co));
    PeriodData p;
    try {
      p = compute_periods(c);
    } catch (const Error&) {
      continue;
    }
    const auto cmp = lattices_equal({p.omega_a, p.omega_b}, periods_agm(c, p.cycles));
    CHECK(cmp.equal);
    CHECK(std::abs(cmp.change.cast<double>().determinant()) == 1.0);
    CHECK(p.omega_b.imag() * p.omega_a.real() - p.omega_b.real() * p.omega_a.imag() > 0.0);
    CHECK(std::abs(p.residue_plus + 1.0) < 1e-10);
    CHECK(std::abs(p.residue_minus - 1.0) < 1e-10);
    CHECK(reciprocity_residual(c, p) < 1e-9);
    ++tested;
  }
}

TEST_CASE("the lattice does not depend on the cycle labelling") {
  const QuarticCurve c = curve_from_hk(1.3, 0.6);
  const PeriodData ref = compute_periods(c);
  std::array<int, 4> o{0, 1, 2, 3};
  int used = 0;
  do {
    const CycleSpec cy = cycles_with_order(c, o);
    if (cy.clearance < 0.1) continue;
    const PeriodData p = compute_periods(c, cy);
    CHECK(lattices_equal({ref.omega_a, ref.omega_b}, {p.omega_a, p.omega_b}).equal);
    ++used;
  } while (std::next_permutation(o.begin(), o.end()));
  CHECK(used >= 2);
}

TEST_CASE("k -> -k leaves the lattice unchanged") {
  const PeriodData a = compute_periods(curve_from_hk(1.3, 0.6));
  const PeriodData b = compute_periods(curve_from_hk(1.3, -0.6));
  CHECK(lattices_equal({a.omega_a, a.omega_b}, {b.omega_a, b.omega_b}).equal);
}

TEST_CASE("extended lattice generators") {
  const ExtendedLattice l = extended_lattice(curve_from_hk(1.3, 0.6));
  CHECK(l.rank() == 3);
  CHECK(l.g[2](0) == cplx(0.0));
  CHECK(l.g[2](1) == kTwoPiI);
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector4d c = lattice_coordinates(l.g[i], l);
    for (int j = 0; j < 4; ++j) CHECK(c(j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
  }
}

TEST_CASE("eigenvector divisor lies on the curve") {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 10; ++i) {
    const PendulumState s = i ? random_real_state(rng) : kS0;
    const Integrals in = integrals(s);
    const QuarticCurve c = curve_from_hk(in.h, in.k);
    for (bool lower : {false, true})
      for (const auto& p : eigenvector_divisor(lax_vars(s), lower)) CHECK(on_curve_residual(c, p) < 1e-10);
  }
}

TEST_CASE("abel map: derivative is (1/mu, eta) and paths differ by lattice vectors") {
  const QuarticCurve c = curve_from_hk(1.3, 0.6);
  const PeriodData pd = compute_periods(c);
  const ExtendedLattice l = extended_lattice(pd);
  const DivisorPoint base = default_base_point(c);
  const cplx lam(0.35, 0.4);
  const cplx mu = std::sqrt(c.f(lam));
  const DivisorPoint p{lam, mu};
  const Vec2c z = abel_map_extended(c, p, base);

  // central difference along lambda on the same sheet
  const double h = 1e-5;
  auto at = [&](cplx l2) {
    cplx m2 = std::sqrt(c.f(l2));
    if (std::abs(m2 - mu) > std::abs(m2 + mu)) m2 = -m2;
    return abel_map_extended(c, {l2, m2}, base);
  };
  const Vec2c d = (at(lam + h) - at(lam - h)) / (2.0 * h);
  CHECK(std::abs(d(0) - 1.0 / mu) < 1e-7);
  CHECK(std::abs(d(1) - pd.eta_scale * lam / mu) < 1e-7);

  // a detour around a branch point changes the value by a lattice element only
  const cplx bp = c.branch_points[0];
  const Vec2c z2 = abel_map_extended(c, p, base, {bp + cplx(0.3, 0.0), bp + cplx(0.0, 0.3), bp - cplx(0.3, 0.0)});
  const Eigen::Vector4d co = lattice_coordinates(z2 - z, l);
  CHECK((co.head<3>() - co.head<3>().array().round().matrix()).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(std::abs(co(3)) < 1e-9);
}

TEST_CASE("reductions land in the fundamental cell") {
  const ExtendedLattice l = extended_lattice(curve_from_hk(1.3, 0.6));
  std::mt19937_64 rng(35);
  std::normal_distribution<double> n01;
  for (int i = 0; i < 20; ++i) {
    const Vec2c z = 10.0 * Vec2c(cplx(n01(rng), n01(rng)), cplx(n01(rng), n01(rng)));
    const Reduction r = reduce_mod_lattice(z, l);
    const Eigen::Vector4d c = lattice_coordinates(r.reduced, l);
    for (int j = 0; j < 3; ++j) {
      CHECK(c(j) >= -1e-9);
      CHECK(c(j) < 1.0);
    }
    Vec2c back = r.reduced;
    for (int j = 0; j < 3; ++j) back += double(r.coeffs[j]) * l.g[j];
    CHECK((back - z).cwiseAbs().maxCoeff() < 1e-12 * (1.0 + z.norm()));
    const Eigen::Vector4d cc = lattice_coordinates(reduce_centered(z, l).reduced, l);
    CHECK(cc.head<3>().cwiseAbs().maxCoeff() <= 0.5 + 1e-12);
  }
}

TEST_CASE("model lattice and its two projections") {
  const cplx t1(0.3, 1.1), t2(0.7, -0.2);
  const ExtendedLattice m = model_lattice(t1, t2);
  CHECK(m.rank() == 3);
  // the projection image lattice is 2 pi i Z + tau1 Z
  CHECK(std::abs(extension_projection({Vec2c(t1, t2), m})) < 1e-14);
  CHECK(std::abs(extension_projection({Vec2c(kTwoPiI, 0.0), m})) < 1e-14);
  const Vec2c z(cplx(0.2, 0.9), cplx(1.5, -0.3));
  const cplx p0 = extension_projection({z, m});
  CHECK(std::abs(extension_projection({z + m.g[2], m}) - p0) < 1e-14);
  CHECK(std::abs(extension_projection(group_action_shift({z, m}, cplx(0.4, 7.0))) - p0) < 1e-12);
  // swapped roles: the second structure projects onto 2 pi i Z + tau2 Z
  const ExtendedLattice s = model_lattice(t2, t1);
  CHECK(std::abs(extension_projection({Vec2c(t2, t1), s})) < 1e-14);
  CHECK(std::abs(reduce_mod_base(t1, s.base_lattice(), true)) > 0.1);
  CHECK_THROWS_AS(model_lattice(cplx(0.5, 0.0), t2), Error);
}

TEST_CASE("abel sums linearize the flows") {
  const QuarticCurve c = curve_from_hk(1.3, 0.6);
  const ExtendedLattice l = extended_lattice(c);
  const DivisorPoint base = default_base_point(c);
  const AbelFit fh = fit_hamiltonian_flow(kS0, 5.0, 100, 1e-12, c, l, base);
  CHECK(fh.residual < 1e-6);
  const AbelFit fk = fit_rotation_flow(kS0, 2.0, 64, c, l, base);
  CHECK(fk.residual < 1e-6);
  CHECK(std::abs(fk.velocity(0)) < 1e-7);
  // the upper and lower entries give divisors that move with the same velocity
  const auto traj = integrate_pendulum(kS0, 5.0, 1e-12, 100);
  const AbelFit lower = abel_flow_fit(traj.times, traj.states, c, l, base, true);
  CHECK((lower.velocity - fh.velocity).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("rotation acts on the fiber only") {
  const QuarticCurve c = curve_from_hk(1.3, 0.6);
  const ExtendedLattice l = extended_lattice(c);
  const DivisorPoint base = default_base_point(c);
  const Equivariance e1 = symmetry_equivariance(kS0, 0.3, c, l, base);
  for (double th : {0.3, 0.7, 1.1}) {
    const Equivariance e = symmetry_equivariance(kS0, th, c, l, base);
    CHECK(e.dz1_residual < 1e-6);
    CHECK(distance_mod_2pii(e.dz2 - e1.dz2 * (th / 0.3)) < 1e-6);
  }
}

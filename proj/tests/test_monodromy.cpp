#include <doctest.h>

#include <cmath>

#include "laxjac/error.hpp"
#include "laxjac/monodromy.hpp"

using namespace laxjac;

TEST_CASE("discriminant derivatives match finite differences") {
  const double e = 1e-6;
  for (auto [h, k] : {std::pair{1.3, 0.6}, {0.2, -0.9}, {2.1, 1.4}}) {
    const Eigen::Vector2d g = pendulum_discriminant_gradient(h, k);
    CHECK(g(0) == doctest::Approx((pendulum_discriminant(h + e, k) - pendulum_discriminant(h - e, k)) / (2 * e)).epsilon(1e-7));
    CHECK(g(1) == doctest::Approx((pendulum_discriminant(h, k + e) - pendulum_discriminant(h, k - e)) / (2 * e)).epsilon(1e-7));
    const Eigen::Matrix2d hs = pendulum_discriminant_hessian(h, k);
    const Eigen::Vector2d gh = (pendulum_discriminant_gradient(h + e, k) - pendulum_discriminant_gradient(h - e, k)) / (2 * e);
    const Eigen::Vector2d gk = (pendulum_discriminant_gradient(h, k + e) - pendulum_discriminant_gradient(h, k - e)) / (2 * e);
    CHECK((hs.col(0) - gh).cwiseAbs().maxCoeff() < 1e-5 * (1.0 + hs.norm()));
    CHECK((hs.col(1) - gk).cwiseAbs().maxCoeff() < 1e-5 * (1.0 + hs.norm()));
  }
}

TEST_CASE("discriminant locus") {
  CHECK(pendulum_discriminant(1.0, 0.0) == 0.0);
  CHECK(std::abs(pendulum_discriminant(1.3, 0.6)) > 1.0);
  const GridSpec g{-1.5, 3.0, -2.0, 2.0, 91, 81};
  const DiscriminantLocus loc = discriminant_locus(g);
  bool found = false;
  for (const auto& [h, k] : loc.isolated) found = found || (std::abs(h - 1.0) < 1e-8 && std::abs(k) < 1e-8);
  CHECK(found);
  CHECK_FALSE(loc.polylines.empty());
  for (const auto& line : loc.polylines)
    for (const auto& [h, k] : line) {
      // on the contour, and its mirror image under k -> -k is on it too
      CHECK(std::abs(pendulum_discriminant(h, k)) < 0.05 * (1.0 + pendulum_discriminant_gradient(h, k).norm()));
      CHECK(pendulum_discriminant(h, -k) == doctest::Approx(pendulum_discriminant(h, k)));
    }
  // the serial reference gives the same locus
  const DiscriminantLocus ser = discriminant_locus(g, ExecPolicy::Serial);
  CHECK(ser.polylines == loc.polylines);
  CHECK(ser.isolated == loc.isolated);
}

TEST_CASE("loop validation") {
  LoopSpec bad;
  bad.n_steps = 16;
  CHECK_THROWS_AS(continue_periods(bad), Error);
  LoopSpec through;
  through.h0 = 1.3;  // passes through (1, 0)
  CHECK_FALSE(loop_avoids_discriminant(through));
  CHECK_THROWS_AS(continue_periods(through), Error);
  LoopSpec closed;
  const auto a = closed.at(0.0), b = closed.at(1.0);
  CHECK(a == b);
}

TEST_CASE("a loop around nothing has trivial monodromy") {
  LoopSpec l;
  l.h0 = 2.0;
  l.k0 = 0.3;
  l.radius = 0.2;
  const MonodromyResult m = continue_periods(l);
  CHECK(m.m == Eigen::Matrix2i::Identity());
  CHECK(m.m_ext == Eigen::Matrix3i::Identity());
  CHECK(m.continuation_residual < 1e-6);
}

TEST_CASE("loop around (1, 0)") {
  LoopSpec l;
  const MonodromyResult m = continue_periods(l);
  CHECK(m.continuation_residual < 1e-6);
  CHECK(m.m.cast<double>().determinant() == 1.0);
  CHECK(m.m_ext.cast<double>().determinant() == 1.0);
  // g3 is fixed and the z1 block is M
  CHECK(m.m_ext.row(2) == Eigen::RowVector3i(0, 0, 1));
  CHECK(m.m_ext.topLeftCorner<2, 2>() == m.m);
  const Eigen::Matrix3i n = m.m_ext - Eigen::Matrix3i::Identity();
  CHECK((n * n).isZero());
  CHECK(m.m_ext != Eigen::Matrix3i::Identity());

  SUBCASE("stable under refinement and radius change") {
    LoopSpec fine = l;
    fine.n_steps = 256;
    LoopSpec small = l;
    small.radius = 0.2;
    CHECK(continue_periods(fine).m_ext == m.m_ext);
    CHECK(continue_periods(small).m_ext == m.m_ext);
  }
  SUBCASE("reversed orientation inverts") {
    LoopSpec rev = l;
    rev.orientation = -1;
    const MonodromyResult r = continue_periods(rev);
    CHECK(r.m_ext * m.m_ext == Eigen::Matrix3i::Identity());
    CHECK(r.m * m.m == Eigen::Matrix2i::Identity());
  }
  SUBCASE("real-torus monodromy is a nontrivial shear") {
    const auto [h, k] = l.at(0.0);
    const FrequencyResult f = frequency_map(h, k);
    const Eigen::Matrix2i mr = real_torus_monodromy(f.torus, m.m_ext);
    CHECK(mr.cast<double>().determinant() == 1.0);
    CHECK(mr.trace() == 2);
    CHECK(mr != Eigen::Matrix2i::Identity());
    const Eigen::Matrix2i nr = mr - Eigen::Matrix2i::Identity();
    CHECK((nr * nr).isZero());
  }
}

TEST_CASE("frequency map against the Poincare section") {
  const FrequencyResult f = frequency_map(1.3, 0.6);
  const PoincareResult p = poincare_rotation(1.3, 0.6);
  CHECK(f.period == doctest::Approx(p.period).epsilon(1e-8));
  CHECK(std::abs(f.rotation_number - p.rotation_number) < 1e-4);
  CHECK(f.omega1 == doctest::Approx(2.0 * kPi / f.period));
  CHECK(f.fit_residual < 1e-6);
  // a second point, away from the first
  const FrequencyResult g = frequency_map(0.2, -0.3);
  const PoincareResult q = poincare_rotation(0.2, -0.3);
  CHECK(std::abs(g.rotation_number - q.rotation_number) < 1e-4);
}

TEST_CASE("reflection k -> -k flips the angular frequency") {
  const FrequencyResult a = frequency_map(1.3, 0.6), b = frequency_map(1.3, -0.6);
  CHECK(b.omega1 == doctest::Approx(a.omega1).epsilon(1e-9));
  CHECK(b.omega2 == doctest::Approx(-a.omega2).epsilon(1e-9));
}

TEST_CASE("frequencies do not depend on the cycle labelling") {
  const FrequencyResult ref = frequency_map(1.3, 0.6);
  const QuarticCurve c = curve_from_hk(1.3, 0.6);
  std::array<int, 4> o{0, 1, 2, 3};
  int used = 0;
  do {
    const CycleSpec cy = cycles_with_order(c, o);
    if (cy.clearance < 0.1) continue;
    FrequencyOptions opt;
    opt.cycles = cy;
    const FrequencyResult f = frequency_map(1.3, 0.6, opt);
    CHECK(std::abs(f.omega1 - ref.omega1) < 1e-6);
    CHECK(std::abs(f.omega2 - ref.omega2) < 1e-6);
    ++used;
  } while (std::next_permutation(o.begin(), o.end()) && used < 4);
  CHECK(used >= 2);
}

TEST_CASE("frequencies vary continuously along a short path") {
  double prev1 = 0.0, prev2 = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const FrequencyResult f = frequency_map(1.2 + 0.02 * i, 0.5 + 0.01 * i);
    if (i) {
      CHECK(std::abs(f.omega1 - prev1) < 0.05);
      CHECK(std::abs(f.omega2 - prev2) < 0.05);
    }
    prev1 = f.omega1;
    prev2 = f.omega2;
  }
}

TEST_CASE("frequency Jacobian is nondegenerate and converged") {
  const FrequencyJacobian j = frequency_jacobian(1.3, 0.6);
  CHECK(std::abs(j.det) > 1e-6);
  CHECK(j.richardson_change < 0.05);
}

TEST_CASE("no real torus below the lowest energy") {
  CHECK_THROWS_AS(frequency_map(-1.5, 0.0), Error);
  CHECK_THROWS_AS(frequency_map(1.0, 0.0), Error);
}

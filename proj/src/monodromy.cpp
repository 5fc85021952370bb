#include "laxjac/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "laxjac/error.hpp"
#include "laxjac/kernels.hpp"
#include "laxjac/ode.hpp"

namespace laxjac {

double pendulum_discriminant(double h, double k) {
  const double h2 = h * h, k2 = k * k;
  return 256.0 - 512.0 * h2 + 1152.0 * k2 * h - 432.0 * k2 * k2 + 256.0 * h2 * h2 - 128.0 * k2 * h2 * h;
}

Eigen::Vector2d pendulum_discriminant_gradient(double h, double k) {
  const double h2 = h * h, k2 = k * k;
  return {-1024.0 * h + 1152.0 * k2 + 1024.0 * h2 * h - 384.0 * k2 * h2,
          2304.0 * k * h - 1728.0 * k2 * k - 256.0 * k * h2 * h};
}

Eigen::Matrix2d pendulum_discriminant_hessian(double h, double k) {
  const double h2 = h * h, k2 = k * k;
  Eigen::Matrix2d m;
  m(0, 0) = -1024.0 + 3072.0 * h2 - 768.0 * k2 * h;
  m(0, 1) = m(1, 0) = 2304.0 * k - 768.0 * k * h2;
  m(1, 1) = 2304.0 * h - 5184.0 * k2 - 256.0 * h2 * h;
  return m;
}

namespace {

// marching squares on the sign of the discriminant
struct EdgeKey {
  int i, j, dir;  // dir 0: (i,j)-(i+1,j), dir 1: (i,j)-(i,j+1)
  bool operator<(const EdgeKey& o) const { return std::tie(i, j, dir) < std::tie(o.i, o.j, o.dir); }
  bool operator==(const EdgeKey& o) const { return i == o.i && j == o.j && dir == o.dir; }
};

}  // namespace

DiscriminantLocus discriminant_locus(const GridSpec& grid, ExecPolicy policy) {
  if (grid.nh < 2 || grid.nk < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least 2x2 points");
  const auto vals = discriminant_grid(grid, policy);
  auto at = [&](int i, int j) { return vals[std::size_t(i) * grid.nk + j]; };
  auto crossing = [&](const EdgeKey& e) -> PlanePoint {
    const int i2 = e.dir == 0 ? e.i + 1 : e.i, j2 = e.dir == 0 ? e.j : e.j + 1;
    const double a = at(e.i, e.j), b = at(i2, j2);
    const double t = a == b ? 0.5 : a / (a - b);
    return {grid.h_at(e.i) + t * (grid.h_at(i2) - grid.h_at(e.i)), grid.k_at(e.j) + t * (grid.k_at(j2) - grid.k_at(e.j))};
  };
  auto sign_change = [&](const EdgeKey& e) {
    const int i2 = e.dir == 0 ? e.i + 1 : e.i, j2 = e.dir == 0 ? e.j : e.j + 1;
    return (at(e.i, e.j) >= 0.0) != (at(i2, j2) >= 0.0);
  };

  std::vector<std::pair<EdgeKey, EdgeKey>> segs;
  for (int i = 0; i + 1 < grid.nh; ++i)
    for (int j = 0; j + 1 < grid.nk; ++j) {
      // edges in cyclic order around the cell
      const EdgeKey edges[4] = {{i, j, 0}, {i + 1, j, 1}, {i, j + 1, 0}, {i, j, 1}};
      std::vector<EdgeKey> hit;
      for (const auto& e : edges)
        if (sign_change(e)) hit.push_back(e);
      if (hit.size() == 2) {
        segs.emplace_back(hit[0], hit[1]);
      } else if (hit.size() == 4) {
        const double centre = 0.25 * (at(i, j) + at(i + 1, j) + at(i, j + 1) + at(i + 1, j + 1));
        if ((centre >= 0.0) == (at(i, j) >= 0.0)) {
          segs.emplace_back(hit[0], hit[1]);
          segs.emplace_back(hit[2], hit[3]);
        } else {
          segs.emplace_back(hit[0], hit[3]);
          segs.emplace_back(hit[1], hit[2]);
        }
      }
    }

  // chain segments into polylines through shared edges
  std::map<EdgeKey, std::vector<std::size_t>> by_edge;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    by_edge[segs[s].first].push_back(s);
    by_edge[segs[s].second].push_back(s);
  }
  std::vector<bool> used(segs.size(), false);
  DiscriminantLocus locus;
  auto extend = [&](std::vector<EdgeKey>& chain) {
    while (true) {
      const auto& cands = by_edge[chain.back()];
      bool grown = false;
      for (std::size_t s : cands) {
        if (used[s]) continue;
        used[s] = true;
        chain.push_back(segs[s].first == chain.back() ? segs[s].second : segs[s].first);
        grown = true;
        break;
      }
      if (!grown) return;
    }
  };
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (used[s]) continue;
    used[s] = true;
    std::vector<EdgeKey> chain{segs[s].first, segs[s].second};
    extend(chain);
    std::reverse(chain.begin(), chain.end());
    extend(chain);
    std::vector<PlanePoint> line;
    for (const auto& e : chain) line.push_back(crossing(e));
    locus.polylines.push_back(std::move(line));
  }

  // isolated zeros: grid minima without a sign change nearby, refined by Newton on the gradient
  const double dh = (grid.h_max - grid.h_min) / (grid.nh - 1), dk = (grid.k_max - grid.k_min) / (grid.nk - 1);
  for (int i = 1; i + 1 < grid.nh; ++i)
    for (int j = 1; j + 1 < grid.nk; ++j) {
      const double v = at(i, j);
      bool minimum = true, neg = false, pos = false;
      for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) {
          const double w = at(i + a, j + b);
          if ((a || b) && std::abs(w) < std::abs(v)) minimum = false;
          neg = neg || w < 0.0;
          pos = pos || w > 0.0;
        }
      if (!minimum || (neg && pos)) continue;
      Eigen::Vector2d p(grid.h_at(i), grid.k_at(j));
      for (int it = 0; it < 50; ++it) {
        const Eigen::Vector2d step = pendulum_discriminant_hessian(p(0), p(1)).fullPivLu().solve(
            pendulum_discriminant_gradient(p(0), p(1)));
        p -= step;
        if (step.norm() < 1e-14) break;
      }
      if (std::abs(p(0) - grid.h_at(i)) > 1.5 * dh || std::abs(p(1) - grid.k_at(j)) > 1.5 * dk) continue;
      if (std::abs(pendulum_discriminant(p(0), p(1))) > 1e-10) continue;
      const PlanePoint z{p(0), p(1)};
      const bool seen = std::any_of(locus.isolated.begin(), locus.isolated.end(), [&](const PlanePoint& q) {
        return std::abs(q.first - z.first) < dh && std::abs(q.second - z.second) < dk;
      });
      if (!seen) locus.isolated.push_back(z);
    }
  return locus;
}

PlanePoint LoopSpec::at(double phase) const {
  if (phase >= 1.0) phase = 0.0;
  const double phi = 2.0 * kPi * phase * orientation;
  return {h0 + radius * std::cos(phi), k0 + radius * std::sin(phi)};
}

bool loop_avoids_discriminant(const LoopSpec& loop) {
  for (double scale : {0.9, 1.0, 1.1}) {
    LoopSpec l = loop;
    l.radius *= scale;
    const auto [h0, k0] = l.at(0.0);
    const double first = pendulum_discriminant(h0, k0);
    for (int i = 0; i < 2048; ++i) {
      const auto [h, k] = l.at(i / 2048.0);
      const double d = pendulum_discriminant(h, k);
      if (std::abs(d) <= 1e-10 || (d > 0.0) != (first > 0.0)) return false;
    }
  }
  return true;
}

namespace {

struct LoopState {
  double phase = 0.0;
  QuarticCurve curve;
  ExtendedLattice lattice;
  std::array<Vec2c, 3> transported;    // continuation of the initial extended generators
  std::array<cplx, 2> transported_base;  // continuation of the initial (omega_a, omega_b)
};

Eigen::Vector2d base_coordinates(cplx z, std::pair<cplx, cplx> basis) {
  Eigen::Matrix2d m;
  m << basis.first.real(), basis.second.real(), basis.first.imag(), basis.second.imag();
  return m.inverse() * Eigen::Vector2d(z.real(), z.imag());
}

bool branch_points_match(const QuarticCurve& from, const QuarticCurve& to) {
  const double limit = 0.25 * from.min_separation();
  std::array<bool, 4> taken{};
  for (const auto& b : from.branch_points) {
    int best = -1;
    double best_d = 1e300;
    for (int j = 0; j < 4; ++j) {
      const double d = std::abs(to.branch_points[j] - b);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best_d > limit || taken[best]) return false;
    taken[best] = true;
  }
  return true;
}

struct StepOutcome {
  bool ok = false;
  double residual = 0.0;
};

StepOutcome try_step(const LoopSpec& loop, const LoopState& from, double phase, LoopState& to) {
  const auto [h, k] = loop.at(phase);
  to.phase = phase;
  to.curve = curve_from_hk(h, k);
  if (to.curve.singular) throw Error(ErrorKind::BranchCollision, "loop meets the discriminant locus");
  if (!branch_points_match(from.curve, to.curve)) return {};
  to.lattice = extended_lattice(to.curve);
  StepOutcome out;
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector4d c = lattice_coordinates(from.transported[i], to.lattice);
    Vec2c v = Vec2c::Zero();
    for (int j = 0; j < 3; ++j) {
      out.residual = std::max(out.residual, std::abs(c(j) - std::round(c(j))));
      v += std::round(c(j)) * to.lattice.g[j];
    }
    out.residual = std::max(out.residual, std::abs(c(3)));
    to.transported[i] = v;
  }
  const auto base = to.lattice.base_lattice();
  for (int i = 0; i < 2; ++i) {
    const Eigen::Vector2d c = base_coordinates(from.transported_base[i], base);
    out.residual = std::max({out.residual, std::abs(c(0) - std::round(c(0))), std::abs(c(1) - std::round(c(1)))});
    to.transported_base[i] = std::round(c(0)) * base.first + std::round(c(1)) * base.second;
  }
  out.ok = out.residual < 0.25;
  return out;
}

void advance(const LoopSpec& loop, LoopState& state, double phase, int depth, MonodromyResult& res) {
  LoopState next;
  const StepOutcome o = try_step(loop, state, phase, next);
  if (o.ok) {
    res.max_step_residual = std::max(res.max_step_residual, o.residual);
    ++res.steps_taken;
    state = std::move(next);
    return;
  }
  if (depth >= 12) throw Error(ErrorKind::BranchCollision, "step refinement exhausted");
  const double mid = 0.5 * (state.phase + phase);
  advance(loop, state, mid, depth + 1, res);
  advance(loop, state, phase, depth + 1, res);
}

}  // namespace

MonodromyResult continue_periods(const LoopSpec& loop) {
  if (!(loop.radius > 0.0) || loop.n_steps < 32 || (loop.orientation != 1 && loop.orientation != -1))
    throw Error(ErrorKind::InvalidArgument, "loop needs radius > 0, n_steps >= 32 and orientation +-1");
  if (!loop_avoids_discriminant(loop)) throw Error(ErrorKind::InvalidArgument, "loop does not avoid the discriminant locus");

  MonodromyResult res;
  LoopState state;
  {
    const auto [h, k] = loop.at(0.0);
    state.curve = curve_from_hk(h, k);
    state.lattice = extended_lattice(state.curve);
    state.transported = state.lattice.g;
    const auto base = state.lattice.base_lattice();
    state.transported_base = {base.first, base.second};
  }
  res.initial = state.lattice;
  for (int s = 1; s <= loop.n_steps; ++s) advance(loop, state, double(s) / loop.n_steps, 0, res);

  // the loop closes on the initial curve, so the initial generators are the reference basis
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector4d c = lattice_coordinates(state.transported[i], res.initial);
    for (int j = 0; j < 3; ++j) {
      res.m_ext(i, j) = int(std::lround(c(j)));
      res.continuation_residual = std::max(res.continuation_residual, std::abs(c(j) - std::round(c(j))));
    }
    res.continuation_residual = std::max(res.continuation_residual, std::abs(c(3)));
  }
  const auto base = res.initial.base_lattice();
  for (int i = 0; i < 2; ++i) {
    const Eigen::Vector2d c = base_coordinates(state.transported_base[i], base);
    for (int j = 0; j < 2; ++j) {
      res.m(i, j) = int(std::lround(c(j)));
      res.continuation_residual = std::max(res.continuation_residual, std::abs(c(j) - std::round(c(j))));
    }
  }
  if (res.continuation_residual > 1e-6)
    throw Error(ErrorKind::NonIntegerMonodromy, "closing coefficients are not integers");
  return res;
}

TorusLattice real_torus_lattice(const ExtendedLattice& lattice, const Vec2c& v_h, const Vec2c& v_k, int bound,
                                double rel_tol) {
  Eigen::Matrix<double, 4, 2> s;
  s.col(0) = to_real4(v_h);
  s.col(1) = to_real4(v_k);
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues()(1) <= 1e-8 * svd.singularValues()(0))
    throw Error(ErrorKind::IntegerRelationFailure, "flow velocities are not independent");
  const Eigen::Matrix<double, 2, 4> complement = svd.matrixU().rightCols<2>().transpose();
  const Eigen::Matrix<double, 4, 3> g = lattice.real_matrix();
  const Eigen::Matrix<double, 2, 3> a = complement * g;
  const double scale = g.colwise().norm().maxCoeff();

  struct Candidate {
    Eigen::Matrix<long, 1, 3> n;
    Eigen::Vector2d time;
  };
  std::vector<Candidate> found;
  for (long i = -bound; i <= bound; ++i)
    for (long j = -bound; j <= bound; ++j) {
      const Eigen::Vector2d partial = a.col(0) * double(i) + a.col(1) * double(j);
      // the third coefficient is fixed by the first projected coordinate when a(.,2) is nonzero
      for (long k = -bound; k <= bound; ++k) {
        const Eigen::Vector2d r = partial + a.col(2) * double(k);
        if (r.norm() > rel_tol * scale * std::max(1.0, double(std::abs(i) + std::abs(j) + std::abs(k)))) continue;
        if (i == 0 && j == 0 && k == 0) continue;
        Candidate c;
        c.n << i, j, k;
        const Eigen::Vector4d target = g * Eigen::Vector3d(double(i), double(j), double(k));
        c.time = svd.solve(target);
        found.push_back(c);
      }
    }
  if (found.size() < 2) throw Error(ErrorKind::IntegerRelationFailure, "fewer than two real periods found");

  // in two dimensions the successive minima form a basis
  auto shorter = [](const Candidate& x, const Candidate& y) { return x.time.norm() < y.time.norm(); };
  std::sort(found.begin(), found.end(), shorter);
  const Candidate first = found[0];
  const Candidate* second = nullptr;
  for (const auto& c : found) {
    const double cross = first.time(0) * c.time(1) - first.time(1) * c.time(0);
    if (std::abs(cross) > 1e-6 * first.time.norm() * c.time.norm()) {
      second = &c;
      break;
    }
  }
  if (!second) throw Error(ErrorKind::IntegerRelationFailure, "real periods are collinear");
  TorusLattice out;
  out.relations.row(0) = first.n;
  out.relations.row(1) = second->n;
  out.times.row(0) = first.time.transpose();
  out.times.row(1) = second->time.transpose();

  Eigen::Matrix2d basis = out.times.transpose();
  const Eigen::Matrix2d inv = basis.inverse();
  for (const auto& c : found) {
    const Eigen::Vector2d co = inv * c.time;
    if ((co - co.array().round().matrix()).cwiseAbs().maxCoeff() > 1e-6)
      throw Error(ErrorKind::IntegerRelationFailure, "real periods do not form a rank-2 lattice");
  }
  return out;
}

Eigen::Matrix2i real_torus_monodromy(const TorusLattice& torus, const Eigen::Matrix3i& m_ext) {
  Eigen::Matrix<double, 3, 2> basis;
  basis.col(0) = torus.relations.row(0).cast<double>().transpose();
  basis.col(1) = torus.relations.row(1).cast<double>().transpose();
  Eigen::Matrix2i out;
  for (int i = 0; i < 2; ++i) {
    const Eigen::Vector3d moved = (torus.relations.row(i).cast<double>() * m_ext.cast<double>()).transpose();
    const Eigen::Vector2d c = basis.colPivHouseholderQr().solve(moved);
    const Eigen::Vector2d rc = c.array().round();
    if ((basis * rc - moved).cwiseAbs().maxCoeff() > 1e-9)
      throw Error(ErrorKind::NonIntegerMonodromy, "monodromy does not preserve the real-period lattice");
    out(i, 0) = int(rc(0));
    out(i, 1) = int(rc(1));
  }
  return out;
}

namespace {

long ext_gcd(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::abs(a);
  }
  long x1, y1;
  const long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace

FrequencyResult frequency_map(double h, double k, const FrequencyOptions& opt) {
  const QuarticCurve curve = curve_from_hk(h, k);
  if (curve.singular) throw Error(ErrorKind::SingularCurve, "(h, k) lies on the discriminant locus");
  const PendulumState s0 = real_state_from_hk(h, k);
  const CycleSpec cycles = opt.cycles ? *opt.cycles : choose_cycles(curve);
  const ExtendedLattice lattice = extended_lattice(compute_periods(curve, cycles));
  const DivisorPoint base = default_base_point(curve);

  FrequencyResult out;
  const AbelFit fh = fit_hamiltonian_flow(s0, opt.fit_time, opt.fit_samples, opt.tol, curve, lattice, base);
  const AbelFit fk = fit_rotation_flow(s0, opt.fit_time, opt.fit_samples, curve, lattice, base);
  out.v_h = fh.velocity;
  out.v_k = fk.velocity;
  out.fit_residual = std::max(fh.residual, fk.residual);
  out.torus = real_torus_lattice(lattice, out.v_h, out.v_k);

  // the full turn (0, 2 pi) is a period; complete it to a basis (e1, e2 = (0, 2 pi))
  const Eigen::Matrix2d basis = out.torus.times.transpose();
  const Eigen::Vector2d turn = basis.inverse() * Eigen::Vector2d(0.0, 2.0 * kPi);
  const long a = std::lround(turn(0)), b = std::lround(turn(1));
  if ((turn - Eigen::Vector2d(double(a), double(b))).cwiseAbs().maxCoeff() > 1e-6)
    throw Error(ErrorKind::IntegerRelationFailure, "a full rotation is not a real period");
  long x, y;
  if (ext_gcd(a, b, x, y) != 1) throw Error(ErrorKind::IntegerRelationFailure, "a full rotation is not primitive");
  // a*x + b*y = 1, so e1 = -y*t1 + x*t2 has determinant 1 against e2 = a*t1 + b*t2
  Eigen::Vector2d e1 = -double(y) * out.torus.times.row(0).transpose() + double(x) * out.torus.times.row(1).transpose();
  if (e1(0) < 0.0) e1 = -e1;
  out.period = e1(0);
  if (!(out.period > 0.0)) throw Error(ErrorKind::IntegerRelationFailure, "no radial period");
  double dphi = std::fmod(-e1(1), 2.0 * kPi);
  if (dphi < 0.0) dphi += 2.0 * kPi;
  if (k < 0.0) dphi -= 2.0 * kPi;
  out.delta_phi = dphi;
  out.rotation_number = dphi / (2.0 * kPi);
  out.omega1 = 2.0 * kPi / out.period;
  out.omega2 = dphi / out.period;
  return out;
}

FrequencyJacobian frequency_jacobian(double h, double k, double step, const FrequencyOptions& opt) {
  auto jac = [&](double d) {
    const auto fhp = frequency_map(h + d, k, opt), fhm = frequency_map(h - d, k, opt);
    const auto fkp = frequency_map(h, k + d, opt), fkm = frequency_map(h, k - d, opt);
    Eigen::Matrix2d j;
    j(0, 0) = (fhp.omega1 - fhm.omega1) / (2.0 * d);
    j(1, 0) = (fhp.omega2 - fhm.omega2) / (2.0 * d);
    j(0, 1) = (fkp.omega1 - fkm.omega1) / (2.0 * d);
    j(1, 1) = (fkp.omega2 - fkm.omega2) / (2.0 * d);
    return j;
  };
  FrequencyJacobian out;
  out.jacobian = jac(step);
  out.det = out.jacobian.determinant();
  out.det_half_step = jac(0.5 * step).determinant();
  out.richardson_change = std::abs(out.det - out.det_half_step) / std::abs(out.det_half_step);
  return out;
}

PoincareResult poincare_rotation(double h, double k, double tol) {
  const PendulumState s0 = real_state_from_hk(h, k);
  RealVector y(7);
  for (int i = 0; i < 3; ++i) {
    y(i) = s0.x(i).real();
    y(3 + i) = s0.v(i).real();
  }
  y(6) = 0.0;
  OdeRhs rhs = [](double, const RealVector& s, RealVector& ds) {
    ds.resize(7);
    const Eigen::Vector3d x = s.segment<3>(0), v = s.segment<3>(3);
    ds.segment<3>(0) = v;
    ds.segment<3>(3) = ((x(2) - v.squaredNorm()) / x.squaredNorm()) * x - Eigen::Vector3d(0.0, 0.0, 1.0);
    ds(6) = (x(0) * v(1) - x(1) * v(0)) / (x(0) * x(0) + x(1) * x(1));
  };
  OdeOptions o;
  o.rtol = o.atol = tol;
  Dop853 solver(o);
  std::vector<std::pair<double, double>> events;  // (t, phi) at minima of x3
  solver.integrate(rhs, 0.0, y, 1e4, [&](const DenseStep& s) {
    if (s.y_old(5) < 0.0 && s.y_new(5) >= 0.0) {
      double lo = s.t_old, hi = s.t_new;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (s(mid)(5) < 0.0)
          lo = mid;
        else
          hi = mid;
      }
      const double te = 0.5 * (lo + hi);
      events.emplace_back(te, s(te)(6));
    }
    return events.size() < 2;
  });
  if (events.size() < 2) throw Error(ErrorKind::NoRealTorus, "no recurrent radial motion found");
  PoincareResult out;
  out.period = events[1].first - events[0].first;
  out.delta_phi = events[1].second - events[0].second;
  out.rotation_number = out.delta_phi / (2.0 * kPi);
  return out;
}

}  // namespace laxjac

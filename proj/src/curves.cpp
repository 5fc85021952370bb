#include "laxjac/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "laxjac/error.hpp"
#include "quadrature.hpp"

namespace laxjac {

namespace {

constexpr double kBranchTol = 1e-6;
constexpr double kPeriodTol = 1e-11;

double point_segment_distance(cplx z, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - a);
  const double t = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + t * d));
}

double cross2(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_intersect(cplx a, cplx b, cplx c, cplx d) {
  const double d1 = cross2(b - a, c - a), d2 = cross2(b - a, d - a);
  const double d3 = cross2(d - c, a - c), d4 = cross2(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

double segment_distance(cplx a, cplx b, cplx c, cplx d) {
  if (segments_intersect(a, b, c, d)) return 0.0;
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                   point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

double vnorm(const Vec2c& v) { return v.cwiseAbs().maxCoeff(); }

// sqrt((lambda - a)(lambda - b)) with the cut on [a, b], ~ lambda at infinity, from the
// differences da = lambda - a and db = lambda - b.
cplx cut_sqrt(cplx da, cplx db, cplx a, cplx b) {
  const cplx hh = 0.5 * (b - a);
  return hh * std::sqrt(db / hh) * std::sqrt(da / hh);
}

struct Labels {
  cplx p, q, r, s;
};

Labels labels(const QuarticCurve& c, const CycleSpec& cy) {
  return {c.branch_points[cy.order[0]], c.branch_points[cy.order[1]], c.branch_points[cy.order[2]],
          c.branch_points[cy.order[3]]};
}

// mu on the infinity+ sheet from the four differences lambda - p, ..., lambda - s.
cplx mu_from_diffs(const QuarticCurve& c, const Labels& l, cplx dp, cplx dq, cplx dr, cplx ds) {
  return c.sqrt_lead * cut_sqrt(dp, dq, l.p, l.q) * cut_sqrt(dr, ds, l.r, l.s);
}

double clearance(const QuarticCurve& c, const std::array<int, 4>& o) {
  const cplx p = c.branch_points[o[0]], q = c.branch_points[o[1]], r = c.branch_points[o[2]],
             s = c.branch_points[o[3]];
  const double d = std::min({point_segment_distance(r, p, q), point_segment_distance(s, p, q),
                             point_segment_distance(p, q, r), point_segment_distance(s, q, r),
                             segment_distance(p, q, r, s)});
  return d / c.min_separation();
}

}  // namespace

double QuarticCurve::min_separation() const {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) m = std::min(m, std::abs(branch_points[i] - branch_points[j]));
  return m;
}

double QuarticCurve::branch_distance(cplx lambda) const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& b : branch_points) m = std::min(m, std::abs(lambda - b));
  return m;
}

QuarticCurve curve_from_poly(const Polynomial& f) {
  if (f.size() != 5 || f[4] == cplx{}) throw Error(ErrorKind::InvalidArgument, "a quartic needs a nonzero leading coefficient");
  QuarticCurve c;
  c.f = f;
  c.lead = f[4];
  c.sqrt_lead = std::sqrt(c.lead);
  const auto roots = f.roots(2);
  std::copy(roots.begin(), roots.end(), c.branch_points.begin());
  c.disc = quartic_discriminant(f[4], f[3], f[2], f[1], f[0]);
  c.singular = std::abs(c.disc) / std::pow(std::abs(c.lead), 6.0) <= 1e-10;
  return c;
}

QuarticCurve curve_from_hk(cplx h, cplx k) { return curve_from_poly(pendulum_quartic(h, k)); }

CycleSpec lexicographic_cycles(const QuarticCurve& curve) {
  CycleSpec cy;
  std::sort(cy.order.begin(), cy.order.end(), [&](int a, int b) {
    const cplx x = curve.branch_points[a], y = curve.branch_points[b];
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  cy.lexicographic = true;
  cy.clearance = clearance(curve, cy.order);
  return cy;
}

CycleSpec cycles_with_order(const QuarticCurve& curve, const std::array<int, 4>& order) {
  CycleSpec cy;
  cy.order = order;
  cy.lexicographic = order == lexicographic_cycles(curve).order;
  cy.clearance = clearance(curve, order);
  return cy;
}

CycleSpec choose_cycles(const QuarticCurve& curve) {
  if (curve.singular) throw Error(ErrorKind::SingularCurve, "the curve has colliding branch points");
  CycleSpec lex = lexicographic_cycles(curve);
  if (lex.clearance >= 0.1) return lex;
  CycleSpec best;
  best.lexicographic = false;
  best.clearance = -1.0;
  std::array<int, 4> o{0, 1, 2, 3};
  do {
    const double cl = clearance(curve, o);
    if (cl > best.clearance) {
      best.order = o;
      best.clearance = cl;
    }
  } while (std::next_permutation(o.begin(), o.end()));
  if (best.clearance < 0.02) throw Error(ErrorKind::ContourTooClose, "no admissible cycle geometry");
  return best;
}

cplx mu_plus(const QuarticCurve& curve, const CycleSpec& cycles, cplx lambda) {
  const Labels l = labels(curve, cycles);
  return mu_from_diffs(curve, l, lambda - l.p, lambda - l.q, lambda - l.r, lambda - l.s);
}

namespace {

struct RawPeriods {
  Vec2c a;  // (int dlambda/mu, int lambda dlambda/mu) over the a-cycle
  Vec2c b;
};

RawPeriods raw_periods(const QuarticCurve& c, const CycleSpec& cy) {
  if (c.singular) throw Error(ErrorKind::SingularCurve, "periods need a smooth curve");
  const Labels l = labels(c, cy);
  const double minsep = c.min_separation();

  // a-cycle: lambda = m + hh cosh(rho + i theta). On it s_pq = hh sinh(w), so
  // dlambda / mu = i dtheta / (sqrt(lead) s_rs(lambda)).
  const cplx m = 0.5 * (l.p + l.q), hh = 0.5 * (l.q - l.p);
  double rho_rs = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 256; ++i) {
    const cplx z = l.r + (l.s - l.r) * (i / 256.0);
    rho_rs = std::min(rho_rs, std::acosh((z - m) / hh).real());
  }
  if (!(rho_rs > 1e-8)) throw Error(ErrorKind::ContourTooClose, "cuts touch");
  const double rho_target = std::acosh(1.0 + 0.1 * minsep / std::abs(hh));
  const double rho = std::min(rho_target, 0.5 * rho_rs);
  for (int i = 0; i < 512; ++i) {
    const cplx z = m + hh * std::cosh(cplx(rho, 2.0 * kPi * i / 512.0));
    if (std::abs(z - l.r) < 0.02 * minsep || std::abs(z - l.s) < 0.02 * minsep)
      throw Error(ErrorKind::ContourTooClose, "a-contour passes too close to a branch point");
  }
  auto fa = [&](double theta) -> Vec2c {
    const cplx lam = m + hh * std::cosh(cplx(rho, theta));
    const cplx srs = cut_sqrt(lam - l.r, lam - l.s, l.r, l.s);
    const cplx g = kI / (c.sqrt_lead * srs);
    return Vec2c(g, g * lam);
  };

  // b-path: lambda = M - H cos(theta) from q to r, differences written to avoid cancellation.
  const cplx mm = 0.5 * (l.q + l.r), H = 0.5 * (l.r - l.q);
  auto fb = [&](double theta) -> Vec2c {
    const double s2 = std::sin(0.5 * theta), c2 = std::cos(0.5 * theta);
    const cplx dq = 2.0 * H * s2 * s2;
    const cplx dr = -2.0 * H * c2 * c2;
    const cplx lam = mm - H * std::cos(theta);
    const cplx mu = mu_from_diffs(c, l, (l.q - l.p) + dq, dq, dr, (l.r - l.s) + dr);
    const cplx g = H * std::sin(theta) / mu;
    return Vec2c(g, g * lam);
  };

  RawPeriods out;
  out.a = detail::refined_gauss(fa, 0.0, 2.0 * kPi, kPeriodTol, vnorm);
  out.b = 2.0 * detail::refined_gauss(fb, 0.0, kPi, kPeriodTol, vnorm);
  return out;
}

std::pair<cplx, cplx> residues_at_infinity(const QuarticCurve& c, const CycleSpec& cy, cplx scale) {
  double rmax = 1.0;
  for (const auto& b : c.branch_points) rmax = std::max(rmax, std::abs(b));
  const double rt = 0.5 / rmax;
  const int n = 128;
  cplx plus{}, minus{};
  for (int i = 0; i < n; ++i) {
    const cplx tau = std::polar(rt, 2.0 * kPi * i / n);
    const cplx dtau = kI * tau * (2.0 * kPi / n);
    // eta = scale * lambda dlambda / mu with lambda = 1/tau, dlambda = -dtau / tau^2
    const cplx form = scale * (1.0 / tau) * (-1.0 / (tau * tau)) / mu_plus(c, cy, 1.0 / tau);
    plus += form * dtau;
    minus -= form * dtau;
  }
  return {plus / kTwoPiI, minus / kTwoPiI};
}

}  // namespace

std::pair<cplx, cplx> periods_first_kind(const QuarticCurve& curve, const CycleSpec& cycles) {
  const auto raw = raw_periods(curve, cycles);
  return {raw.a(0), raw.b(0)};
}

ThirdKindPeriods periods_third_kind(const QuarticCurve& curve, const CycleSpec& cycles) {
  const auto raw = raw_periods(curve, cycles);
  const cplx scale = curve.sqrt_lead;
  const auto [rp, rm] = residues_at_infinity(curve, cycles, scale);
  if (std::abs(rp + rm) > 1e-8 || std::abs(rp + 1.0) > 1e-8)
    throw Error(ErrorKind::NormalizationFailure, "residues at infinity are not -1 and +1");
  return {scale * raw.a(1), scale * raw.b(1), rp, rm, scale};
}

PeriodData compute_periods(const QuarticCurve& curve, const CycleSpec& cycles) {
  const auto raw = raw_periods(curve, cycles);
  PeriodData p;
  p.cycles = cycles;
  p.eta_scale = curve.sqrt_lead;
  std::tie(p.residue_plus, p.residue_minus) = residues_at_infinity(curve, cycles, p.eta_scale);
  if (std::abs(p.residue_plus + p.residue_minus) > 1e-8 || std::abs(p.residue_plus + 1.0) > 1e-8)
    throw Error(ErrorKind::NormalizationFailure, "residues at infinity are not -1 and +1");
  p.omega_a = raw.a(0);
  p.omega_b = raw.b(0);
  p.eta_a = p.eta_scale * raw.a(1);
  p.eta_b = p.eta_scale * raw.b(1);
  if ((p.omega_b / p.omega_a).imag() < 0.0) {
    p.omega_b = -p.omega_b;
    p.eta_b = -p.eta_b;
  }
  return p;
}

PeriodData compute_periods(const QuarticCurve& curve) { return compute_periods(curve, choose_cycles(curve)); }

cplx agm(cplx a, cplx b) {
  if (a == cplx{} || b == cplx{}) throw Error(ErrorKind::AGMNonconvergence, "zero argument");
  if (std::abs(a - b) > std::abs(a + b)) b = -b;
  for (int i = 0; i < 64; ++i) {
    const cplx a1 = 0.5 * (a + b);
    cplx b1 = std::sqrt(a * b);
    if (std::abs(a1 - b1) > std::abs(a1 + b1)) b1 = -b1;
    a = a1;
    b = b1;
    if (std::abs(a - b) <= 1e-15 * std::abs(a)) return 0.5 * (a + b);
  }
  throw Error(ErrorKind::AGMNonconvergence, "AGM did not converge");
}

std::pair<cplx, cplx> periods_agm(const QuarticCurve& curve, const CycleSpec& cycles) {
  if (curve.singular) throw Error(ErrorKind::SingularCurve, "periods need a smooth curve");
  const Labels l = labels(curve, cycles);
  const cplx w1 = kTwoPiI / (curve.sqrt_lead * agm(std::sqrt((l.p - l.r) * (l.q - l.s)), std::sqrt((l.p - l.s) * (l.q - l.r))));
  const cplx w2 = kTwoPiI / (curve.sqrt_lead * agm(std::sqrt((l.q - l.s) * (l.r - l.p)), std::sqrt((l.q - l.p) * (l.r - l.s))));
  return {w1, w2};
}

std::pair<cplx, cplx> periods_agm(const QuarticCurve& curve) { return periods_agm(curve, lexicographic_cycles(curve)); }

LatticeComparison lattices_equal(std::pair<cplx, cplx> first, std::pair<cplx, cplx> second, double tol) {
  LatticeComparison out;
  Eigen::Matrix2d f;
  f << first.first.real(), first.second.real(), first.first.imag(), first.second.imag();
  if (std::abs(f.determinant()) <= 1e-14 * std::norm(first.first))
    throw Error(ErrorKind::RankDeficientLattice, "first basis is degenerate");
  const Eigen::Matrix2d finv = f.inverse();
  const cplx targets[2] = {second.first, second.second};
  for (int i = 0; i < 2; ++i) {
    const Eigen::Vector2d c = finv * Eigen::Vector2d(targets[i].real(), targets[i].imag());
    out.change(i, 0) = int(std::lround(c(0)));
    out.change(i, 1) = int(std::lround(c(1)));
    const cplx approx = double(out.change(i, 0)) * first.first + double(out.change(i, 1)) * first.second;
    out.residual = std::max(out.residual, std::abs(targets[i] - approx) / std::abs(targets[i]));
  }
  out.equal = out.residual <= tol && std::abs(out.change.determinant()) == 1;
  return out;
}

cplx infinity_integral(const QuarticCurve& curve, const CycleSpec& cycles) {
  const Labels l = labels(curve, cycles);
  const std::array<cplx, 4> pts{l.p, l.q, l.r, l.s};
  double rmax = 1.0;
  for (const auto& b : pts) rmax = std::max(rmax, std::abs(b));
  const double reach = 10.0 * rmax;

  // pick a branch point and an outward direction whose ray stays clear of both cuts
  int best_i = 0;
  cplx best_d = 1.0;
  double best_score = -1.0;
  for (int i = 0; i < 4; ++i) {
    const cplx own_partner = pts[i ^ 1];
    const cplx other_a = pts[i < 2 ? 2 : 0], other_b = pts[i < 2 ? 3 : 1];
    for (int k = 0; k < 16; ++k) {
      const cplx d = std::polar(1.0, 2.0 * kPi * k / 16.0);
      const cplx into_cut = (own_partner - pts[i]) / std::abs(own_partner - pts[i]);
      const double angle = std::abs(std::arg(d / into_cut));
      if (angle < kPi / 6.0) continue;
      const cplx end = pts[i] + reach * d;
      const double score = segment_distance(pts[i], end, other_a, other_b);
      if (score > best_score) {
        best_score = score;
        best_i = i;
        best_d = d;
      }
    }
  }
  const cplx b = pts[best_i];
  auto f = [&](double t) -> cplx {
    const double sigma = t * t / (1.0 - t * t);
    const double dsigma = 2.0 * t / ((1.0 - t * t) * (1.0 - t * t));
    const cplx step = best_d * sigma;
    std::array<cplx, 4> diff;
    for (int j = 0; j < 4; ++j) diff[j] = (j == best_i) ? step : (b - pts[j]) + step;
    const cplx mu = mu_from_diffs(curve, l, diff[0], diff[1], diff[2], diff[3]);
    return best_d * dsigma / mu;
  };
  auto norm = [](cplx z) { return std::abs(z); };
  return 2.0 * detail::refined_gauss(f, 0.0, 1.0, kPeriodTol, norm);
}

double reciprocity_residual(const QuarticCurve& curve, const PeriodData& p) {
  const cplx lhs = p.omega_a * p.eta_b - p.omega_b * p.eta_a + kTwoPiI * infinity_integral(curve, p.cycles);
  const cplx e1 = kTwoPiI * p.omega_a, e2 = kTwoPiI * p.omega_b;
  Eigen::Matrix2d m;
  m << e1.real(), e2.real(), e1.imag(), e2.imag();
  const Eigen::Vector2d c = m.inverse() * Eigen::Vector2d(lhs.real(), lhs.imag());
  const cplx near = std::round(c(0)) * e1 + std::round(c(1)) * e2;
  return std::abs(lhs - near);
}

Eigen::Matrix<double, 4, 3> ExtendedLattice::real_matrix() const {
  Eigen::Matrix<double, 4, 3> m;
  for (int j = 0; j < 3; ++j) m.col(j) = to_real4(g[j]);
  return m;
}

int ExtendedLattice::rank(double tol) const {
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 3>> svd(real_matrix());
  int r = 0;
  for (int i = 0; i < 3; ++i)
    if (svd.singularValues()(i) > tol) ++r;
  return r;
}

ExtendedLattice make_lattice(const Vec2c& g1, const Vec2c& g2, const Vec2c& g3) {
  ExtendedLattice l;
  l.g = {g1, g2, g3};
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 3>> svd(l.real_matrix());
  l.min_singular = svd.singularValues()(2);
  return l;
}

ExtendedLattice extended_lattice(const PeriodData& p) {
  return make_lattice(Vec2c(p.omega_a, p.eta_a), Vec2c(p.omega_b, p.eta_b), Vec2c(0.0, kTwoPiI));
}

ExtendedLattice extended_lattice(const QuarticCurve& curve) { return extended_lattice(compute_periods(curve)); }

double on_curve_residual(const QuarticCurve& curve, const DivisorPoint& p) {
  return std::abs(p.mu * p.mu - curve.f(p.lambda));
}

DivisorPoint default_base_point(const QuarticCurve& curve) {
  const double minsep = curve.min_separation();
  const cplx candidates[] = {0.0, 0.5, -0.5, 0.5 * kI, -0.5 * kI, 1.0, -1.0, kI, -kI, 2.0, -2.0, 2.0 * kI, -2.0 * kI};
  cplx best = candidates[0];
  double best_d = -1.0;
  for (const cplx z : candidates) {
    const double d = curve.branch_distance(z);
    if (d >= 0.1 * minsep && d >= 1e-3) {
      best = z;
      best_d = d;
      break;
    }
    if (d > best_d) {
      best = z;
      best_d = d;
    }
  }
  return {best, std::sqrt(curve.f(best))};
}

namespace {

class AbelPath {
 public:
  AbelPath(const QuarticCurve& c, cplx lam, cplx mu) : c_(c), minsep_(c.min_separation()), lam_(lam), mu_(mu) {}

  void line_to(cplx target) {
    if (target == lam_) return;
    // detour around a branch point that sits too close to the interior of the segment
    for (const auto& b : c_.branch_points) {
      const cplx d = target - lam_;
      const double t = ((b - lam_) * std::conj(d)).real() / std::norm(d);
      if (t <= 0.0 || t >= 1.0) continue;
      const cplx foot = lam_ + t * d;
      const double dist = std::abs(b - foot);
      if (dist < 0.05 * minsep_ && std::abs(b - lam_) > 0.05 * minsep_ && std::abs(b - target) > 0.05 * minsep_) {
        cplx normal = kI * d / std::abs(d);
        if (((foot - b) * std::conj(normal)).real() < 0.0) normal = -normal;
        const cplx waypoint = b + 0.1 * minsep_ * normal;
        segment(lam_, waypoint);
        segment(waypoint, target);
        return;
      }
    }
    segment(lam_, target);
  }

  // one full counterclockwise turn around branch point b, starting and ending at the current point
  void loop_around(cplx b) {
    const double r = std::abs(lam_ - b);
    const cplx start = lam_;
    const double radius = r <= 0.5 * minsep_ ? r : 0.3 * minsep_;
    const cplx u = (start - b) / r;
    const cplx ring = b + radius * u;
    line_to(ring);
    constexpr int n = 32;
    for (int i = 1; i <= n; ++i) segment(lam_, b + radius * u * std::polar(1.0, 2.0 * kPi * i / n));
    lam_ = ring;  // snap away the roundoff of the closing chord
    line_to(start);
    lam_ = start;
  }

  const Vec2c& value() const { return acc_; }
  cplx lambda() const { return lam_; }
  cplx mu() const { return mu_; }

 private:
  cplx root_near(cplx lam, cplx guess) const {
    cplx prod = c_.lead;
    for (const auto& b : c_.branch_points) prod *= (lam - b);
    const cplx m = std::sqrt(prod);
    return std::abs(m - guess) <= std::abs(m + guess) ? m : -m;
  }

  void segment(cplx a, cplx b) {
    double dist = std::numeric_limits<double>::infinity();
    for (const auto& bp : c_.branch_points) dist = std::min(dist, point_segment_distance(bp, a, b));
    if (dist < kBranchTol) throw Error(ErrorKind::PathThroughBranchPoint, "integration path meets a branch point");
    const auto [val, mu_b] = integrate(a, b, mu_, 0);
    acc_ += val;
    mu_ = mu_b;
    lam_ = b;
  }

  std::pair<Vec2c, cplx> integrate(cplx a, cplx b, cplx mu_a, int depth) const {
    double dist = std::numeric_limits<double>::infinity();
    for (const auto& bp : c_.branch_points) dist = std::min(dist, point_segment_distance(bp, a, b));
    const double len = std::abs(b - a);
    const cplx mu_b = root_near(b, mu_a);
    if (depth < 60 && (len > 0.5 * dist || std::abs(mu_b - mu_a) > 0.5 * std::abs(mu_a))) {
      const cplx mid = 0.5 * (a + b);
      const auto [v1, mu_m] = integrate(a, mid, mu_a, depth + 1);
      const auto [v2, mu_e] = integrate(mid, b, mu_m, depth + 1);
      return {v1 + v2, mu_e};
    }
    const auto& g = detail::gauss16();
    const cplx half = 0.5 * (b - a), mid = 0.5 * (a + b);
    Vec2c sum = Vec2c::Zero();
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      const cplx lam = mid + half * g.x[i];
      const cplx mu = root_near(lam, mu_a);
      sum += g.w[i] * Vec2c(1.0 / mu, c_.sqrt_lead * lam / mu);
    }
    return {sum * half, mu_b};
  }

  const QuarticCurve& c_;
  double minsep_;
  cplx lam_;
  cplx mu_;
  Vec2c acc_ = Vec2c::Zero();
};

}  // namespace

Vec2c abel_map_extended(const QuarticCurve& curve, const DivisorPoint& p, const DivisorPoint& base,
                        const std::vector<cplx>& path_hint) {
  if (curve.branch_distance(p.lambda) < kBranchTol || curve.branch_distance(base.lambda) < kBranchTol)
    throw Error(ErrorKind::PathThroughBranchPoint, "endpoint within tolerance of a branch point");
  AbelPath path(curve, base.lambda, base.mu);
  for (const cplx w : path_hint) path.line_to(w);
  path.line_to(p.lambda);
  if (std::abs(path.mu() - p.mu) > std::abs(path.mu() + p.mu)) {
    cplx nearest = curve.branch_points[0];
    for (const auto& b : curve.branch_points)
      if (std::abs(b - p.lambda) < std::abs(nearest - p.lambda)) nearest = b;
    path.loop_around(nearest);
  }
  return path.value();
}

std::array<DivisorPoint, 2> eigenvector_divisor(const LaxVariables& lv, bool use_lower_entry) {
  const cplx b = use_lower_entry ? lv.w1 : lv.u1;
  const cplx c = use_lower_entry ? lv.w2 : lv.u2;
  const cplx disc = std::sqrt(b * b - 4.0 * c);
  if (std::abs(disc) <= 1e-8) throw Error(ErrorKind::DegenerateDivisor, "the divisor points collide");
  // numerically stable quadratic roots
  const cplx qq = -0.5 * (b + ((std::conj(b) * disc).real() >= 0.0 ? disc : -disc));
  cplx l1 = qq;
  cplx l2 = c / qq;
  if (qq == cplx{}) {
    l1 = 0.5 * disc;
    l2 = -0.5 * disc;
  }
  if (l2.real() < l1.real() || (l2.real() == l1.real() && l2.imag() < l1.imag())) std::swap(l1, l2);
  const double sign = use_lower_entry ? -1.0 : 1.0;
  return {DivisorPoint{l1, sign * (lv.v1 * l1 + lv.v2)}, DivisorPoint{l2, sign * (lv.v1 * l2 + lv.v2)}};
}

}  // namespace laxjac

#include "laxjac/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dop853_tableau.hpp"
#include "laxjac/error.hpp"

namespace laxjac {

namespace tab = detail::dop853;

RealVector DenseStep::operator()(double t) const {
  const double x = (t - t_old) / (t_new - t_old);
  RealVector y = RealVector::Zero(y_old.size());
  for (int i = 0; i < 7; ++i) {
    y += f_[6 - i];
    if (i % 2 == 0)
      y *= x;
    else
      y *= 1.0 - x;
  }
  return y + y_old;
}

namespace {

bool finite(const RealVector& v) { return v.allFinite(); }

double rms_norm(const RealVector& v, const RealVector& scale) {
  return std::sqrt((v.array() / scale.array()).square().mean());
}

[[noreturn]] void step_failure(const std::string& why, double t) {
  std::ostringstream os;
  os.precision(17);
  os << why << " at t=" << t;
  throw Error(ErrorKind::StepFailure, os.str());
}

}  // namespace

RealVector Dop853::integrate(const OdeRhs& rhs, double t0, const RealVector& y0, double t_end,
                             const std::function<bool(const DenseStep&)>& on_step) {
  stats_ = {};
  const long n = y0.size();
  if (t_end == t0) return y0;
  const double dir = t_end > t0 ? 1.0 : -1.0;
  auto eval = [&](double t, const RealVector& y, RealVector& dy) {
    rhs(t, y, dy);
    ++stats_.evaluations;
  };

  RealVector y = y0;
  RealVector f(n);
  eval(t0, y, f);
  if (!finite(f)) step_failure("non-finite derivative", t0);

  auto scale_of = [&](const RealVector& a, const RealVector& b) {
    return (opt_.atol + a.cwiseAbs().cwiseMax(b.cwiseAbs()).array() * opt_.rtol).matrix().eval();
  };

  double h = opt_.initial_step;
  if (h <= 0.0) {
    const RealVector sc = scale_of(y, y);
    const double d0 = rms_norm(y, sc);
    const double d1 = rms_norm(f, sc);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, std::abs(t_end - t0));
    RealVector y1 = y + dir * h0 * f;
    RealVector f1(n);
    eval(t0 + dir * h0, y1, f1);
    const double d2 = rms_norm(f1 - f, sc) / h0;
    const double h1 = (d1 <= 1e-15 && d2 <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                                     : std::pow(0.01 / std::max(d1, d2), 1.0 / 8.0);
    h = std::min(100 * h0, h1);
  }
  if (opt_.max_step > 0.0) h = std::min(h, opt_.max_step);

  std::array<RealVector, tab::kExtendedStages> k;
  for (auto& v : k) v.resize(n);
  RealVector ytmp(n);
  double t = t0;
  double err_old = 1e-4;
  bool last_rejected = false;
  constexpr double kBeta = 0.04;
  constexpr double kSafety = 0.9;

  DenseStep step;
  while (dir * (t_end - t) > 0.0) {
    if (stats_.accepted + stats_.rejected >= opt_.max_steps) step_failure("maximum step count exceeded", t);
    const double min_step = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    if (h < min_step) step_failure("step size underflow", t);
    bool final_step = false;
    if (dir * (t + dir * h - t_end) >= 0.0) {
      h = std::abs(t_end - t);
      final_step = true;
    }
    const double hs = dir * h;

    k[0] = f;
    for (int s = 1; s < tab::kStages; ++s) {
      ytmp = y;
      for (int j = 0; j < s; ++j)
        if (tab::A[s][j] != 0.0) ytmp += (hs * tab::A[s][j]) * k[j];
      eval(t + tab::C[s] * hs, ytmp, k[s]);
    }
    RealVector y_new = y;
    for (int j = 0; j < tab::kStages; ++j)
      if (tab::A[tab::kStages][j] != 0.0) y_new += (hs * tab::A[tab::kStages][j]) * k[j];
    const double t_new = final_step ? t_end : t + hs;
    eval(t_new, y_new, k[tab::kStages]);

    double err = std::numeric_limits<double>::infinity();
    if (finite(y_new) && finite(k[tab::kStages])) {
      const RealVector sc = scale_of(y, y_new);
      RealVector e5 = RealVector::Zero(n), e3 = RealVector::Zero(n);
      for (int j = 0; j <= tab::kStages; ++j) {
        e5 += tab::E5[j] * k[j];
        e3 += tab::E3[j] * k[j];
      }
      const double n5 = (e5.array() / sc.array()).square().sum();
      const double n3 = (e3.array() / sc.array()).square().sum();
      if (n5 == 0.0 && n3 == 0.0)
        err = 0.0;
      else
        err = h * n5 / std::sqrt((n5 + 0.01 * n3) * double(n));
    }

    if (err <= 1.0) {
      // PI controller (Gustafsson), exponents for an order-8 method with order-7 error estimate
      double fac = err == 0.0 ? 10.0 : kSafety * std::pow(err, -1.0 / 8.0 + 0.75 * kBeta) * std::pow(err_old, kBeta);
      fac = std::clamp(fac, 0.2, 10.0);
      if (last_rejected) fac = std::min(fac, 1.0);
      err_old = std::max(err, 1e-4);

      step.t_old = t;
      step.t_new = t_new;
      step.y_old = y;
      step.y_new = y_new;
      if (on_step) {
        for (int s = tab::kStages + 1; s < tab::kExtendedStages; ++s) {
          ytmp = y;
          for (int j = 0; j < s; ++j)
            if (tab::A[s][j] != 0.0) ytmp += (hs * tab::A[s][j]) * k[j];
          eval(t + tab::C[s] * hs, ytmp, k[s]);
        }
        const RealVector dy = y_new - y;
        step.f_[0] = dy;
        step.f_[1] = hs * f - dy;
        step.f_[2] = 2.0 * dy - hs * (k[tab::kStages] + f);
        for (int r = 0; r < 4; ++r) {
          RealVector acc = RealVector::Zero(n);
          for (int j = 0; j < tab::kExtendedStages; ++j)
            if (tab::D[r][j] != 0.0) acc += tab::D[r][j] * k[j];
          step.f_[3 + r] = hs * acc;
        }
      }
      t = t_new;
      y = y_new;
      f = k[tab::kStages];
      ++stats_.accepted;
      last_rejected = false;
      h *= fac;
      if (opt_.max_step > 0.0) h = std::min(h, opt_.max_step);
      if (on_step && !on_step(step)) break;
    } else {
      ++stats_.rejected;
      last_rejected = true;
      const double fac = std::isfinite(err) ? std::max(0.2, kSafety * std::pow(err, -1.0 / 8.0)) : 0.1;
      h *= fac;
    }
  }
  return y;
}

std::vector<RealVector> Dop853::sample(const OdeRhs& rhs, double t0, const RealVector& y0,
                                       const std::vector<double>& times) {
  std::vector<RealVector> out;
  out.reserve(times.size());
  std::size_t next = 0;
  while (next < times.size() && times[next] == t0) {
    out.push_back(y0);
    ++next;
  }
  if (next == times.size()) return out;
  const double t_end = times.back();
  const double dir = t_end > t0 ? 1.0 : -1.0;
  integrate(rhs, t0, y0, t_end, [&](const DenseStep& s) {
    while (next < times.size() && dir * (times[next] - s.t_new) <= 0.0) {
      out.push_back(times[next] == s.t_new ? s.y_new : s(times[next]));
      ++next;
    }
    return true;
  });
  if (out.size() != times.size()) throw Error(ErrorKind::StepFailure, "integration stopped before the last sample");
  return out;
}

}  // namespace laxjac

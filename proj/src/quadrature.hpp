// Gauss-Legendre rules and the composite refinement loop shared by the contour integrals.
#pragma once

#include <cmath>
#include <numbers>
#include <type_traits>
#include <vector>

namespace laxjac::detail {

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

inline GaussRule make_gauss_rule(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.x[i] = -z;
    r.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return r;
}

inline const GaussRule& gauss64() {
  static const GaussRule rule = make_gauss_rule(64);
  return rule;
}

inline const GaussRule& gauss16() {
  static const GaussRule rule = make_gauss_rule(16);
  return rule;
}

template <class T>
T zero_of() {
  if constexpr (requires { T::Zero(); })
    return T::Zero();
  else
    return T{};
}

/// Composite 64-point rule on [a, b] with nseg equal panels. f is never evaluated at a or b.
template <class F>
auto composite_gauss(const F& f, double a, double b, int nseg) {
  using T = std::decay_t<decltype(f(a))>;
  const auto& g = gauss64();
  const double h = (b - a) / nseg;
  T sum = zero_of<T>();
  for (int s = 0; s < nseg; ++s) {
    const double mid = a + (s + 0.5) * h;
    T panel = zero_of<T>();
    for (std::size_t i = 0; i < g.x.size(); ++i) panel += g.w[i] * f(mid + 0.5 * h * g.x[i]);
    sum += panel * (0.5 * h);
  }
  return sum;
}

/// Doubles the panel count until two successive values agree to rel_tol.
template <class F, class Norm>
auto refined_gauss(const F& f, double a, double b, double rel_tol, const Norm& norm, int max_panels = 4096) {
  int nseg = 1;
  auto prev = composite_gauss(f, a, b, nseg);
  while (true) {
    nseg *= 2;
    auto next = composite_gauss(f, a, b, nseg);
    const double scale = std::max(norm(next), 1e-300);
    if (norm(next - prev) <= rel_tol * scale || nseg >= max_panels) return next;
    prev = next;
  }
}

}  // namespace laxjac::detail

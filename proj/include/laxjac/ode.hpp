#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace laxjac {

using RealVector = Eigen::VectorXd;
using OdeRhs = std::function<void(double t, const RealVector& y, RealVector& dy)>;

struct OdeOptions {
  double rtol = 1e-12;
  double atol = 1e-12;
  double initial_step = 0.0;  // 0 selects automatically
  double max_step = 0.0;      // 0 means unbounded
  long max_steps = 2'000'000;
};

/// One accepted step with its 7th-order continuous extension.
class DenseStep {
 public:
  double t_old = 0.0;
  double t_new = 0.0;
  RealVector y_old;
  RealVector y_new;

  RealVector operator()(double t) const;

 private:
  friend class Dop853;
  std::array<RealVector, 7> f_;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
  long evaluations = 0;
};

/// Dormand-Prince 8(5,3) with PI step-size control. Works in either time direction.
class Dop853 {
 public:
  explicit Dop853(OdeOptions options = {}) : opt_(options) {}

  /// Integrates from t0 to t_end. on_step is called after every accepted step; returning
  /// false stops the integration early. Returns the final state.
  RealVector integrate(const OdeRhs& rhs, double t0, const RealVector& y0, double t_end,
                       const std::function<bool(const DenseStep&)>& on_step = {});

  /// Integrates and returns the solution at the requested (monotone) output times.
  std::vector<RealVector> sample(const OdeRhs& rhs, double t0, const RealVector& y0,
                                 const std::vector<double>& times);

  const OdeStats& stats() const { return stats_; }

 private:
  OdeOptions opt_;
  OdeStats stats_;
};

}  // namespace laxjac

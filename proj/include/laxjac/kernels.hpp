#pragma once

#include <string>
#include <utility>
#include <vector>

#include "laxjac/curves.hpp"
#include "laxjac/error.hpp"
#include "laxjac/exec.hpp"
#include "laxjac/monodromy.hpp"

namespace laxjac {

struct AbelSample {
  Vec2c z = Vec2c::Zero();
  bool ok = true;
  ErrorKind error = ErrorKind::InvalidArgument;
  std::string message;
};

/// Divisor Abel sums for every state, one independent slot per sample.
std::vector<AbelSample> abel_sums(const QuarticCurve& curve, const std::vector<PendulumState>& states,
                                  const DivisorPoint& base, bool use_lower_entry, ExecPolicy policy);

struct PeriodSlot {
  PeriodData periods;
  ExtendedLattice lattice;
  bool ok = true;
  std::string error;
};

/// Periods and extended lattices of the pendulum curves at the given (h, k).
std::vector<PeriodSlot> batch_periods(const std::vector<std::pair<cplx, cplx>>& hk, ExecPolicy policy);

/// Discriminant values on the grid, index i * nk + j for (h_i, k_j).
std::vector<double> discriminant_grid(const GridSpec& grid, ExecPolicy policy);

struct FrequencySlot {
  double h = 0.0, k = 0.0;
  FrequencyResult result;
  bool ok = true;
  std::string error;
};

/// Frequency map on the grid, index i * nk + j; failures are kept per slot.
std::vector<FrequencySlot> frequency_grid(const GridSpec& grid, const FrequencyOptions& opt, ExecPolicy policy);

}  // namespace laxjac

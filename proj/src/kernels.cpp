#include "laxjac/kernels.hpp"

#include <omp.h>

#include "laxjac/jacobian.hpp"

namespace laxjac {

namespace {

// Runs body(i) for i in [0, n) either serially or over OpenMP threads. body writes only
// to its own slot, so the result does not depend on the schedule.
// Cheap uniform bodies use a static schedule; expensive, uneven ones (quadrature, fits) dynamic.
template <class Body>
void for_each_slot(long n, ExecPolicy policy, const Body& body, bool uniform = false) {
  if (policy == ExecPolicy::Serial) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  if (uniform) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) body(i);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) body(i);
  }
}

}  // namespace

std::vector<AbelSample> abel_sums(const QuarticCurve& curve, const std::vector<PendulumState>& states,
                                  const DivisorPoint& base, bool use_lower_entry, ExecPolicy policy) {
  std::vector<AbelSample> out(states.size());
  for_each_slot(long(states.size()), policy, [&](long i) {
    try {
      out[i].z = divisor_abel_sum(curve, states[i], base, use_lower_entry);
    } catch (const Error& e) {
      out[i].ok = false;
      out[i].error = e.kind();
      out[i].message = e.what();
    }
  });
  return out;
}

std::vector<PeriodSlot> batch_periods(const std::vector<std::pair<cplx, cplx>>& hk, ExecPolicy policy) {
  std::vector<PeriodSlot> out(hk.size());
  for_each_slot(long(hk.size()), policy, [&](long i) {
    try {
      const QuarticCurve c = curve_from_hk(hk[i].first, hk[i].second);
      out[i].periods = compute_periods(c);
      out[i].lattice = extended_lattice(out[i].periods);
    } catch (const Error& e) {
      out[i].ok = false;
      out[i].error = e.what();
    }
  });
  return out;
}

std::vector<double> discriminant_grid(const GridSpec& grid, ExecPolicy policy) {
  std::vector<double> out(std::size_t(grid.nh) * grid.nk);
  for_each_slot(long(out.size()), policy, [&](long idx) {
    const int i = int(idx / grid.nk), j = int(idx % grid.nk);
    out[idx] = pendulum_discriminant(grid.h_at(i), grid.k_at(j));
  }, true);
  return out;
}

std::vector<FrequencySlot> frequency_grid(const GridSpec& grid, const FrequencyOptions& opt, ExecPolicy policy) {
  std::vector<FrequencySlot> out(std::size_t(grid.nh) * grid.nk);
  for_each_slot(long(out.size()), policy, [&](long idx) {
    const int i = int(idx / grid.nk), j = int(idx % grid.nk);
    auto& slot = out[idx];
    slot.h = grid.h_at(i);
    slot.k = grid.k_at(j);
    try {
      slot.result = frequency_map(slot.h, slot.k, opt);
    } catch (const Error& e) {
      slot.ok = false;
      slot.error = e.what();
    }
  });
  return out;
}

}  // namespace laxjac

// Serial reference vs OpenMP kernels. Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#include "laxjac/flows.hpp"
#include "laxjac/kernels.hpp"

using namespace laxjac;

namespace {

ExecPolicy policy_of(const benchmark::State& st) { return st.range(0) ? ExecPolicy::Parallel : ExecPolicy::Serial; }

void BM_AbelSums(benchmark::State& st) {
  const PendulumState s0{Vec3c(0.6, 0.0, 0.8), Vec3c(0.0, 1.0, 0.0)};
  const QuarticCurve c = curve_from_hk(1.3, 0.6);
  const DivisorPoint base = default_base_point(c);
  const auto traj = integrate_pendulum(s0, 5.0, 1e-12, 200);
  for (auto _ : st) benchmark::DoNotOptimize(abel_sums(c, traj.states, base, false, policy_of(st)));
  st.SetItemsProcessed(st.iterations() * long(traj.states.size()));
}
BENCHMARK(BM_AbelSums)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BatchPeriods(benchmark::State& st) {
  std::vector<std::pair<cplx, cplx>> hk;
  for (int i = 0; i < 64; ++i) hk.emplace_back(cplx(1.2 + 0.01 * i, 0.05 * (i % 7)), cplx(0.6, 0.01 * i));
  for (auto _ : st) benchmark::DoNotOptimize(batch_periods(hk, policy_of(st)));
  st.SetItemsProcessed(st.iterations() * long(hk.size()));
}
BENCHMARK(BM_BatchPeriods)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DiscriminantGrid(benchmark::State& st) {
  const GridSpec g{-1.5, 3.0, -2.0, 2.0, 1000, 1000};
  for (auto _ : st) benchmark::DoNotOptimize(discriminant_grid(g, policy_of(st)));
  st.SetItemsProcessed(st.iterations() * long(g.nh) * g.nk);
}
BENCHMARK(BM_DiscriminantGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FrequencyGrid(benchmark::State& st) {
  const GridSpec g{1.25, 1.35, 0.55, 0.65, 3, 3};
  for (auto _ : st) benchmark::DoNotOptimize(frequency_grid(g, {}, policy_of(st)));
  st.SetItemsProcessed(st.iterations() * long(g.nh) * g.nk);
}
BENCHMARK(BM_FrequencyGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

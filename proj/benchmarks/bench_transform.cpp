#include <benchmark/benchmark.h>

#include <vector>

#include "common.hpp"
#include "esnufft/plan.hpp"

namespace esnufft::microbench {
namespace {

// Full execute at density 1. args: type, method (0 gm, 1 gmsort, 2 sm), N per axis
void BM_Execute2D(benchmark::State& state) {
  const auto type = state.range(0) == 1 ? TransformType::type1 : TransformType::type2;
  const Method methods[] = {Method::gm, Method::gm_sort, Method::sm};
  PlanOptions opts;
  opts.method = methods[state.range(1)];
  const index_t n = state.range(2);
  const std::vector<index_t> modes{n, n};
  Plan<double> plan(type, modes, 1e-6, opts);
  const auto p = make_points(2, plan.grid().fine_count(), plan.grid().fine, false);
  plan.set_points(p.x[0], p.x[1]);
  std::vector<std::complex<double>> in(static_cast<std::size_t>(plan.input_size()), {1, 0.5});
  std::vector<std::complex<double>> out(static_cast<std::size_t>(plan.output_size()));
  for (auto _ : state) {
    plan.execute(in, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * plan.point_count());
}
BENCHMARK(BM_Execute2D)
    ->ArgNames({"type", "method", "N"})
    ->ArgsProduct({{1, 2}, {0, 1, 2}, {256}})
    ->Unit(benchmark::kMillisecond);

void BM_SetPoints3D(benchmark::State& state) {
  const index_t n = state.range(0);
  const std::vector<index_t> modes{n, n, n};
  Plan<double> plan(TransformType::type1, modes, 1e-6);
  const auto p = make_points(3, plan.grid().fine_count(), plan.grid().fine, false);
  for (auto _ : state) plan.set_points(p.x[0], p.x[1], p.x[2]);
  state.SetItemsProcessed(state.iterations() * plan.grid().fine_count());
}
BENCHMARK(BM_SetPoints3D)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace esnufft::microbench

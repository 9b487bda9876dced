#include <benchmark/benchmark.h>

#include <vector>

#include "common.hpp"
#include "esnufft/binsort.hpp"
#include "esnufft/grid.hpp"
#include "esnufft/interp.hpp"
#include "esnufft/kernel.hpp"
#include "esnufft/spread.hpp"

namespace esnufft::microbench {
namespace {

// args: N per axis, method (0 gm, 1 gmsort, 2 sm), clustered
void BM_Spread2D(benchmark::State& state) {
  const index_t n = state.range(0);
  const auto method = static_cast<int>(state.range(1));
  const bool cluster = state.range(2) != 0;
  const std::vector<index_t> modes{n, n};
  const double eps = 1e-5;
  const auto grid = make_grid_spec(modes, kernel_width(eps, Precision::double_));
  const auto params = select_kernel_params(eps, grid, Precision::double_);
  const auto p = make_points(2, grid.fine_count(), grid.fine, cluster);
  const auto layout = bin_sort(p.view(), grid, default_bin_dims(2));
  const auto subs = build_subproblems(layout, default_max_subproblem_size, params);
  Spreader<double> spreader(grid, params);
  std::vector<std::complex<double>> fine(static_cast<std::size_t>(grid.fine_count()));
  for (auto _ : state) {
    if (method == 0) {
      spreader.spread_gm(p.view(), p.c, fine);
    } else if (method == 1) {
      spreader.spread_gm_sort(p.view(), layout, p.c, fine);
    } else {
      spreader.spread_sm(p.view(), layout, subs, p.c, fine);
    }
    benchmark::DoNotOptimize(fine.data());
  }
  state.SetItemsProcessed(state.iterations() * grid.fine_count());
}
BENCHMARK(BM_Spread2D)
    ->ArgNames({"N", "method", "cluster"})
    ->ArgsProduct({{128, 512}, {0, 1, 2}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

void BM_Interp2D(benchmark::State& state) {
  const index_t n = state.range(0);
  const bool sorted = state.range(1) != 0;
  const std::vector<index_t> modes{n, n};
  const auto grid = make_grid_spec(modes, kernel_width(1e-5, Precision::double_));
  const auto params = select_kernel_params(1e-5, grid, Precision::double_);
  const auto p = make_points(2, grid.fine_count(), grid.fine, false);
  const auto layout = bin_sort(p.view(), grid, default_bin_dims(2));
  FootprintEvaluator kernel(grid, params);
  std::vector<std::complex<double>> fine(static_cast<std::size_t>(grid.fine_count()), {1, 0});
  std::vector<std::complex<double>> out(p.c.size());
  for (auto _ : state) {
    interpolate<double>(p.view(), sorted ? &layout : nullptr, kernel, grid, fine, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * grid.fine_count());
}
BENCHMARK(BM_Interp2D)
    ->ArgNames({"N", "sorted"})
    ->ArgsProduct({{128, 512}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace esnufft::microbench

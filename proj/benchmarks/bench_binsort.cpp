#include <benchmark/benchmark.h>

#include <vector>

#include "common.hpp"
#include "esnufft/binsort.hpp"
#include "esnufft/grid.hpp"
#include "esnufft/kernel.hpp"

namespace esnufft::microbench {
namespace {

// args: dim, N per axis, clustered
void BM_BinSort(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const index_t n = state.range(1);
  const bool cluster = state.range(2) != 0;
  const std::vector<index_t> modes(static_cast<std::size_t>(dim), n);
  const auto grid = make_grid_spec(modes, kernel_width(1e-5, Precision::double_));
  const auto p = make_points(dim, grid.fine_count(), grid.fine, cluster);
  const auto bins = default_bin_dims(dim);
  for (auto _ : state) {
    auto layout = bin_sort(p.view(), grid, bins);
    benchmark::DoNotOptimize(layout.permutation.data());
  }
  state.SetItemsProcessed(state.iterations() * grid.fine_count());
}
BENCHMARK(BM_BinSort)
    ->ArgNames({"dim", "N", "cluster"})
    ->Args({2, 256, 0})
    ->Args({2, 256, 1})
    ->Args({2, 1024, 0})
    ->Args({3, 32, 0})
    ->Args({3, 64, 0})
    ->Unit(benchmark::kMillisecond);

void BM_Subproblems(benchmark::State& state) {
  const index_t n = state.range(0);
  const std::vector<index_t> modes{n, n};
  const auto grid = make_grid_spec(modes, kernel_width(1e-5, Precision::double_));
  const auto params = select_kernel_params(1e-5, grid, Precision::double_);
  const auto p = make_points(2, grid.fine_count(), grid.fine, state.range(1) != 0);
  const auto layout = bin_sort(p.view(), grid, default_bin_dims(2));
  for (auto _ : state) {
    auto set = build_subproblems(layout, default_max_subproblem_size, params);
    benchmark::DoNotOptimize(set.items.data());
  }
}
BENCHMARK(BM_Subproblems)->ArgNames({"N", "cluster"})->ArgsProduct({{256, 1024}, {0, 1}});

}  // namespace
}  // namespace esnufft::microbench

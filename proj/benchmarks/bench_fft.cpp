#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "esnufft/fft.hpp"

namespace esnufft::microbench {
namespace {

template <class T>
void BM_Fft2D(benchmark::State& state) {
  const index_t n = state.range(0);
  const std::array<index_t, 3> dims{n, n, 1};
  FftNd<T> fft(2, dims);
  std::vector<std::complex<T>> data(static_cast<std::size_t>(n * n), {1, 0});
  for (auto _ : state) {
    fft.transform(data, FftDirection::forward);
    benchmark::DoNotOptimize(data.data());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
// powers of two and mixed 2/3/5 sizes
BENCHMARK(BM_Fft2D<double>)->Arg(256)->Arg(360)->Arg(1024)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Fft2D<float>)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_Fft3D(benchmark::State& state) {
  const index_t n = state.range(0);
  const std::array<index_t, 3> dims{n, n, n};
  FftNd<double> fft(3, dims);
  std::vector<std::complex<double>> data(static_cast<std::size_t>(n * n * n), {1, 0});
  for (auto _ : state) {
    fft.transform(data, FftDirection::inverse);
    benchmark::DoNotOptimize(data.data());
  }
  state.SetItemsProcessed(state.iterations() * n * n * n);
}
BENCHMARK(BM_Fft3D)->Arg(40)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace esnufft::microbench

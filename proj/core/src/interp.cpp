#include "esnufft/interp.hpp"

#include <string>

#include "esnufft/error.hpp"
#include "esnufft/thread_pool.hpp"

namespace esnufft {

template <class T>
std::complex<T> interp_point(const std::array<T, 3>& x, const FootprintEvaluator& kernel,
                             const GridSpec& grid, std::span<const std::complex<T>> fine) {
  KernelFootprint<T> fp;
  kernel(x, fp);
  std::array<std::array<index_t, max_kernel_width>, 3> idx{};
  for (int i = 0; i < 3; ++i) {
    for (int a = 0; a < fp.extent[i]; ++a) idx[i][a] = wrap_index(fp.start[i] + a, grid.fine[i]);
  }
  const index_t n1 = grid.fine[0];
  const index_t n2 = grid.fine[1];
  std::complex<T> total{};
  for (int k = 0; k < fp.extent[2]; ++k) {
    std::complex<T> plane{};
    for (int b = 0; b < fp.extent[1]; ++b) {
      const std::complex<T>* line = fine.data() + (idx[1][b] + n2 * idx[2][k]) * n1;
      std::complex<T> row{};
      for (int a = 0; a < fp.extent[0]; ++a) row += line[idx[0][a]] * fp.weights[0][a];
      plane += row * fp.weights[1][b];
    }
    total += plane * fp.weights[2][k];
  }
  return total;
}

template <class T>
void interpolate(const PointsView<T>& points, const BinLayout* layout,
                 const FootprintEvaluator& kernel, const GridSpec& grid,
                 std::span<const std::complex<T>> fine, std::span<std::complex<T>> out,
                 ThreadPool* pool) {
  const index_t m = points.size();
  if (points.dim != grid.dim) {
    throw Error(ErrorCode::invalid_argument, "point dimension does not match the grid");
  }
  if (static_cast<index_t>(out.size()) != m) {
    throw Error(ErrorCode::length_mismatch,
                "expected " + std::to_string(m) + " outputs, got " + std::to_string(out.size()));
  }
  if (static_cast<index_t>(fine.size()) != grid.fine_count()) {
    throw Error(ErrorCode::length_mismatch, "fine grid buffer has the wrong size");
  }
  if (layout && layout->point_count() != m) {
    throw Error(ErrorCode::length_mismatch, "bin layout was built for a different point set");
  }
  const index_t* order = layout ? layout->permutation.data() : nullptr;
  auto run = [&](index_t begin, index_t end) {
    std::array<T, 3> x{};
    for (index_t pos = begin; pos < end; ++pos) {
      const index_t j = order ? order[pos] : pos;
      for (int i = 0; i < points.dim; ++i) x[i] = points.axis[i][j];
      out[j] = interp_point(x, kernel, grid, fine);
    }
  };
  const index_t chunks = pool ? pool->size() : 1;
  if (chunks == 1 || m < 2) {
    run(0, m);
    return;
  }
  pool->parallel_for(chunks, [&](index_t c, int) {
    const auto [begin, end] = chunk_bounds(m, chunks, c);
    run(begin, end);
  });
}

template std::complex<float> interp_point<float>(const std::array<float, 3>&,
                                                 const FootprintEvaluator&, const GridSpec&,
                                                 std::span<const std::complex<float>>);
template std::complex<double> interp_point<double>(const std::array<double, 3>&,
                                                   const FootprintEvaluator&, const GridSpec&,
                                                   std::span<const std::complex<double>>);
template void interpolate<float>(const PointsView<float>&, const BinLayout*,
                                 const FootprintEvaluator&, const GridSpec&,
                                 std::span<const std::complex<float>>,
                                 std::span<std::complex<float>>, ThreadPool*);
template void interpolate<double>(const PointsView<double>&, const BinLayout*,
                                  const FootprintEvaluator&, const GridSpec&,
                                  std::span<const std::complex<double>>,
                                  std::span<std::complex<double>>, ThreadPool*);

}  // namespace esnufft

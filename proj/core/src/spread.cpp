#include "esnufft/spread.hpp"

#include <algorithm>
#include <string>
#include <type_traits>

#include "esnufft/error.hpp"
#include "esnufft/thread_pool.hpp"

namespace esnufft {
namespace {

template <class T>
std::array<T, 3> point_at(const PointsView<T>& points, index_t j) noexcept {
  std::array<T, 3> x{};
  for (int i = 0; i < points.dim; ++i) x[i] = points.axis[i][j];
  return x;
}

using IndexRows = std::array<std::array<index_t, max_kernel_width>, 3>;

template <class T>
IndexRows wrapped_indices(const KernelFootprint<T>& fp, const GridSpec& grid) noexcept {
  IndexRows idx{};
  for (int i = 0; i < 3; ++i) {
    for (int a = 0; a < fp.extent[i]; ++a) idx[i][a] = wrap_index(fp.start[i] + a, grid.fine[i]);
  }
  return idx;
}

// Visits every footprint row of a point, locking around each row when asked.
// A may be wider than T; products are formed in T and only the sums widen.
template <class T, class A, class Lock>
void spread_rows(const std::array<T, 3>& x, std::complex<T> c, const FootprintEvaluator& kernel,
                 const GridSpec& grid, std::span<std::complex<A>> fine, Lock&& lock_row) {
  KernelFootprint<T> fp;
  kernel(x, fp);
  const IndexRows idx = wrapped_indices(fp, grid);
  const index_t n1 = grid.fine[0];
  const index_t n2 = grid.fine[1];
  std::complex<A>* out = fine.data();
  for (int k = 0; k < fp.extent[2]; ++k) {
    const std::complex<T> v3 = c * fp.weights[2][k];
    for (int b = 0; b < fp.extent[1]; ++b) {
      const std::complex<T> v2 = v3 * fp.weights[1][b];
      const index_t row = idx[1][b] + n2 * idx[2][k];
      [[maybe_unused]] auto guard = lock_row(row);
      std::complex<A>* line = out + row * n1;
      for (int a = 0; a < fp.extent[0]; ++a) {
        line[idx[0][a]] += std::complex<A>(v2 * fp.weights[0][a]);
      }
    }
  }
}

struct NoLock {
  int operator()(index_t) const noexcept { return 0; }
};

template <class T, class Lock>
void merge_rows(const PaddedBinBuffer<T>& source, const GridSpec& grid,
                std::span<std::complex<T>> fine, Lock&& lock_row) {
  const index_t n1 = grid.fine[0];
  const index_t n2 = grid.fine[1];
  const index_t p1 = source.dims[0];
  // axis-0 target columns, shared by every row of the padded bin
  std::vector<index_t> cols(static_cast<std::size_t>(p1));
  for (index_t s = 0; s < p1; ++s) cols[s] = wrap_index(s + source.offset[0], n1);
  const std::complex<T>* in = source.data.data();
  for (index_t s3 = 0; s3 < source.dims[2]; ++s3) {
    const index_t l3 = wrap_index(s3 + source.offset[2], grid.fine[2]);
    for (index_t s2 = 0; s2 < source.dims[1]; ++s2) {
      const index_t l2 = wrap_index(s2 + source.offset[1], n2);
      const index_t row = l2 + n2 * l3;
      const std::complex<T>* src = in + (s2 + source.dims[1] * s3) * p1;
      [[maybe_unused]] auto guard = lock_row(row);
      std::complex<T>* line = fine.data() + row * n1;
      for (index_t s = 0; s < p1; ++s) line[cols[s]] += src[s];
    }
  }
}

}  // namespace

template <class T>
void spread_point(const std::array<T, 3>& x, std::complex<T> c, const FootprintEvaluator& kernel,
                  const GridSpec& grid, std::span<std::complex<T>> fine) {
  spread_rows(x, c, kernel, grid, fine, NoLock{});
}

template <class T>
void spread_point(const std::array<T, 3>& x, std::complex<T> c, const FootprintEvaluator& kernel,
                  PaddedBinBuffer<T>& target) {
  KernelFootprint<T> fp;
  kernel(x, fp);
  std::array<index_t, 3> local{};
  for (int i = 0; i < 3; ++i) {
    local[i] = fp.start[i] - target.offset[i];
    if (local[i] < 0 || local[i] + fp.extent[i] > target.dims[i]) {
      throw Error(ErrorCode::invalid_argument,
                  "kernel footprint leaves the padded bin along axis " + std::to_string(i + 1));
    }
  }
  const index_t p1 = target.dims[0];
  const index_t p2 = target.dims[1];
  std::complex<T>* out = target.data.data();
  for (int k = 0; k < fp.extent[2]; ++k) {
    const std::complex<T> v3 = c * fp.weights[2][k];
    for (int b = 0; b < fp.extent[1]; ++b) {
      const std::complex<T> v2 = v3 * fp.weights[1][b];
      std::complex<T>* line = out + ((local[2] + k) * p2 + local[1] + b) * p1 + local[0];
      for (int a = 0; a < fp.extent[0]; ++a) line[a] += v2 * fp.weights[0][a];
    }
  }
}

template <class T>
void merge_padded_bin(const PaddedBinBuffer<T>& source, const GridSpec& grid,
                      std::span<std::complex<T>> fine) {
  merge_rows(source, grid, fine, NoLock{});
}

template <class T>
Spreader<T>::Spreader(const GridSpec& grid, const KernelParams& params, ThreadPool* pool,
                      bool deterministic)
    : grid_(grid), kernel_(grid, params), pool_(pool), deterministic_(deterministic) {}

template <class T>
int Spreader<T>::workers() const noexcept {
  return pool_ ? pool_->size() : 1;
}

template <class T>
std::size_t Spreader<T>::scratch_bytes() const noexcept {
  std::size_t bytes = wide_.capacity() * sizeof(Accum);
  for (const auto& s : scratch_) bytes += s.capacity() * sizeof(std::complex<T>);
  return bytes;
}

template <class T>
void Spreader<T>::check_sizes(const PointsView<T>& points,
                              std::span<const std::complex<T>> strengths,
                              std::span<std::complex<T>> fine) const {
  if (points.dim != grid_.dim) {
    throw Error(ErrorCode::invalid_argument, "point dimension does not match the grid");
  }
  if (static_cast<index_t>(strengths.size()) != points.size()) {
    throw Error(ErrorCode::length_mismatch,
                "expected " + std::to_string(points.size()) + " strengths, got " +
                    std::to_string(strengths.size()));
  }
  if (static_cast<index_t>(fine.size()) != grid_.fine_count()) {
    throw Error(ErrorCode::length_mismatch, "fine grid buffer has the wrong size");
  }
}

template <class T>
void Spreader<T>::spread_point_latched(const std::array<T, 3>& x, std::complex<T> c,
                                       std::span<Accum> fine) {
  spread_rows(x, c, kernel_, grid_, fine,
              [this](index_t row) { return std::lock_guard(latches_.for_row(row)); });
}

template <class T>
void Spreader<T>::merge_latched(const PaddedBinBuffer<T>& source,
                                std::span<std::complex<T>> fine) {
  merge_rows(source, grid_, fine,
             [this](index_t row) { return std::lock_guard(latches_.for_row(row)); });
}

template <class T>
void Spreader<T>::spread_ordered(const PointsView<T>& points, const index_t* order,
                                 std::span<const std::complex<T>> strengths,
                                 std::span<std::complex<T>> fine) {
  // Single precision sums into a double grid: clustered points can put tens of
  // thousands of terms on one cell, and float rounding then exceeds tolerance.
  std::span<Accum> target;
  if constexpr (std::is_same_v<Accum, std::complex<T>>) {
    target = fine;
  } else {
    wide_.assign(fine.size(), Accum{});
    target = wide_;
  }
  std::fill(target.begin(), target.end(), Accum{});
  const index_t m = points.size();
  auto visit = [&](index_t pos) { return order ? order[pos] : pos; };

  if (workers() == 1 || deterministic_ || m < 2) {
    for (index_t pos = 0; pos < m; ++pos) {
      const index_t j = visit(pos);
      spread_rows(point_at(points, j), strengths[j], kernel_, grid_, target, NoLock{});
    }
  } else {
    const index_t chunks = workers();
    pool_->parallel_for(chunks, [&](index_t c, int) {
      const auto [begin, end] = chunk_bounds(m, chunks, c);
      for (index_t pos = begin; pos < end; ++pos) {
        const index_t j = visit(pos);
        spread_point_latched(point_at(points, j), strengths[j], target);
      }
    });
  }
  if constexpr (!std::is_same_v<Accum, std::complex<T>>) {
    std::transform(wide_.begin(), wide_.end(), fine.begin(),
                   [](Accum v) { return std::complex<T>(v); });
  }
}

template <class T>
void Spreader<T>::spread_gm(const PointsView<T>& points,
                            std::span<const std::complex<T>> strengths,
                            std::span<std::complex<T>> fine) {
  check_sizes(points, strengths, fine);
  spread_ordered(points, nullptr, strengths, fine);
}

template <class T>
void Spreader<T>::spread_gm_sort(const PointsView<T>& points, const BinLayout& layout,
                                 std::span<const std::complex<T>> strengths,
                                 std::span<std::complex<T>> fine) {
  check_sizes(points, strengths, fine);
  if (layout.point_count() != points.size()) {
    throw Error(ErrorCode::length_mismatch, "bin layout was built for a different point set");
  }
  spread_ordered(points, layout.permutation.data(), strengths, fine);
}

template <class T>
void Spreader<T>::spread_sm(const PointsView<T>& points, const BinLayout& layout,
                            const SubproblemSet& subproblems,
                            std::span<const std::complex<T>> strengths,
                            std::span<std::complex<T>> fine) {
  check_sizes(points, strengths, fine);
  if (layout.point_count() != points.size()) {
    throw Error(ErrorCode::length_mismatch, "bin layout was built for a different point set");
  }
  index_t covered = 0;
  for (const auto& s : subproblems.items) covered += s.count;
  if (covered != points.size()) {
    throw Error(ErrorCode::length_mismatch, "subproblems do not cover the point set");
  }
  std::fill(fine.begin(), fine.end(), std::complex<T>{});

  const int w = workers();
  const auto buffer_size = static_cast<std::size_t>(subproblems.max_padded_size());
  scratch_.resize(static_cast<std::size_t>(w));
  for (auto& s : scratch_) {
    if (s.size() < buffer_size) s.resize(buffer_size);
  }

  const auto& items = subproblems.items;
  auto accumulate = [&](const Subproblem& sub, std::vector<std::complex<T>>& storage) {
    PaddedBinBuffer<T> buffer{sub.offset, sub.padded_dims,
                              std::span(storage.data(), static_cast<std::size_t>(
                                                            sub.padded_dims[0] *
                                                            sub.padded_dims[1] *
                                                            sub.padded_dims[2]))};
    std::fill(buffer.data.begin(), buffer.data.end(), std::complex<T>{});
    for (index_t pos = sub.start; pos < sub.start + sub.count; ++pos) {
      const index_t j = layout.permutation[pos];
      spread_point(point_at(points, j), strengths[j], kernel_, buffer);
    }
    return buffer;
  };

  const auto nsub = static_cast<index_t>(items.size());
  if (w == 1) {
    for (const auto& sub : items) merge_padded_bin(accumulate(sub, scratch_[0]), grid_, fine);
    return;
  }
  if (!deterministic_) {
    pool_->parallel_for(nsub, [&](index_t s, int worker) {
      merge_latched(accumulate(items[s], scratch_[worker]), fine);
    });
    return;
  }
  // Deterministic: spread a batch in parallel, one buffer per slot, then merge
  // the batch serially in subproblem order.
  std::vector<PaddedBinBuffer<T>> slots(static_cast<std::size_t>(w));
  for (index_t first = 0; first < nsub; first += w) {
    const index_t batch = std::min<index_t>(w, nsub - first);
    pool_->parallel_for(batch, [&](index_t slot, int) {
      slots[slot] = accumulate(items[first + slot], scratch_[slot]);
    });
    for (index_t slot = 0; slot < batch; ++slot) merge_padded_bin(slots[slot], grid_, fine);
  }
}

template void spread_point<float>(const std::array<float, 3>&, std::complex<float>,
                                  const FootprintEvaluator&, const GridSpec&,
                                  std::span<std::complex<float>>);
template void spread_point<double>(const std::array<double, 3>&, std::complex<double>,
                                   const FootprintEvaluator&, const GridSpec&,
                                   std::span<std::complex<double>>);
template void spread_point<float>(const std::array<float, 3>&, std::complex<float>,
                                  const FootprintEvaluator&, PaddedBinBuffer<float>&);
template void spread_point<double>(const std::array<double, 3>&, std::complex<double>,
                                   const FootprintEvaluator&, PaddedBinBuffer<double>&);
template void merge_padded_bin<float>(const PaddedBinBuffer<float>&, const GridSpec&,
                                      std::span<std::complex<float>>);
template void merge_padded_bin<double>(const PaddedBinBuffer<double>&, const GridSpec&,
                                       std::span<std::complex<double>>);
template class Spreader<float>;
template class Spreader<double>;

}  // namespace esnufft

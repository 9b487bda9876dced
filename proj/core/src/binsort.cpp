#include "esnufft/binsort.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "esnufft/error.hpp"
#include "esnufft/thread_pool.hpp"

namespace esnufft {

std::array<index_t, 3> default_bin_dims(int dim) noexcept {
  if (dim == 3) return {16, 16, 2};
  return {32, 32, 1};
}

std::array<index_t, 3> BinLayout::bin_corner(index_t b) const noexcept {
  std::array<index_t, 3> corner{0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    corner[i] = (b % bins_per_axis[i]) * bin_dims[i];
    b /= bins_per_axis[i];
  }
  return corner;
}

std::array<index_t, 3> BinLayout::bin_extent(index_t b) const noexcept {
  const auto corner = bin_corner(b);
  std::array<index_t, 3> extent{};
  for (int i = 0; i < 3; ++i) extent[i] = std::min(bin_dims[i], fine[i] - corner[i]);
  return extent;
}

index_t SubproblemSet::max_padded_size() const noexcept {
  index_t best = 0;
  for (const auto& s : items) {
    best = std::max(best, s.padded_dims[0] * s.padded_dims[1] * s.padded_dims[2]);
  }
  return best;
}

namespace {

BinLayout empty_layout(const GridSpec& grid, const std::array<index_t, 3>& bin_dims) {
  BinLayout layout;
  layout.dim = grid.dim;
  layout.fine = grid.fine;
  layout.nbins = 1;
  for (int i = 0; i < 3; ++i) {
    const index_t m = i < grid.dim ? bin_dims[i] : 1;
    if (m < 1) {
      throw Error(ErrorCode::invalid_argument,
                  "bin size along axis " + std::to_string(i + 1) + " must be >= 1");
    }
    layout.bin_dims[i] = m;
    layout.bins_per_axis[i] = (grid.fine[i] + m - 1) / m;
    layout.nbins *= layout.bins_per_axis[i];
  }
  return layout;
}

template <class T>
index_t bin_of(const std::array<T, 3>& x, const GridSpec& grid, const std::array<double, 3>& inv_h,
               const std::array<index_t, 3>& bin_dims,
               const std::array<index_t, 3>& bins_per_axis) noexcept {
  index_t bin = 0;
  index_t stride = 1;
  for (int i = 0; i < grid.dim; ++i) {
    auto l = static_cast<index_t>(
        std::floor(fine_coordinate(static_cast<double>(x[i]), inv_h[i])));
    l = std::clamp<index_t>(l, 0, grid.fine[i] - 1);
    bin += (l / bin_dims[i]) * stride;
    stride *= bins_per_axis[i];
  }
  return bin;
}

// Coordinates are binned in double for both precisions, matching FootprintEvaluator.
std::array<double, 3> inverse_spacing(const GridSpec& grid) noexcept {
  std::array<double, 3> inv{};
  for (int i = 0; i < 3; ++i) inv[i] = static_cast<double>(grid.fine[i]) / (2 * std::numbers::pi);
  return inv;
}

}  // namespace

template <class T>
index_t bin_index(std::span<const T> point, const GridSpec& grid,
                  const std::array<index_t, 3>& bin_dims) noexcept {
  std::array<index_t, 3> per_axis{1, 1, 1};
  for (int i = 0; i < grid.dim; ++i) per_axis[i] = (grid.fine[i] + bin_dims[i] - 1) / bin_dims[i];
  std::array<T, 3> x{};
  for (int i = 0; i < grid.dim; ++i) x[i] = point[i];
  return bin_of(x, grid, inverse_spacing(grid), bin_dims, per_axis);
}

void counting_sort_bins(std::span<const index_t> keys, index_t nbins, BinLayout& layout) {
  layout.bin_counts.assign(static_cast<std::size_t>(nbins), 0);
  for (index_t k : keys) ++layout.bin_counts[k];
  layout.bin_starts.assign(static_cast<std::size_t>(nbins), 0);
  index_t running = 0;
  for (index_t b = 0; b < nbins; ++b) {
    layout.bin_starts[b] = running;
    running += layout.bin_counts[b];
  }
  layout.permutation.assign(keys.size(), 0);
  std::vector<index_t> cursor(layout.bin_starts);
  for (std::size_t j = 0; j < keys.size(); ++j) {
    layout.permutation[cursor[keys[j]]++] = static_cast<index_t>(j);
  }
}

template <class T>
BinLayout bin_sort(const PointsView<T>& points, const GridSpec& grid,
                   const std::array<index_t, 3>& bin_dims, ThreadPool* pool) {
  BinLayout layout = empty_layout(grid, bin_dims);
  const index_t m = points.size();
  const auto inv_h = inverse_spacing(grid);

  std::vector<index_t> keys(static_cast<std::size_t>(m));
  const index_t chunks = (pool && m >= 4096) ? pool->size() : 1;
  // hist[c * nbins + b]: points of chunk c in bin b
  std::vector<index_t> hist(static_cast<std::size_t>(chunks * layout.nbins), 0);

  auto key_chunk = [&](index_t c, int) {
    const auto [begin, end] = chunk_bounds(m, chunks, c);
    index_t* h = hist.data() + c * layout.nbins;
    std::array<T, 3> x{};
    for (index_t j = begin; j < end; ++j) {
      for (int i = 0; i < grid.dim; ++i) x[i] = points.axis[i][j];
      const index_t b = bin_of(x, grid, inv_h, layout.bin_dims, layout.bins_per_axis);
      keys[j] = b;
      ++h[b];
    }
  };
  if (chunks > 1) {
    pool->parallel_for(chunks, key_chunk);
  } else {
    key_chunk(0, 0);
  }

  // Merge private histograms into global starts and per-chunk write cursors.
  layout.bin_counts.assign(static_cast<std::size_t>(layout.nbins), 0);
  layout.bin_starts.assign(static_cast<std::size_t>(layout.nbins), 0);
  index_t running = 0;
  for (index_t b = 0; b < layout.nbins; ++b) {
    layout.bin_starts[b] = running;
    for (index_t c = 0; c < chunks; ++c) {
      const index_t count = hist[c * layout.nbins + b];
      hist[c * layout.nbins + b] = running;
      running += count;
    }
    layout.bin_counts[b] = running - layout.bin_starts[b];
  }

  layout.permutation.assign(static_cast<std::size_t>(m), 0);
  auto scatter_chunk = [&](index_t c, int) {
    const auto [begin, end] = chunk_bounds(m, chunks, c);
    index_t* cursor = hist.data() + c * layout.nbins;
    for (index_t j = begin; j < end; ++j) layout.permutation[cursor[keys[j]]++] = j;
  };
  if (chunks > 1) {
    pool->parallel_for(chunks, scatter_chunk);
  } else {
    scatter_chunk(0, 0);
  }
  return layout;
}

SubproblemSet build_subproblems(const BinLayout& layout, index_t max_points,
                                const KernelParams& params) {
  if (max_points < 1) {
    throw Error(ErrorCode::invalid_argument,
                "subproblem size cap must be >= 1, got " + std::to_string(max_points));
  }
  SubproblemSet set;
  set.max_points = max_points;
  const index_t pad = (params.width + 1) / 2;
  for (index_t b = 0; b < layout.nbins; ++b) {
    const index_t count = layout.bin_counts[b];
    if (count == 0) continue;
    const auto corner = layout.bin_corner(b);
    const auto extent = layout.bin_extent(b);
    Subproblem proto;
    proto.bin = b;
    for (int i = 0; i < 3; ++i) {
      const bool active = i < layout.dim;
      proto.offset[i] = active ? corner[i] - pad : 0;
      proto.padded_dims[i] = active ? extent[i] + 2 * pad : 1;
    }
    for (index_t first = 0; first < count; first += max_points) {
      Subproblem s = proto;
      s.start = layout.bin_starts[b] + first;
      s.count = std::min(max_points, count - first);
      set.items.push_back(s);
    }
  }
  return set;
}

template index_t bin_index<float>(std::span<const float>, const GridSpec&,
                                  const std::array<index_t, 3>&) noexcept;
template index_t bin_index<double>(std::span<const double>, const GridSpec&,
                                   const std::array<index_t, 3>&) noexcept;
template BinLayout bin_sort<float>(const PointsView<float>&, const GridSpec&,
                                   const std::array<index_t, 3>&, ThreadPool*);
template BinLayout bin_sort<double>(const PointsView<double>&, const GridSpec&,
                                    const std::array<index_t, 3>&, ThreadPool*);

}  // namespace esnufft

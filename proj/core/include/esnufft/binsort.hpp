#pragma once

#include <array>
#include <span>
#include <vector>

#include "esnufft/grid.hpp"
#include "esnufft/kernel.hpp"
#include "esnufft/types.hpp"

namespace esnufft {

class ThreadPool;

inline constexpr index_t default_max_subproblem_size = 1024;

/// 32x32 in 2D, 16x16x2 in 3D (fine-grid cells per bin).
std::array<index_t, 3> default_bin_dims(int dim) noexcept;

/// Points grouped by the fine-grid bin they fall in.
///
/// Bins tile the fine grid in blocks of `bin_dims` cells (the last block along
/// an axis may be shorter) and are numbered with axis 0 fastest. Points of bin
/// b occupy permutation[bin_starts[b] .. bin_starts[b] + bin_counts[b]), in
/// their original relative order. Indices are 0-based.
struct BinLayout {
  int dim = 0;
  std::array<index_t, 3> fine{1, 1, 1};
  std::array<index_t, 3> bin_dims{1, 1, 1};
  std::array<index_t, 3> bins_per_axis{1, 1, 1};
  index_t nbins = 0;
  std::vector<index_t> bin_counts;
  std::vector<index_t> bin_starts;
  std::vector<index_t> permutation;

  index_t point_count() const noexcept { return static_cast<index_t>(permutation.size()); }
  /// Lower corner of bin b in fine-grid cells.
  std::array<index_t, 3> bin_corner(index_t b) const noexcept;
  /// Actual extent of bin b (smaller than bin_dims at the upper boundary).
  std::array<index_t, 3> bin_extent(index_t b) const noexcept;
};

/// A slice of one bin's points, spread together into a private padded bin.
struct Subproblem {
  index_t bin = 0;
  index_t start = 0;  ///< offset into BinLayout::permutation
  index_t count = 0;
  std::array<index_t, 3> offset{0, 0, 0};       ///< padded-bin corner; may be < 0 or >= n
  std::array<index_t, 3> padded_dims{1, 1, 1};  ///< bin extent + 2*ceil(w/2)
};

struct SubproblemSet {
  index_t max_points = default_max_subproblem_size;
  std::vector<Subproblem> items;

  /// Cell count of the largest padded bin (scratch size needed per worker).
  index_t max_padded_size() const noexcept;
};

/// Bin holding a folded point: l_i = floor((x_i + pi)/h_i) clamped to
/// [0, n_i - 1], then the Cartesian bin number with axis 0 fastest.
template <class T>
index_t bin_index(std::span<const T> point, const GridSpec& grid,
                  const std::array<index_t, 3>& bin_dims) noexcept;

/// Stable counting sort of precomputed bin keys; fills counts, starts and permutation.
void counting_sort_bins(std::span<const index_t> keys, index_t nbins, BinLayout& layout);

/// Bins and sorts a folded point set. Threads, when given, build private
/// histograms over contiguous chunks; the result does not depend on the pool.
template <class T>
BinLayout bin_sort(const PointsView<T>& points, const GridSpec& grid,
                   const std::array<index_t, 3>& bin_dims, ThreadPool* pool = nullptr);

/// Cuts every nonempty bin into ceil(M_b / max_points) consecutive slices.
SubproblemSet build_subproblems(const BinLayout& layout, index_t max_points,
                                const KernelParams& params);

}  // namespace esnufft

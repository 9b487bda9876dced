#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <vector>

#include "esnufft/binsort.hpp"
#include "esnufft/grid.hpp"
#include "esnufft/kernel.hpp"
#include "esnufft/types.hpp"

namespace esnufft {

class ThreadPool;

/// Kernel weights of one point: per axis, `width` consecutive fine-grid cells
/// starting at `start` (unwrapped, may be negative or >= n).
template <class T>
struct KernelFootprint {
  std::array<index_t, 3> start{0, 0, 0};
  std::array<int, 3> extent{1, 1, 1};
  std::array<std::array<T, max_kernel_width>, 3> weights{};
};

/// Computes kernel footprints for a fixed grid and kernel.
///
/// Cells covered along axis i start at ceil(u_i - w/2), u_i = (x_i + pi)/h_i,
/// and each weight is phi_beta((l - u_i) * 2/w), which equals
/// phi_beta((l*h_i - pi - x_i)/alpha_i). Coordinates and weights are formed in
/// double for both precisions and only then rounded to T.
class FootprintEvaluator {
 public:
  FootprintEvaluator(const GridSpec& grid, const KernelParams& params) noexcept
      : dim_(grid.dim), width_(params.width), beta_(params.beta),
        half_width_(0.5 * params.width), z_scale_(2.0 / params.width) {
    for (int i = 0; i < 3; ++i) {
      inv_h_[i] = static_cast<double>(grid.fine[i]) / (2 * std::numbers::pi);
    }
  }

  int dim() const noexcept { return dim_; }
  int width() const noexcept { return width_; }

  template <class T>
  void operator()(const std::array<T, 3>& x, KernelFootprint<T>& fp) const noexcept {
    for (int i = 0; i < 3; ++i) {
      if (i >= dim_) {
        fp.start[i] = 0;
        fp.extent[i] = 1;
        fp.weights[i][0] = T(1);
        continue;
      }
      const double u = fine_coordinate(static_cast<double>(x[i]), inv_h_[i]);
      const double first = std::ceil(u - half_width_);
      fp.start[i] = static_cast<index_t>(first);
      fp.extent[i] = width_;
      const double z0 = (first - u) * z_scale_;
      for (int a = 0; a < width_; ++a) {
        fp.weights[i][a] = static_cast<T>(eval_kernel(beta_, z0 + a * z_scale_));
      }
    }
  }

 private:
  int dim_;
  int width_;
  double beta_;
  double half_width_;
  double z_scale_;
  std::array<double, 3> inv_h_{};
};

/// Local accumulation target covering one padded bin: cells
/// [offset_i, offset_i + dims_i) of the (unwrapped) fine grid.
template <class T>
struct PaddedBinBuffer {
  std::array<index_t, 3> offset{0, 0, 0};
  std::array<index_t, 3> dims{1, 1, 1};
  std::span<std::complex<T>> data;
};

/// Adds c * psi_per(l*h - pi - x) to the global fine grid (indices wrap mod n).
template <class T>
void spread_point(const std::array<T, 3>& x, std::complex<T> c, const FootprintEvaluator& kernel,
                  const GridSpec& grid, std::span<std::complex<T>> fine);

/// Adds the same contribution to a padded bin buffer, without wrapping. The
/// footprint must lie inside the buffer.
template <class T>
void spread_point(const std::array<T, 3>& x, std::complex<T> c, const FootprintEvaluator& kernel,
                  PaddedBinBuffer<T>& target);

/// Adds a padded bin into the global grid: cell s goes to (s + offset) mod n.
template <class T>
void merge_padded_bin(const PaddedBinBuffer<T>& source, const GridSpec& grid,
                      std::span<std::complex<T>> fine);

/// Fixed pool of mutexes guarding fine-grid rows (all cells sharing the
/// indices of axes 1 and 2); row r maps to latch r % size.
class RowLatches {
 public:
  explicit RowLatches(std::size_t count = 1024)
      : count_(count), latches_(std::make_unique<std::mutex[]>(count)) {}
  std::mutex& for_row(index_t row) noexcept {
    return latches_[static_cast<std::size_t>(row) % count_];
  }

 private:
  std::size_t count_;
  std::unique_ptr<std::mutex[]> latches_;
};

/// Type-1 step 1 under the three strategies. Every method overwrites `fine`
/// with the full spread of all points; they differ only in visit order and in
/// how concurrent updates are combined.
///
/// With a pool of one worker, or `deterministic` set, results are
/// bit-reproducible: gm and gm_sort then run serially, and sm still spreads
/// subproblems in parallel but merges them in subproblem order.
///
/// For T = float, gm and gm_sort accumulate into a double grid held by the
/// spreader and round once at the end; sm keeps float padded bins.
template <class T>
class Spreader {
 public:
  Spreader(const GridSpec& grid, const KernelParams& params, ThreadPool* pool = nullptr,
           bool deterministic = false);

  void spread_gm(const PointsView<T>& points, std::span<const std::complex<T>> strengths,
                 std::span<std::complex<T>> fine);
  void spread_gm_sort(const PointsView<T>& points, const BinLayout& layout,
                      std::span<const std::complex<T>> strengths, std::span<std::complex<T>> fine);
  void spread_sm(const PointsView<T>& points, const BinLayout& layout,
                 const SubproblemSet& subproblems, std::span<const std::complex<T>> strengths,
                 std::span<std::complex<T>> fine);

  /// Bytes held in scratch: per-worker padded bins after the last sm call and
  /// the wide accumulation grid after the last single-precision gm call.
  std::size_t scratch_bytes() const noexcept;

 private:
  using Accum = std::complex<double>;

  void check_sizes(const PointsView<T>& points, std::span<const std::complex<T>> strengths,
                   std::span<std::complex<T>> fine) const;
  void spread_ordered(const PointsView<T>& points, const index_t* order,
                      std::span<const std::complex<T>> strengths, std::span<std::complex<T>> fine);
  void spread_point_latched(const std::array<T, 3>& x, std::complex<T> c, std::span<Accum> fine);
  void merge_latched(const PaddedBinBuffer<T>& source, std::span<std::complex<T>> fine);
  int workers() const noexcept;

  GridSpec grid_;
  FootprintEvaluator kernel_;
  ThreadPool* pool_;
  bool deterministic_;
  RowLatches latches_;
  std::vector<std::vector<std::complex<T>>> scratch_;
  std::vector<Accum> wide_;  // float only
};

}  // namespace esnufft

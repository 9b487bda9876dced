#pragma once

#include <array>
#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "esnufft/binsort.hpp"
#include "esnufft/fft.hpp"
#include "esnufft/grid.hpp"
#include "esnufft/kernel.hpp"
#include "esnufft/spread.hpp"
#include "esnufft/thread_pool.hpp"
#include "esnufft/types.hpp"

namespace esnufft {

struct PlanOptions {
  /// Unset picks sm for type 1 and gm_sort for type 2.
  std::optional<Method> method;
  /// Worker threads for spreading, interpolation, sorting and FFTs; 0 = all cores.
  int workers = 0;
  /// Serialize every accumulation into the shared fine grid so repeated
  /// executions are bit-identical regardless of thread count.
  bool deterministic = false;
  /// Bin size in fine-grid cells; unset uses 32x32 (2D) or 16x16x2 (3D).
  std::optional<std::array<index_t, 3>> bin_dims;
  index_t max_subproblem_size = default_max_subproblem_size;
};

Method default_method(TransformType type) noexcept;

/// A nonuniform FFT of type 1 or 2 in two or three dimensions.
///
/// Lifecycle: construct (grid sizing, kernel selection, correction factors and
/// workspace), set_points (fold, bin-sort and split into subproblems as the
/// method requires), then execute any number of times. Destruction releases
/// everything. A plan may be moved between threads but must not be used from
/// two threads at once.
///
/// Uniform-side arrays hold prod(N_i) coefficients ordered with axis 0 fastest
/// and each axis running from -floor(N_i/2) to ceil(N_i/2)-1.
///
///   type 1:  f_k = sum_j c_j exp(-i k.x_j)      input c (M), output f (prod N)
///   type 2:  c_j = sum_k f_k exp(+i k.x_j)      input f (prod N), output c (M)
template <class T>
class Plan {
 public:
  Plan(TransformType type, std::span<const index_t> modes, double epsilon,
       const PlanOptions& options = {});

  Plan(Plan&&) noexcept = default;
  Plan& operator=(Plan&&) noexcept = default;

  /// Binds nonuniform points (one array per axis; `z` only in 3D). Any finite
  /// coordinate is accepted and folded into [-pi, pi). Replaces earlier points.
  void set_points(std::span<const T> x, std::span<const T> y, std::span<const T> z = {});

  void execute(std::span<const std::complex<T>> input, std::span<std::complex<T>> output);

  TransformType type() const noexcept { return type_; }
  Method method() const noexcept { return method_; }
  const GridSpec& grid() const noexcept { return grid_; }
  const KernelParams& kernel() const noexcept { return params_; }
  const CorrectionFactors& correction() const noexcept { return correction_; }
  bool has_points() const noexcept { return has_points_; }
  index_t point_count() const noexcept { return static_cast<index_t>(coords_[0].size()); }
  PointsView<T> points() const noexcept;
  const BinLayout* layout() const noexcept { return layout_ ? &*layout_ : nullptr; }
  const SubproblemSet* subproblems() const noexcept {
    return subproblems_ ? &*subproblems_ : nullptr;
  }
  int workers() const noexcept { return pool_->size(); }
  bool deterministic() const noexcept { return options_.deterministic; }

  /// Input length expected by execute(): M for type 1, prod(N_i) for type 2.
  index_t input_size() const noexcept;
  index_t output_size() const noexcept;

  /// Bytes of plan-owned storage: fine grid, correction arrays, points, bin
  /// layout, subproblems and spreading scratch.
  std::size_t workspace_bytes() const noexcept;

 private:
  template <class U>
  friend void exec_type1(Plan<U>&, std::span<const std::complex<U>>, std::span<std::complex<U>>);
  template <class U>
  friend void exec_type2(Plan<U>&, std::span<const std::complex<U>>, std::span<std::complex<U>>);

  TransformType type_;
  Method method_;
  PlanOptions options_;
  GridSpec grid_;
  KernelParams params_;
  std::vector<std::complex<T>> fine_;  // allocated first so an oversized grid fails fast
  CorrectionFactors correction_;
  std::vector<T> mode_weights_;  // correction times the grid-origin phase
  std::unique_ptr<ThreadPool> pool_;
  FftNd<T> fft_;
  std::unique_ptr<Spreader<T>> spreader_;
  std::array<std::vector<T>, 3> coords_;
  std::optional<BinLayout> layout_;
  std::optional<SubproblemSet> subproblems_;
  bool has_points_ = false;
};

template <class T>
Plan<T> make_plan(TransformType type, std::span<const index_t> modes, double epsilon,
                  const PlanOptions& options = {}) {
  return Plan<T>(type, modes, epsilon, options);
}

extern template class Plan<float>;
extern template class Plan<double>;

}  // namespace esnufft

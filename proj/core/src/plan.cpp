#include "esnufft/plan.hpp"

#include <cmath>
#include <new>
#include <string>

#include "esnufft/error.hpp"
#include "esnufft/pipeline.hpp"

namespace esnufft {

Method default_method(TransformType type) noexcept {
  return type == TransformType::type1 ? Method::sm : Method::gm_sort;
}

namespace {

GridSpec checked_grid(TransformType type, std::span<const index_t> modes, double epsilon,
                      Precision precision) {
  if (type != TransformType::type1 && type != TransformType::type2) {
    throw Error(ErrorCode::invalid_argument, "transform type must be 1 or 2");
  }
  return make_grid_spec(modes, kernel_width(epsilon, precision));
}

template <class T>
std::vector<std::complex<T>> allocate_fine(const GridSpec& grid) {
  const auto cells = grid.fine_count();
  try {
    return std::vector<std::complex<T>>(static_cast<std::size_t>(cells));
  } catch (const std::bad_alloc&) {
  } catch (const std::length_error&) {
  }
  throw Error(ErrorCode::out_of_memory,
              "cannot allocate a fine grid of " + std::to_string(cells) + " cells");
}

}  // namespace

template <class T>
Plan<T>::Plan(TransformType type, std::span<const index_t> modes, double epsilon,
              const PlanOptions& options)
    : type_(type),
      method_(options.method.value_or(default_method(type))),
      options_(options),
      grid_(checked_grid(type, modes, epsilon, precision_of<T>())),
      params_(select_kernel_params(epsilon, grid_, precision_of<T>())),
      fine_(allocate_fine<T>(grid_)),
      correction_(build_correction_factors(grid_, params_)),
      mode_weights_(signed_mode_weights<T>(correction_)),
      pool_(std::make_unique<ThreadPool>(options.workers)),
      fft_(grid_.dim, grid_.fine) {
  if (options.workers < 0) {
    throw Error(ErrorCode::invalid_argument, "worker count must be >= 0");
  }
  if (options.max_subproblem_size < 1) {
    throw Error(ErrorCode::invalid_argument, "subproblem size cap must be >= 1");
  }
  if (!options_.bin_dims) options_.bin_dims = default_bin_dims(grid_.dim);
  for (int i = 0; i < grid_.dim; ++i) {
    if ((*options_.bin_dims)[i] < 1) {
      throw Error(ErrorCode::invalid_argument, "bin sizes must be >= 1");
    }
  }
  spreader_ = std::make_unique<Spreader<T>>(grid_, params_, pool_.get(), options_.deterministic);
}

template <class T>
PointsView<T> Plan<T>::points() const noexcept {
  PointsView<T> view;
  view.dim = grid_.dim;
  for (int i = 0; i < 3; ++i) view.axis[i] = std::span<const T>(coords_[i]);
  return view;
}

template <class T>
void Plan<T>::set_points(std::span<const T> x, std::span<const T> y, std::span<const T> z) {
  const std::array<std::span<const T>, 3> in{x, y, z};
  const auto m = x.size();
  if (y.size() != m || (grid_.dim == 3 && z.size() != m)) {
    throw Error(ErrorCode::length_mismatch, "coordinate arrays must all have the same length");
  }
  if (grid_.dim == 2 && !z.empty()) {
    throw Error(ErrorCode::invalid_argument, "a 2D plan takes no z coordinates");
  }
  for (int i = 0; i < grid_.dim; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!std::isfinite(in[i][j])) {
        throw Error(ErrorCode::invalid_argument,
                    "coordinate " + std::to_string(i + 1) + " of point " + std::to_string(j) +
                        " is not finite");
      }
    }
  }
  has_points_ = false;
  layout_.reset();
  subproblems_.reset();
  for (int i = 0; i < 3; ++i) {
    coords_[i].clear();
    if (i >= grid_.dim) continue;
    coords_[i].resize(m);
    for (std::size_t j = 0; j < m; ++j) coords_[i][j] = fold_coordinate(in[i][j]);
  }
  if (method_ != Method::gm) {
    layout_ = bin_sort(points(), grid_, *options_.bin_dims, pool_.get());
  }
  if (method_ == Method::sm && type_ == TransformType::type1) {
    subproblems_ = build_subproblems(*layout_, options_.max_subproblem_size, params_);
  }
  has_points_ = true;
}

template <class T>
index_t Plan<T>::input_size() const noexcept {
  return type_ == TransformType::type1 ? point_count() : grid_.mode_count();
}

template <class T>
index_t Plan<T>::output_size() const noexcept {
  return type_ == TransformType::type1 ? grid_.mode_count() : point_count();
}

template <class T>
void Plan<T>::execute(std::span<const std::complex<T>> input, std::span<std::complex<T>> output) {
  if (!has_points_) {
    throw Error(ErrorCode::invalid_state, "execute called before set_points");
  }
  if (static_cast<index_t>(input.size()) != input_size()) {
    throw Error(ErrorCode::length_mismatch, "input has " + std::to_string(input.size()) +
                                                " entries, expected " +
                                                std::to_string(input_size()));
  }
  if (static_cast<index_t>(output.size()) != output_size()) {
    throw Error(ErrorCode::length_mismatch, "output has " + std::to_string(output.size()) +
                                                " entries, expected " +
                                                std::to_string(output_size()));
  }
  if (type_ == TransformType::type1) {
    exec_type1(*this, input, output);
  } else {
    exec_type2(*this, input, output);
  }
}

template <class T>
std::size_t Plan<T>::workspace_bytes() const noexcept {
  std::size_t bytes = fine_.capacity() * sizeof(std::complex<T>);
  bytes += correction_.values.capacity() * sizeof(double);
  bytes += mode_weights_.capacity() * sizeof(T);
  for (const auto& c : coords_) bytes += c.capacity() * sizeof(T);
  if (layout_) {
    bytes += (layout_->bin_counts.capacity() + layout_->bin_starts.capacity() +
              layout_->permutation.capacity()) *
             sizeof(index_t);
  }
  if (subproblems_) bytes += subproblems_->items.capacity() * sizeof(Subproblem);
  bytes += spreader_->scratch_bytes();
  return bytes;
}

template class Plan<float>;
template class Plan<double>;

}  // namespace esnufft

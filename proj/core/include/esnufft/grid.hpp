#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>

#include "esnufft/types.hpp"

namespace esnufft {

/// Geometry shared by every stage of a transform.
///
/// `modes` holds N_i, `fine` holds the oversampled sizes n_i and `spacing` the
/// fine-grid spacing h_i = 2*pi/n_i. Axes past `dim` are padded with 1 so
/// loops can always run over three axes. Arrays on either grid are stored with
/// axis 0 fastest.
///
/// Fine-grid index l along an axis sits at coordinate -pi + l*h, so the grid
/// covers the periodic box [-pi, pi) in the same orientation as the points.
struct GridSpec {
  static constexpr double sigma = 2.0;

  int dim = 0;
  std::array<index_t, 3> modes{1, 1, 1};
  std::array<index_t, 3> fine{1, 1, 1};
  std::array<double, 3> spacing{2 * std::numbers::pi, 2 * std::numbers::pi,
                                2 * std::numbers::pi};

  index_t mode_count() const noexcept { return modes[0] * modes[1] * modes[2]; }
  index_t fine_count() const noexcept { return fine[0] * fine[1] * fine[2]; }
};

/// Smallest integer >= n of the form 2^q 3^p 5^r. Throws on overflow or n < 1.
index_t next_smooth(index_t n);

/// True when n factors completely over {2, 3, 5}.
bool is_smooth(index_t n) noexcept;

/// Sizes the fine grid: n_i = next_smooth(max(sigma*N_i, 2*width)).
GridSpec make_grid_spec(std::span<const index_t> modes, int width);

/// Lowest frequency on an axis with N modes (-floor(N/2)); the axis runs
/// through lowest .. lowest+N-1.
constexpr index_t lowest_mode(index_t n_modes) noexcept { return -(n_modes / 2); }

/// Position of frequency k in an unshifted DFT array of length n.
constexpr index_t wrap_index(index_t k, index_t n) noexcept {
  const index_t r = k % n;
  return r < 0 ? r + n : r;
}

/// Reduces a finite coordinate into [-pi, pi) by whole periods.
template <class T>
T fold_coordinate(T x) noexcept {
  constexpr T pi = std::numbers::pi_v<T>;
  if (x >= -pi && x < pi) return x;
  constexpr T two_pi = 2 * pi;
  T r = std::fmod(x + pi, two_pi);
  if (r < 0) r += two_pi;
  r -= pi;
  if (r >= pi) r -= two_pi;
  if (r < -pi) r = -pi;
  return r;
}

/// Continuous fine-grid coordinate of a folded point: (x + pi) / h, in [0, n].
/// Binning, spreading and interpolation all go through this one formula so
/// they agree to the last bit.
template <class T>
inline T fine_coordinate(T x, T inv_spacing) noexcept {
  return (x + std::numbers::pi_v<T>) * inv_spacing;
}

}  // namespace esnufft

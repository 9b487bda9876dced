#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "esnufft/grid.hpp"
#include "esnufft/types.hpp"

namespace esnufft {

/// Exponential-of-semicircle kernel parameters chosen from a tolerance.
struct KernelParams {
  double epsilon = 0;                  ///< tolerance actually used (after any clamp)
  double requested_epsilon = 0;        ///< tolerance the caller asked for
  int width = 0;                       ///< w, kernel support in fine-grid cells
  double beta = 0;                     ///< shape parameter, 2.30 * w
  std::array<double, 3> alpha{1, 1, 1};  ///< per-axis rescale w*pi/n_i
  Precision precision = Precision::double_;

  bool epsilon_clamped() const noexcept { return epsilon != requested_epsilon; }
};

inline constexpr int min_kernel_width = 2;
inline constexpr int max_kernel_width = 16;
inline constexpr double beta_per_width = 2.30;
inline constexpr double single_precision_epsilon_floor = 1e-6;

/// w = ceil(log10(1/eps)) + 1, clamped to [2, 16]. Single precision raises eps
/// to 1e-6 first. Throws unless eps is finite and in (0, 1).
int kernel_width(double epsilon, Precision precision);

KernelParams select_kernel_params(double epsilon, const GridSpec& grid, Precision precision);

/// phi_beta(z) = exp(beta*(sqrt(1-z^2)-1)) on |z| <= 1, zero elsewhere.
template <class T>
inline T eval_kernel(T beta, T z) noexcept {
  if (!(std::abs(z) <= T(1))) return T(0);
  return std::exp(beta * (std::sqrt(T(1) - z * z) - T(1)));
}

/// Fourier transform of the kernel, int_{-1}^{1} phi_beta(z) cos(xi z) dz.
///
/// Evaluated as int_{-pi/2}^{pi/2} e^{beta(cos t - 1)} cos(xi sin t) cos t dt
/// with 100-point Gauss-Legendre; the substitution z = sin t removes the
/// square-root endpoint behaviour so the rule converges spectrally.
/// Throws numerical_failure if the result is lost to underflow or cancellation,
/// or if |xi| > 48 (correction factors only need |xi| <= w pi / 4).
double kernel_fourier(double beta, double xi);

/// Deconvolution multipliers p_k = (2/w)^d / prod_i phihat(alpha_i k_i) over the
/// centred mode grid, axis 0 fastest, each axis running from lowest_mode(N_i).
struct CorrectionFactors {
  int dim = 0;
  std::array<index_t, 3> modes{1, 1, 1};
  std::array<std::vector<double>, 3> axis;  ///< 1/phihat(alpha_i k_i) per axis
  std::vector<double> values;

  double at(std::array<index_t, 3> k) const noexcept;
};

CorrectionFactors build_correction_factors(const GridSpec& grid, const KernelParams& params);

}  // namespace esnufft

#include "esnufft/kernel.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

#include "esnufft/error.hpp"

namespace esnufft {
namespace {

constexpr int quadrature_order = 100;
// The rule stops resolving cos(xi sin t) a little above this.
constexpr double max_resolved_frequency = 48;

// Extended precision: the oscillatory tail of the transform loses digits to cancellation.
using quad_real = long double;

struct GaussLegendre {
  std::array<quad_real, quadrature_order> nodes{};
  std::array<quad_real, quadrature_order> weights{};

  GaussLegendre() {
    // Newton on P_n from the Chebyshev-like initial guesses; symmetric pairs.
    constexpr int n = quadrature_order;
    const auto legendre = [](quad_real x, quad_real& p0, quad_real& p1) {
      p0 = 1;
      p1 = x;
      for (int k = 2; k <= n; ++k) {
        const quad_real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
    };
    for (int i = 0; i < (n + 1) / 2; ++i) {
      quad_real x = std::cos(std::numbers::pi_v<quad_real> * (i + 0.75L) / (n + 0.5L));
      quad_real p0, p1;
      for (int iter = 0; iter < 100; ++iter) {
        legendre(x, p0, p1);
        const quad_real dx = p1 / (n * (x * p1 - p0) / (x * x - 1));
        x -= dx;
        if (std::abs(dx) < 1e-19L) break;
      }
      legendre(x, p0, p1);
      const quad_real dp = n * (x * p1 - p0) / (x * x - 1);
      const quad_real w = 2 / ((1 - x * x) * dp * dp);
      nodes[i] = -x;
      nodes[n - 1 - i] = x;
      weights[i] = w;
      weights[n - 1 - i] = w;
    }
  }
};

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre rule;
  return rule;
}

}  // namespace

int kernel_width(double epsilon, Precision precision) {
  if (!std::isfinite(epsilon) || epsilon <= 0 || epsilon >= 1) {
    throw Error(ErrorCode::invalid_argument,
                "tolerance must be finite and in (0, 1), got " + std::to_string(epsilon));
  }
  if (precision == Precision::single) {
    epsilon = std::max(epsilon, single_precision_epsilon_floor);
  }
  // -log10 of an exact power of ten can land a hair above the integer (1e-5 is
  // not representable); snap those back so ceil() does not add a spurious cell.
  double digits = -std::log10(epsilon);
  const double nearest = std::round(digits);
  if (std::abs(digits - nearest) < 1e-9) digits = nearest;
  const int w = static_cast<int>(std::ceil(digits)) + 1;
  return std::clamp(w, min_kernel_width, max_kernel_width);
}

KernelParams select_kernel_params(double epsilon, const GridSpec& grid, Precision precision) {
  KernelParams p;
  p.width = kernel_width(epsilon, precision);
  p.requested_epsilon = epsilon;
  p.epsilon = precision == Precision::single
                  ? std::max(epsilon, single_precision_epsilon_floor)
                  : epsilon;
  p.beta = beta_per_width * p.width;
  p.precision = precision;
  for (int i = 0; i < 3; ++i) {
    p.alpha[i] = i < grid.dim ? p.width * std::numbers::pi / static_cast<double>(grid.fine[i])
                              : 1.0;
  }
  return p;
}

double kernel_fourier(double beta, double xi) {
  if (!(std::abs(xi) <= max_resolved_frequency)) {
    throw Error(ErrorCode::numerical_failure,
                "frequency " + std::to_string(xi) + " is beyond the quadrature resolution");
  }
  const auto& rule = gauss_legendre();
  constexpr quad_real half_pi = std::numbers::pi_v<quad_real> / 2;
  const quad_real b = beta;
  const quad_real k = xi;
  quad_real sum = 0;
  quad_real magnitude = 0;
  for (int i = 0; i < quadrature_order; ++i) {
    const quad_real t = half_pi * rule.nodes[i];
    const quad_real c = std::cos(t);
    const quad_real envelope = rule.weights[i] * std::exp(b * (c - 1)) * c;
    sum += envelope * std::cos(k * std::sin(t));
    magnitude += envelope;
  }
  const double value = static_cast<double>(half_pi * sum);
  // below this the result is cancellation noise and 1/value is meaningless
  const double floor = 1e3 * std::numeric_limits<double>::epsilon() *
                       static_cast<double>(half_pi * magnitude);
  if (!std::isfinite(value) || std::abs(value) < floor ||
      std::abs(value) < 1e3 * std::numeric_limits<double>::min()) {
    throw Error(ErrorCode::numerical_failure,
                "kernel Fourier transform underflows at beta=" + std::to_string(beta) +
                    ", xi=" + std::to_string(xi));
  }
  return value;
}

double CorrectionFactors::at(std::array<index_t, 3> k) const noexcept {
  index_t offset = 0;
  index_t stride = 1;
  for (int i = 0; i < dim; ++i) {
    offset += (k[i] - lowest_mode(modes[i])) * stride;
    stride *= modes[i];
  }
  return values[static_cast<std::size_t>(offset)];
}

CorrectionFactors build_correction_factors(const GridSpec& grid, const KernelParams& params) {
  CorrectionFactors cf;
  cf.dim = grid.dim;
  cf.modes = grid.modes;
  for (int i = 0; i < 3; ++i) {
    const index_t n_modes = i < grid.dim ? grid.modes[i] : 1;
    auto& row = cf.axis[i];
    row.assign(static_cast<std::size_t>(n_modes), 1.0);
    if (i >= grid.dim) continue;
    const index_t k0 = lowest_mode(n_modes);
    for (index_t j = 0; j < n_modes; ++j) {
      const index_t k = k0 + j;
      // phihat is even; reuse the mirrored entry when it has been computed
      const index_t mirror = -k - k0;
      if (k > 0 && mirror >= 0 && mirror < j) {
        row[j] = row[mirror];
        continue;
      }
      const double ft = kernel_fourier(params.beta, params.alpha[i] * static_cast<double>(k));
      if (!(ft > 0)) {
        throw Error(ErrorCode::numerical_failure,
                    "kernel Fourier transform is not positive at mode " + std::to_string(k));
      }
      row[j] = 1.0 / ft;
    }
  }
  const double scale = std::pow(2.0 / params.width, grid.dim);
  cf.values.resize(static_cast<std::size_t>(grid.mode_count()));
  std::size_t idx = 0;
  for (index_t k3 = 0; k3 < grid.modes[2]; ++k3) {
    for (index_t k2 = 0; k2 < grid.modes[1]; ++k2) {
      const double outer = scale * cf.axis[2][k3] * cf.axis[1][k2];
      for (index_t k1 = 0; k1 < grid.modes[0]; ++k1) {
        cf.values[idx++] = outer * cf.axis[0][k1];
      }
    }
  }
  return cf;
}

}  // namespace esnufft

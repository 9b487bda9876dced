#include "esnufft/pipeline.hpp"

#include <algorithm>
#include <string>

#include "esnufft/error.hpp"
#include "esnufft/interp.hpp"

namespace esnufft {
namespace {

void check_lengths(std::size_t modes, std::size_t spectrum, std::size_t factors,
                   const GridSpec& grid) {
  if (static_cast<index_t>(modes) != grid.mode_count() ||
      static_cast<index_t>(factors) != grid.mode_count()) {
    throw Error(ErrorCode::length_mismatch,
                "mode array must have " + std::to_string(grid.mode_count()) + " entries");
  }
  if (static_cast<index_t>(spectrum) != grid.fine_count()) {
    throw Error(ErrorCode::length_mismatch,
                "spectrum must have " + std::to_string(grid.fine_count()) + " entries");
  }
}

// Calls visit(mode_offset, spectrum_offset) over the centred mode grid.
template <class Visit>
void for_each_mode(const GridSpec& grid, Visit&& visit) {
  const auto& N = grid.modes;
  const auto& n = grid.fine;
  std::size_t idx = 0;
  for (index_t j3 = 0; j3 < N[2]; ++j3) {
    const index_t l3 = wrap_index(lowest_mode(N[2]) + j3, n[2]);
    for (index_t j2 = 0; j2 < N[1]; ++j2) {
      const index_t row = (wrap_index(lowest_mode(N[1]) + j2, n[1]) + n[1] * l3) * n[0];
      const index_t k1 = lowest_mode(N[0]);
      for (index_t j1 = 0; j1 < N[0]; ++j1) {
        visit(idx++, static_cast<std::size_t>(row + wrap_index(k1 + j1, n[0])));
      }
    }
  }
}

}  // namespace

template <class T>
void deconvolve_type1(std::span<const std::complex<T>> spectrum, const GridSpec& grid,
                      std::span<const T> factors, std::span<std::complex<T>> modes) {
  check_lengths(modes.size(), spectrum.size(), factors.size(), grid);
  for_each_mode(grid, [&](std::size_t m, std::size_t s) { modes[m] = factors[m] * spectrum[s]; });
}

template <class T>
void deconvolve_type2(std::span<const std::complex<T>> modes, const GridSpec& grid,
                      std::span<const T> factors, std::span<std::complex<T>> spectrum) {
  check_lengths(modes.size(), spectrum.size(), factors.size(), grid);
  std::fill(spectrum.begin(), spectrum.end(), std::complex<T>{});
  for_each_mode(grid, [&](std::size_t m, std::size_t s) { spectrum[s] = factors[m] * modes[m]; });
}

template <class T>
std::vector<T> signed_mode_weights(const CorrectionFactors& correction) {
  std::vector<T> weights(correction.values.size());
  const auto& N = correction.modes;
  std::size_t idx = 0;
  for (index_t j3 = 0; j3 < N[2]; ++j3) {
    for (index_t j2 = 0; j2 < N[1]; ++j2) {
      for (index_t j1 = 0; j1 < N[0]; ++j1, ++idx) {
        const index_t ksum = (lowest_mode(N[0]) + j1) + (lowest_mode(N[1]) + j2) +
                             (lowest_mode(N[2]) + j3);
        const double v = correction.values[idx];
        weights[idx] = static_cast<T>(ksum % 2 == 0 ? v : -v);
      }
    }
  }
  return weights;
}

template <class T>
void exec_type1(Plan<T>& plan, std::span<const std::complex<T>> strengths,
                std::span<std::complex<T>> modes) {
  const PointsView<T> points = plan.points();
  std::span<std::complex<T>> fine(plan.fine_);
  Spreader<T>& spreader = *plan.spreader_;
  switch (plan.method_) {
    case Method::gm:
      spreader.spread_gm(points, strengths, fine);
      break;
    case Method::gm_sort:
      spreader.spread_gm_sort(points, *plan.layout_, strengths, fine);
      break;
    case Method::sm:
      spreader.spread_sm(points, *plan.layout_, *plan.subproblems_, strengths, fine);
      break;
  }
  plan.fft_.transform(fine, FftDirection::forward, plan.pool_.get());
  deconvolve_type1<T>(fine, plan.grid_, plan.mode_weights_, modes);
}

template <class T>
void exec_type2(Plan<T>& plan, std::span<const std::complex<T>> modes,
                std::span<std::complex<T>> values) {
  std::span<std::complex<T>> fine(plan.fine_);
  deconvolve_type2<T>(modes, plan.grid_, plan.mode_weights_, fine);
  plan.fft_.transform(fine, FftDirection::inverse, plan.pool_.get());
  // sm has no interpolation analogue; it reads in bin order like gm_sort
  const BinLayout* layout = plan.method_ == Method::gm ? nullptr : plan.layout();
  const FootprintEvaluator kernel(plan.grid_, plan.params_);
  interpolate<T>(plan.points(), layout, kernel, plan.grid_, fine, values, plan.pool_.get());
}

#define ESNUFFT_INSTANTIATE(T)                                                                  \
  template void deconvolve_type1<T>(std::span<const std::complex<T>>, const GridSpec&,         \
                                    std::span<const T>, std::span<std::complex<T>>);           \
  template void deconvolve_type2<T>(std::span<const std::complex<T>>, const GridSpec&,         \
                                    std::span<const T>, std::span<std::complex<T>>);           \
  template std::vector<T> signed_mode_weights<T>(const CorrectionFactors&);                    \
  template void exec_type1<T>(Plan<T>&, std::span<const std::complex<T>>,                      \
                              std::span<std::complex<T>>);                                     \
  template void exec_type2<T>(Plan<T>&, std::span<const std::complex<T>>,                      \
                              std::span<std::complex<T>>);

ESNUFFT_INSTANTIATE(float)
ESNUFFT_INSTANTIATE(double)

#undef ESNUFFT_INSTANTIATE

}  // namespace esnufft

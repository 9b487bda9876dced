#pragma once

#include <complex>
#include <span>

#include "esnufft/grid.hpp"
#include "esnufft/plan.hpp"

namespace esnufft {

/// Type-1 step 3: f_k = factor_k * bhat_{k mod n} over the centred mode grid.
/// `factors` has one real multiplier per mode, in mode order.
template <class T>
void deconvolve_type1(std::span<const std::complex<T>> spectrum, const GridSpec& grid,
                      std::span<const T> factors, std::span<std::complex<T>> modes);

/// Type-2 step 1: bhat_{k mod n} = factor_k * f_k on the mode grid, zero elsewhere.
template <class T>
void deconvolve_type2(std::span<const std::complex<T>> modes, const GridSpec& grid,
                      std::span<const T> factors, std::span<std::complex<T>> spectrum);

/// Multipliers applied to the fine-grid spectrum: the correction factors times
/// (-1)^(k_1+...+k_d). The sign moves the grid origin from -pi (where fine-grid
/// cell 0 sits) back to 0.
template <class T>
std::vector<T> signed_mode_weights(const CorrectionFactors& correction);

/// spread -> forward FFT -> deconvolve. Lengths are checked by Plan::execute.
template <class T>
void exec_type1(Plan<T>& plan, std::span<const std::complex<T>> strengths,
                std::span<std::complex<T>> modes);

/// deconvolve -> inverse FFT -> interpolate.
template <class T>
void exec_type2(Plan<T>& plan, std::span<const std::complex<T>> modes,
                std::span<std::complex<T>> values);

}  // namespace esnufft

#pragma once

#include <array>
#include <complex>
#include <span>

#include "esnufft/binsort.hpp"
#include "esnufft/spread.hpp"
#include "esnufft/types.hpp"

namespace esnufft {

class ThreadPool;

/// Kernel-weighted sum of the w^d fine-grid values around x (indices wrap mod n).
template <class T>
std::complex<T> interp_point(const std::array<T, 3>& x, const FootprintEvaluator& kernel,
                             const GridSpec& grid, std::span<const std::complex<T>> fine);

/// Type-2 step 3. Writes out[j] = interp_point(point j) for every j.
///
/// With a layout the points are visited in bin-sorted order (gm_sort),
/// otherwise in input order (gm). Slot j always receives point j, and the
/// per-point arithmetic does not depend on the visit order, so both orders give
/// bit-identical results.
template <class T>
void interpolate(const PointsView<T>& points, const BinLayout* layout,
                 const FootprintEvaluator& kernel, const GridSpec& grid,
                 std::span<const std::complex<T>> fine, std::span<std::complex<T>> out,
                 ThreadPool* pool = nullptr);

}  // namespace esnufft

#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "esnufft/types.hpp"

namespace esnufft {

class ThreadPool;

/// Direct O(NM) evaluation of f_k = sum_j c_j exp(-i k.x_j) over the centred
/// mode grid (same ordering as Plan). Sums are compensated (Neumaier) per
/// component. `modes` entries past points.dim are ignored.
std::vector<std::complex<double>> direct_type1(const PointsView<double>& points,
                                               std::span<const std::complex<double>> strengths,
                                               const std::array<index_t, 3>& modes,
                                               ThreadPool* pool = nullptr);

/// Direct evaluation of c_j = sum_k f_k exp(+i k.x_j).
std::vector<std::complex<double>> direct_type2(const PointsView<double>& points,
                                               std::span<const std::complex<double>> coeffs,
                                               const std::array<index_t, 3>& modes,
                                               ThreadPool* pool = nullptr);

/// ||approx - exact||_2 / ||exact||_2. Throws if lengths differ or exact is all zero.
double rel_l2_error(std::span<const std::complex<double>> approx,
                    std::span<const std::complex<double>> exact);
double rel_l2_error(std::span<const std::complex<float>> approx,
                    std::span<const std::complex<double>> exact);

}  // namespace esnufft

#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "esnufft/types.hpp"

namespace esnufft::microbench {

// Coordinates uniform on [-pi, pi)^d, or packed into [0, 8h_i] when clustered.
struct Points {
  int dim = 2;
  std::array<std::vector<double>, 3> x;
  std::vector<std::complex<double>> c;

  PointsView<double> view() const {
    PointsView<double> v;
    v.dim = dim;
    for (int i = 0; i < dim; ++i) v.axis[i] = x[i];
    return v;
  }
};

inline Points make_points(int dim, index_t m, const std::array<index_t, 3>& fine, bool cluster,
                          std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  Points p;
  p.dim = dim;
  for (int i = 0; i < dim; ++i) {
    const double hi = cluster ? 8 * 2 * std::numbers::pi / static_cast<double>(fine[i])
                              : std::numbers::pi;
    std::uniform_real_distribution<double> u(cluster ? 0.0 : -std::numbers::pi, hi);
    p.x[i].resize(static_cast<std::size_t>(m));
    for (auto& v : p.x[i]) v = u(rng);
  }
  std::uniform_real_distribution<double> s(0.0, 1.0);
  p.c.resize(static_cast<std::size_t>(m));
  for (auto& v : p.c) v = {s(rng), s(rng)};
  return p;
}

}  // namespace esnufft::microbench

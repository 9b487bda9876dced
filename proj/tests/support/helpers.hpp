#pragma once

// Glue between the test oracles and library types.

#include <complex>
#include <span>
#include <vector>

#include "esnufft/types.hpp"
#include "oracles.hpp"

namespace esnufft::testing {

template <class T>
PointsView<T> view_of(int dim, const std::array<std::vector<T>, 3>& x) {
  PointsView<T> v;
  v.dim = dim;
  for (int i = 0; i < dim; ++i) v.axis[i] = std::span<const T>(x[i]);
  return v;
}

inline PointsView<double> view_of(const SimplePoints& p) { return view_of<double>(p.dim, p.x); }

/// Clustered points: iid uniform in [0, 8h_i] per axis.
inline SimplePoints cluster_points(int dim, std::size_t m, const std::array<index_t, 3>& fine,
                                   std::mt19937_64& rng) {
  SimplePoints p;
  p.dim = dim;
  for (int i = 0; i < dim; ++i) {
    std::uniform_real_distribution<double> u(0.0, 8 * 2 * 3.14159265358979323846 / fine[i]);
    p.x[i].resize(m);
    for (auto& v : p.x[i]) v = u(rng);
  }
  return p;
}

inline double rel_diff(std::span<const cplx> a, std::span<const cplx> b) {
  std::vector<cplx> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return l2_norm(d) / l2_norm(b);
}

inline std::vector<cplx> widen(std::span<const std::complex<float>> a) {
  return {a.begin(), a.end()};
}

}  // namespace esnufft::testing

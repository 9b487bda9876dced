#include "oracles.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <set>

namespace esnufft::testing {

namespace {
constexpr double pi = std::numbers::pi;
}

std::vector<std::int64_t> smooth_numbers_up_to(std::int64_t limit) {
  std::vector<std::int64_t> out;
  for (std::int64_t a = 1; a <= limit; a *= 2) {
    for (std::int64_t b = a; b <= limit; b *= 3) {
      for (std::int64_t c = b; c <= limit; c *= 5) out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double es_kernel(double beta, double z) {
  if (z < -1.0 || z > 1.0) return 0.0;
  return std::exp(beta * std::sqrt(1.0 - z * z) - beta);
}

double kernel_fourier_adaptive(double beta, double xi) {
  boost::math::quadrature::tanh_sinh<long double> rule;
  const long double b = beta;
  const long double k = xi;
  auto f = [&](long double z) {
    return std::exp(b * (std::sqrt(1 - z * z) - 1)) * std::cos(k * z);
  };
  return static_cast<double>(rule.integrate(f, -1.0L, 1.0L, 1e-18L));
}

double psi_per_axis(std::int64_t l, double x, std::int64_t n, int width, double beta) {
  const double h = 2 * pi / static_cast<double>(n);
  const double u = (x + pi) / h;
  double sum = 0;
  for (int m = -2; m <= 2; ++m) {
    const double z = 2.0 * (static_cast<double>(l) - u - static_cast<double>(m * n)) / width;
    // Footprints cover exactly w cells, so the support is taken as [-1, 1).
    if (z >= -1.0 && z < 1.0) sum += es_kernel(beta, z);
  }
  return sum;
}

namespace {

std::vector<std::pair<std::int64_t, double>> axis_weights(double x, std::int64_t n, int width,
                                                         double beta) {
  std::set<std::int64_t> cells;
  if (2 * width + 3 >= n) {
    for (std::int64_t l = 0; l < n; ++l) cells.insert(l);
  } else {
    const double h = 2 * pi / static_cast<double>(n);
    const auto centre = static_cast<std::int64_t>(std::floor((x + pi) / h));
    for (std::int64_t l = centre - width - 1; l <= centre + width + 1; ++l) {
      cells.insert(((l % n) + n) % n);
    }
  }
  std::vector<std::pair<std::int64_t, double>> out;
  for (auto l : cells) {
    const double v = psi_per_axis(l, x, n, width, beta);
    if (v != 0) out.emplace_back(l, v);
  }
  return out;
}

}  // namespace

std::vector<cplx> spread_oracle(const SimplePoints& pts, std::span<const cplx> c,
                                const std::array<std::int64_t, 3>& n, int width, double beta) {
  std::array<std::int64_t, 3> dims{1, 1, 1};
  for (int i = 0; i < pts.dim; ++i) dims[i] = n[i];
  std::vector<cplx> grid(static_cast<std::size_t>(dims[0] * dims[1] * dims[2]));
  const std::vector<std::pair<std::int64_t, double>> unit{{0, 1.0}};
  for (std::size_t j = 0; j < pts.size(); ++j) {
    std::array<std::vector<std::pair<std::int64_t, double>>, 3> w;
    for (int i = 0; i < 3; ++i) {
      w[i] = i < pts.dim ? axis_weights(pts.x[i][j], dims[i], width, beta) : unit;
    }
    for (auto [l3, w3] : w[2]) {
      for (auto [l2, w2] : w[1]) {
        for (auto [l1, w1] : w[0]) {
          grid[static_cast<std::size_t>(l1 + dims[0] * (l2 + dims[1] * l3))] += c[j] * (w1 * w2 * w3);
        }
      }
    }
  }
  return grid;
}

std::vector<cplx> naive_dft(std::span<const cplx> in, int dim, const std::array<std::int64_t, 3>& n,
                            int sign) {
  std::array<std::int64_t, 3> d{1, 1, 1};
  for (int i = 0; i < dim; ++i) d[i] = n[i];
  std::vector<cplx> out(in.size());
  for (std::int64_t k3 = 0; k3 < d[2]; ++k3) {
    for (std::int64_t k2 = 0; k2 < d[1]; ++k2) {
      for (std::int64_t k1 = 0; k1 < d[0]; ++k1) {
        cplx acc = 0;
        for (std::int64_t l3 = 0; l3 < d[2]; ++l3) {
          for (std::int64_t l2 = 0; l2 < d[1]; ++l2) {
            for (std::int64_t l1 = 0; l1 < d[0]; ++l1) {
              const double phase = 2 * pi *
                                   (static_cast<double>((k1 * l1) % d[0]) / d[0] +
                                    static_cast<double>((k2 * l2) % d[1]) / d[1] +
                                    static_cast<double>((k3 * l3) % d[2]) / d[2]);
              acc += in[static_cast<std::size_t>(l1 + d[0] * (l2 + d[1] * l3))] *
                     std::polar(1.0, sign * phase);
            }
          }
        }
        out[static_cast<std::size_t>(k1 + d[0] * (k2 + d[1] * k3))] = acc;
      }
    }
  }
  return out;
}

namespace {

template <class F>
void for_each_mode(int dim, const std::array<std::int64_t, 3>& modes, F&& f) {
  std::array<std::int64_t, 3> d{1, 1, 1};
  std::array<std::int64_t, 3> lo{0, 0, 0};
  for (int i = 0; i < dim; ++i) {
    d[i] = modes[i];
    lo[i] = -(modes[i] / 2);
  }
  std::size_t idx = 0;
  for (std::int64_t a = 0; a < d[2]; ++a) {
    for (std::int64_t b = 0; b < d[1]; ++b) {
      for (std::int64_t c = 0; c < d[0]; ++c) f(idx++, std::array<double, 3>{double(lo[0] + c), double(lo[1] + b), double(lo[2] + a)});
    }
  }
}

double dot(const SimplePoints& pts, std::size_t j, const std::array<double, 3>& k) {
  double s = 0;
  for (int i = 0; i < pts.dim; ++i) s += k[i] * pts.x[i][j];
  return s;
}

}  // namespace

std::vector<cplx> naive_type1(const SimplePoints& pts, std::span<const cplx> c,
                              const std::array<std::int64_t, 3>& modes) {
  std::vector<cplx> out;
  for_each_mode(pts.dim, modes, [&](std::size_t, const std::array<double, 3>& k) {
    cplx acc = 0;
    for (std::size_t j = 0; j < pts.size(); ++j) acc += c[j] * std::exp(cplx(0, -dot(pts, j, k)));
    out.push_back(acc);
  });
  return out;
}

std::vector<cplx> naive_type2(const SimplePoints& pts, std::span<const cplx> f,
                              const std::array<std::int64_t, 3>& modes) {
  std::vector<cplx> out(pts.size());
  for_each_mode(pts.dim, modes, [&](std::size_t idx, const std::array<double, 3>& k) {
    for (std::size_t j = 0; j < pts.size(); ++j) out[j] += f[idx] * std::exp(cplx(0, dot(pts, j, k)));
  });
  return out;
}

namespace {

// Phase tables for one point: row i holds e^{sign i k x_i}, k = -N_i/2 ...
void axis_phases(const SimplePoints& pts, std::size_t j, const std::array<std::int64_t, 3>& modes,
                 int sign, std::array<std::vector<cplx>, 3>& rows) {
  for (int i = 0; i < 3; ++i) {
    const std::int64_t n = i < pts.dim ? modes[i] : 1;
    rows[i].resize(static_cast<std::size_t>(n));
    for (std::int64_t a = 0; a < n; ++a) {
      const double k = i < pts.dim ? static_cast<double>(a - n / 2) : 0.0;
      const double x = i < pts.dim ? pts.x[i][j] : 0.0;
      rows[i][a] = std::exp(cplx(0, sign * k * x));
    }
  }
}

std::array<std::int64_t, 3> padded(int dim, const std::array<std::int64_t, 3>& modes) {
  return {modes[0], modes[1], dim == 3 ? modes[2] : 1};
}

}  // namespace

std::vector<cplx> separable_type1(const SimplePoints& pts, std::span<const cplx> c,
                                  const std::array<std::int64_t, 3>& modes) {
  const auto n = padded(pts.dim, modes);
  std::vector<cplx> out(static_cast<std::size_t>(n[0] * n[1] * n[2]));
  std::array<std::vector<cplx>, 3> rows;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    axis_phases(pts, j, modes, -1, rows);
    std::size_t idx = 0;
    for (std::int64_t a3 = 0; a3 < n[2]; ++a3) {
      for (std::int64_t a2 = 0; a2 < n[1]; ++a2) {
        const cplx outer = c[j] * rows[2][a3] * rows[1][a2];
        for (std::int64_t a1 = 0; a1 < n[0]; ++a1) out[idx++] += outer * rows[0][a1];
      }
    }
  }
  return out;
}

std::vector<cplx> separable_type2(const SimplePoints& pts, std::span<const cplx> f,
                                  const std::array<std::int64_t, 3>& modes) {
  const auto n = padded(pts.dim, modes);
  std::vector<cplx> out(pts.size());
  std::array<std::vector<cplx>, 3> rows;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    axis_phases(pts, j, modes, 1, rows);
    std::size_t idx = 0;
    cplx acc = 0;
    for (std::int64_t a3 = 0; a3 < n[2]; ++a3) {
      for (std::int64_t a2 = 0; a2 < n[1]; ++a2) {
        cplx row = 0;
        for (std::int64_t a1 = 0; a1 < n[0]; ++a1) row += f[idx++] * rows[0][a1];
        acc += row * rows[1][a2] * rows[2][a3];
      }
    }
    out[j] = acc;
  }
  return out;
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double l2_norm(std::span<const cplx> a) {
  long double s = 0;
  for (const auto& z : a) s += std::norm(z);
  return static_cast<double>(std::sqrt(s));
}

SimplePoints random_points(int dim, std::size_t m, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  SimplePoints p;
  p.dim = dim;
  for (int i = 0; i < dim; ++i) {
    p.x[i].resize(m);
    for (auto& v : p.x[i]) v = u(rng);
  }
  return p;
}

std::vector<cplx> random_complex(std::size_t m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> out(m);
  for (auto& z : out) z = {u(rng), u(rng)};
  return out;
}

}  // namespace esnufft::testing

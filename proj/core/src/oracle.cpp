#include "esnufft/oracle.hpp"

#include <cmath>
#include <string>

#include "esnufft/error.hpp"
#include "esnufft/grid.hpp"
#include "esnufft/thread_pool.hpp"

namespace esnufft {
namespace {

// Neumaier-compensated accumulator for one real component.
struct Compensated {
  double sum = 0;
  double carry = 0;

  void add(double x) noexcept {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const noexcept { return sum + carry; }
};

struct ComplexCompensated {
  Compensated re, im;
  void add(std::complex<double> z) noexcept {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> value() const noexcept { return {re.value(), im.value()}; }
};

std::array<index_t, 3> active_modes(const PointsView<double>& points,
                                    const std::array<index_t, 3>& modes) {
  if (points.dim < 1 || points.dim > 3) {
    throw Error(ErrorCode::invalid_argument, "oracle supports 1 to 3 dimensions");
  }
  std::array<index_t, 3> n{1, 1, 1};
  for (int i = 0; i < points.dim; ++i) {
    if (modes[i] < 1) throw Error(ErrorCode::invalid_argument, "mode counts must be >= 1");
    n[i] = modes[i];
  }
  return n;
}

// table[k - lowest] = exp(sign * i * k * x) for k in the centred range of n modes.
void phase_row(double x, index_t n, double sign, std::complex<double>* table) {
  const index_t k0 = lowest_mode(n);
  for (index_t j = 0; j < n; ++j) {
    const double angle = sign * static_cast<double>(k0 + j) * x;
    table[j] = {std::cos(angle), std::sin(angle)};
  }
}

template <class F>
void run_chunks(ThreadPool* pool, index_t total, F&& body) {
  const index_t chunks = pool ? std::min<index_t>(pool->size(), total) : 1;
  if (chunks <= 1) {
    body(0, total);
    return;
  }
  pool->parallel_for(chunks, [&](index_t c, int) {
    const auto [begin, end] = chunk_bounds(total, chunks, c);
    body(begin, end);
  });
}

}  // namespace

std::vector<std::complex<double>> direct_type1(const PointsView<double>& points,
                                               std::span<const std::complex<double>> strengths,
                                               const std::array<index_t, 3>& modes,
                                               ThreadPool* pool) {
  const auto n = active_modes(points, modes);
  const index_t m = points.size();
  if (static_cast<index_t>(strengths.size()) != m) {
    throw Error(ErrorCode::length_mismatch, "direct_type1: strengths length differs from M");
  }
  const index_t rows = n[1] * n[2];
  std::vector<std::complex<double>> out(static_cast<std::size_t>(rows * n[0]));

  // Each chunk owns a contiguous range of (k2, k3) rows and sweeps all points.
  run_chunks(pool, rows, [&](index_t row_begin, index_t row_end) {
    std::vector<ComplexCompensated> acc(static_cast<std::size_t>((row_end - row_begin) * n[0]));
    std::array<std::vector<std::complex<double>>, 3> table;
    for (int i = 0; i < 3; ++i) table[i].assign(static_cast<std::size_t>(n[i]), 1.0);
    for (index_t j = 0; j < m; ++j) {
      for (int i = 0; i < points.dim; ++i) phase_row(points.axis[i][j], n[i], -1.0, table[i].data());
      for (index_t r = row_begin; r < row_end; ++r) {
        const std::complex<double> scale = strengths[j] * table[2][r / n[1]] * table[1][r % n[1]];
        ComplexCompensated* line = acc.data() + (r - row_begin) * n[0];
        for (index_t k = 0; k < n[0]; ++k) line[k].add(scale * table[0][k]);
      }
    }
    for (index_t r = row_begin; r < row_end; ++r) {
      for (index_t k = 0; k < n[0]; ++k) {
        out[static_cast<std::size_t>(r * n[0] + k)] = acc[(r - row_begin) * n[0] + k].value();
      }
    }
  });
  return out;
}

std::vector<std::complex<double>> direct_type2(const PointsView<double>& points,
                                               std::span<const std::complex<double>> coeffs,
                                               const std::array<index_t, 3>& modes,
                                               ThreadPool* pool) {
  const auto n = active_modes(points, modes);
  if (static_cast<index_t>(coeffs.size()) != n[0] * n[1] * n[2]) {
    throw Error(ErrorCode::length_mismatch, "direct_type2: coefficient count differs from prod(N)");
  }
  const index_t m = points.size();
  std::vector<std::complex<double>> out(static_cast<std::size_t>(m));
  run_chunks(pool, m, [&](index_t begin, index_t end) {
    std::array<std::vector<std::complex<double>>, 3> table;
    for (int i = 0; i < 3; ++i) table[i].assign(static_cast<std::size_t>(n[i]), 1.0);
    for (index_t j = begin; j < end; ++j) {
      for (int i = 0; i < points.dim; ++i) phase_row(points.axis[i][j], n[i], 1.0, table[i].data());
      ComplexCompensated acc;
      std::size_t idx = 0;
      for (index_t k3 = 0; k3 < n[2]; ++k3) {
        for (index_t k2 = 0; k2 < n[1]; ++k2) {
          const std::complex<double> outer = table[2][k3] * table[1][k2];
          for (index_t k1 = 0; k1 < n[0]; ++k1) acc.add(coeffs[idx++] * (outer * table[0][k1]));
        }
      }
      out[static_cast<std::size_t>(j)] = acc.value();
    }
  });
  return out;
}

namespace {

template <class T>
double rel_error_impl(std::span<const std::complex<T>> approx,
                      std::span<const std::complex<double>> exact) {
  if (approx.size() != exact.size()) {
    throw Error(ErrorCode::length_mismatch, "rel_l2_error: vectors have different lengths (" +
                                                std::to_string(approx.size()) + " vs " +
                                                std::to_string(exact.size()) + ")");
  }
  long double diff = 0;
  long double norm = 0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const std::complex<double> a(approx[i].real(), approx[i].imag());
    diff += std::norm(a - exact[i]);
    norm += std::norm(exact[i]);
  }
  if (norm == 0) {
    throw Error(ErrorCode::invalid_argument, "rel_l2_error: reference vector is all zero");
  }
  return static_cast<double>(std::sqrt(diff / norm));
}

}  // namespace

double rel_l2_error(std::span<const std::complex<double>> approx,
                    std::span<const std::complex<double>> exact) {
  return rel_error_impl(approx, exact);
}

double rel_l2_error(std::span<const std::complex<float>> approx,
                    std::span<const std::complex<double>> exact) {
  return rel_error_impl(approx, exact);
}

}  // namespace esnufft

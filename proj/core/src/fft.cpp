#include "esnufft/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "esnufft/error.hpp"
#include "esnufft/thread_pool.hpp"

namespace esnufft {
namespace {

// e^{-2 pi i num/den}, with the angle reduced exactly before rounding.
template <class T>
std::complex<T> root(index_t num, index_t den) {
  num %= den;
  const long double angle = -2.0L * std::numbers::pi_v<long double> * static_cast<long double>(num) /
                            static_cast<long double>(den);
  return {static_cast<T>(std::cos(angle)), static_cast<T>(std::sin(angle))};
}

template <class T>
inline std::complex<T> times_i(std::complex<T> z, T sign) noexcept {
  // sign * i * z
  return {-sign * z.imag(), sign * z.real()};
}

std::vector<int> factorize(index_t n) {
  std::vector<int> radices;
  while (n % 4 == 0) {
    radices.push_back(4);
    n /= 4;
  }
  for (index_t p : {2, 3, 5}) {
    while (n % p == 0) {
      radices.push_back(static_cast<int>(p));
      n /= p;
    }
  }
  for (index_t p = 7; p * p <= n; p += 2) {
    while (n % p == 0) {
      radices.push_back(static_cast<int>(p));
      n /= p;
    }
  }
  if (n > 1) radices.push_back(static_cast<int>(n));
  return radices;
}

}  // namespace

template <class T>
Fft1d<T>::Fft1d(index_t n) : n_(n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "FFT length must be >= 1");
  index_t span = 1;
  for (int p : factorize(n)) {
    Stage s{p, span, twiddles_.size()};
    for (index_t k = 0; k < span; ++k) {
      for (int r = 1; r < p; ++r) twiddles_.push_back(root<T>(r * k, span * p));
    }
    if (p > 5) {
      for (int r = 0; r < p; ++r) twiddles_.push_back(root<T>(r, p));
    }
    stages_.push_back(s);
    span *= p;
  }
}

template <class T>
template <bool Inverse>
void Fft1d<T>::run(std::complex<T>* data, std::complex<T>* work) const {
  using C = std::complex<T>;
  constexpr T sign = Inverse ? T(1) : T(-1);
  const T sin60 = static_cast<T>(std::sqrt(3.0L) / 2);
  const T c1 = static_cast<T>(std::cos(2 * std::numbers::pi_v<long double> / 5));
  const T c2 = static_cast<T>(std::cos(4 * std::numbers::pi_v<long double> / 5));
  const T s1 = static_cast<T>(std::sin(2 * std::numbers::pi_v<long double> / 5));
  const T s2 = static_cast<T>(std::sin(4 * std::numbers::pi_v<long double> / 5));

  C* in = data;
  C* out = work;
  std::vector<C> generic_v;
  for (const Stage& st : stages_) {
    const int p = st.radix;
    const index_t q = n_ / p;
    const index_t ns = st.span;
    const C* tw = twiddles_.data() + st.twiddle_at;
    for (index_t blk = 0; blk < q / ns; ++blk) {
      for (index_t k = 0; k < ns; ++k) {
        const index_t j = blk * ns + k;
        const C* twk = tw + k * (p - 1);
        C* dst = out + blk * ns * p + k;
        auto load = [&](int r) {
          const C x = in[j + r * q];
          if (r == 0) return x;
          return x * (Inverse ? std::conj(twk[r - 1]) : twk[r - 1]);
        };
        switch (p) {
          case 2: {
            const C a = load(0), b = load(1);
            dst[0] = a + b;
            dst[ns] = a - b;
            break;
          }
          case 3: {
            const C v0 = load(0), v1 = load(1), v2 = load(2);
            const C t1 = v1 + v2;
            const C t2 = v0 - T(0.5) * t1;
            const C t3 = times_i(sin60 * (v1 - v2), sign);
            dst[0] = v0 + t1;
            dst[ns] = t2 + t3;
            dst[2 * ns] = t2 - t3;
            break;
          }
          case 4: {
            const C v0 = load(0), v1 = load(1), v2 = load(2), v3 = load(3);
            const C a0 = v0 + v2, a1 = v0 - v2;
            const C b0 = v1 + v3, b1 = times_i(v1 - v3, sign);
            dst[0] = a0 + b0;
            dst[ns] = a1 + b1;
            dst[2 * ns] = a0 - b0;
            dst[3 * ns] = a1 - b1;
            break;
          }
          case 5: {
            const C v0 = load(0), v1 = load(1), v2 = load(2), v3 = load(3), v4 = load(4);
            const C t1 = v1 + v4, t2 = v2 + v3, t3 = v1 - v4, t4 = v2 - v3;
            const C a1 = v0 + c1 * t1 + c2 * t2;
            const C a2 = v0 + c2 * t1 + c1 * t2;
            const C b1 = times_i(s1 * t3 + s2 * t4, sign);
            const C b2 = times_i(s2 * t3 - s1 * t4, sign);
            dst[0] = v0 + t1 + t2;
            dst[ns] = a1 + b1;
            dst[2 * ns] = a2 + b2;
            dst[3 * ns] = a2 - b2;
            dst[4 * ns] = a1 - b1;
            break;
          }
          default: {
            const C* roots = tw + ns * (p - 1);
            generic_v.resize(static_cast<std::size_t>(p));
            for (int r = 0; r < p; ++r) generic_v[r] = load(r);
            for (int m = 0; m < p; ++m) {
              C acc = generic_v[0];
              for (int r = 1; r < p; ++r) {
                const C w = roots[(static_cast<index_t>(r) * m) % p];
                acc += generic_v[r] * (Inverse ? std::conj(w) : w);
              }
              dst[m * ns] = acc;
            }
            break;
          }
        }
      }
    }
    std::swap(in, out);
  }
  if (in != data) std::copy(in, in + n_, data);
}

template <class T>
void Fft1d<T>::transform(std::complex<T>* data, std::complex<T>* work, FftDirection dir) const {
  if (dir == FftDirection::forward) {
    run<false>(data, work);
  } else {
    run<true>(data, work);
  }
}

template <class T>
FftNd<T>::FftNd(int dim, const std::array<index_t, 3>& dims) : dim_(dim), dims_(dims) {
  if (dim < 1 || dim > 3) throw Error(ErrorCode::invalid_argument, "FFT dimension must be 1..3");
  for (int i = 0; i < dim; ++i) axis_.emplace_back(dims[i]);
  for (int i = dim; i < 3; ++i) dims_[i] = 1;
}

template <class T>
void FftNd<T>::transform_axis(int axis, std::span<std::complex<T>> data, FftDirection dir,
                              ThreadPool* pool) const {
  using C = std::complex<T>;
  const index_t len = dims_[axis];
  if (len == 1) return;
  index_t stride = 1;
  for (int i = 0; i < axis; ++i) stride *= dims_[i];
  index_t outer = 1;
  for (int i = axis + 1; i < 3; ++i) outer *= dims_[i];
  const Fft1d<T>& fft = axis_[axis];

  // Lines along `axis` are handled in blocks of up to `block` neighbours in
  // axis-0 order, gathered into contiguous scratch so the strided reads are
  // at least cache-line sized.
  constexpr index_t block = 16;
  const index_t blocks_per_outer = stride == 1 ? 1 : (stride + block - 1) / block;
  const index_t tasks = outer * blocks_per_outer;
  const index_t workers = pool ? pool->size() : 1;
  const index_t chunks = std::min(workers, tasks);

  auto work_chunk = [&](index_t c, int) {
    const auto [begin, end] = chunk_bounds(tasks, chunks, c);
    std::vector<C> work(static_cast<std::size_t>(len));
    std::vector<C> lines;
    for (index_t t = begin; t < end; ++t) {
      const index_t o = t / blocks_per_outer;
      C* base = data.data() + o * stride * len;
      if (stride == 1) {
        fft.transform(base, work.data(), dir);
        continue;
      }
      const index_t first = (t % blocks_per_outer) * block;
      const index_t width = std::min(block, stride - first);
      lines.resize(static_cast<std::size_t>(width * len));
      for (index_t l = 0; l < len; ++l) {
        const C* src = base + first + l * stride;
        for (index_t b = 0; b < width; ++b) lines[b * len + l] = src[b];
      }
      for (index_t b = 0; b < width; ++b) fft.transform(lines.data() + b * len, work.data(), dir);
      for (index_t l = 0; l < len; ++l) {
        C* dst = base + first + l * stride;
        for (index_t b = 0; b < width; ++b) dst[b] = lines[b * len + l];
      }
    }
  };
  if (chunks > 1) {
    pool->parallel_for(chunks, work_chunk);
  } else {
    work_chunk(0, 0);
  }
}

template <class T>
void FftNd<T>::transform(std::span<std::complex<T>> data, FftDirection dir,
                         ThreadPool* pool) const {
  if (static_cast<index_t>(data.size()) != size()) {
    throw Error(ErrorCode::length_mismatch, "FFT buffer has " + std::to_string(data.size()) +
                                                " entries, expected " + std::to_string(size()));
  }
  for (int a = 0; a < dim_; ++a) transform_axis(a, data, dir, pool);
}

template <class T>
void fft_fine(std::span<std::complex<T>> data, const GridSpec& grid, FftDirection dir,
              ThreadPool* pool) {
  FftNd<T>(grid.dim, grid.fine).transform(data, dir, pool);
}

template class Fft1d<float>;
template class Fft1d<double>;
template class FftNd<float>;
template class FftNd<double>;
template void fft_fine<float>(std::span<std::complex<float>>, const GridSpec&, FftDirection,
                              ThreadPool*);
template void fft_fine<double>(std::span<std::complex<double>>, const GridSpec&, FftDirection,
                               ThreadPool*);

}  // namespace esnufft

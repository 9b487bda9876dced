#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "esnufft/grid.hpp"
#include "esnufft/types.hpp"

namespace esnufft {

class ThreadPool;

/// forward: sum_l b_l e^{-2 pi i l k / n}; inverse: the same with e^{+...}.
/// Neither direction normalizes, so forward followed by inverse scales by n.
enum class FftDirection { forward, inverse };

/// One-dimensional complex FFT of a fixed length (Stockham autosort, mixed
/// radix 4/2/3/5 with an O(p^2) pass for any other prime factor).
template <class T>
class Fft1d {
 public:
  explicit Fft1d(index_t n);

  index_t size() const noexcept { return n_; }

  /// Transforms `data` in place; `work` is scratch of the same length.
  void transform(std::complex<T>* data, std::complex<T>* work, FftDirection dir) const;

 private:
  struct Stage {
    int radix;
    index_t span;            // product of the radices of earlier stages
    std::size_t twiddle_at;  // offset into twiddles_
  };

  template <bool Inverse>
  void run(std::complex<T>* data, std::complex<T>* work) const;

  index_t n_;
  std::vector<Stage> stages_;
  std::vector<std::complex<T>> twiddles_;  // forward-direction roots
};

/// Separable d-dimensional FFT over an array stored with axis 0 fastest.
template <class T>
class FftNd {
 public:
  FftNd(int dim, const std::array<index_t, 3>& dims);

  const std::array<index_t, 3>& dims() const noexcept { return dims_; }
  index_t size() const noexcept { return dims_[0] * dims_[1] * dims_[2]; }

  void transform(std::span<std::complex<T>> data, FftDirection dir,
                 ThreadPool* pool = nullptr) const;

 private:
  void transform_axis(int axis, std::span<std::complex<T>> data, FftDirection dir,
                      ThreadPool* pool) const;

  int dim_;
  std::array<index_t, 3> dims_;
  std::vector<Fft1d<T>> axis_;
};

/// Transforms a fine grid in place (type-1 step 2 forward, type-2 step 2 inverse).
template <class T>
void fft_fine(std::span<std::complex<T>> data, const GridSpec& grid, FftDirection dir,
              ThreadPool* pool = nullptr);

}  // namespace esnufft

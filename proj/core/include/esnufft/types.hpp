#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <type_traits>

namespace esnufft {

using index_t = std::int64_t;

enum class TransformType { type1 = 1, type2 = 2 };

/// Spreading / interpolation strategy.
///   gm      - points visited in input order, accumulated straight into the fine grid
///   gm_sort - points visited in bin-sorted order
///   sm      - bin-sorted subproblems accumulated in private padded-bin buffers, then merged
enum class Method { gm, gm_sort, sm };

enum class Precision { single, double_ };

template <class T>
constexpr Precision precision_of() noexcept {
  static_assert(std::is_same_v<T, float> || std::is_same_v<T, double>);
  return std::is_same_v<T, float> ? Precision::single : Precision::double_;
}

/// Non-owning view of M points in d dimensions, stored one array per axis.
template <class T>
struct PointsView {
  int dim = 0;
  std::array<std::span<const T>, 3> axis{};

  index_t size() const noexcept { return static_cast<index_t>(axis[0].size()); }
};

inline std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::gm: return "gm";
    case Method::gm_sort: return "gmsort";
    case Method::sm: return "sm";
  }
  return "?";
}

inline std::string_view to_string(Precision p) noexcept {
  return p == Precision::single ? "f32" : "f64";
}

}  // namespace esnufft

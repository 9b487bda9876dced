#include "esnufft/grid.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "esnufft/error.hpp"

namespace esnufft {

bool is_smooth(index_t n) noexcept {
  if (n < 1) return false;
  for (index_t p : {2, 3, 5}) {
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

index_t next_smooth(index_t n) {
  if (n < 1) {
    throw Error(ErrorCode::invalid_argument,
                "next_smooth: n must be >= 1, got " + std::to_string(n));
  }
  // Walk all 2^q 3^p 5^r below the first power of two >= n; the power of two
  // itself bounds the answer.
  constexpr index_t max = std::numeric_limits<index_t>::max();
  index_t best = 1;
  while (best < n) {
    if (best > max / 2) {
      throw Error(ErrorCode::overflow,
                  "next_smooth: no 5-smooth integer >= " + std::to_string(n) +
                      " fits in 64 bits");
    }
    best *= 2;
  }
  for (index_t f5 = 1; f5 < best; f5 *= 5) {
    for (index_t f35 = f5; f35 < best; f35 *= 3) {
      index_t m = f35;
      while (m < n) m *= 2;
      best = std::min(best, m);
      if (f35 > max / 3) break;
    }
    if (f5 > max / 5) break;
  }
  return best;
}

GridSpec make_grid_spec(std::span<const index_t> modes, int width) {
  const auto dim = static_cast<int>(modes.size());
  if (dim != 2 && dim != 3) {
    throw Error(ErrorCode::invalid_argument,
                "only 2D and 3D transforms are supported, got dim=" +
                    std::to_string(dim));
  }
  GridSpec g;
  g.dim = dim;
  for (int i = 0; i < dim; ++i) {
    if (modes[i] < 1) {
      throw Error(ErrorCode::invalid_argument,
                  "mode count N" + std::to_string(i + 1) + " must be >= 1, got " +
                      std::to_string(modes[i]));
    }
    if (modes[i] > std::numeric_limits<index_t>::max() / 4) {
      throw Error(ErrorCode::overflow, "mode count too large");
    }
    g.modes[i] = modes[i];
    const auto oversampled = static_cast<index_t>(std::ceil(GridSpec::sigma * modes[i]));
    g.fine[i] = next_smooth(std::max<index_t>(oversampled, 2 * index_t{width}));
    g.spacing[i] = 2 * std::numbers::pi / static_cast<double>(g.fine[i]);
  }
  index_t total = 1;
  for (int i = 0; i < dim; ++i) {
    if (total > std::numeric_limits<index_t>::max() / g.fine[i]) {
      throw Error(ErrorCode::overflow, "fine grid size overflows");
    }
    total *= g.fine[i];
  }
  return g;
}

}  // namespace esnufft

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "esnufft/binsort.hpp"
#include "esnufft/error.hpp"
#include "esnufft/spread.hpp"
#include "esnufft/thread_pool.hpp"
#include "helpers.hpp"

namespace esnufft {
namespace {

using testing::cplx;
constexpr double pi = std::numbers::pi;

struct Geometry {
  GridSpec grid;
  KernelParams params;

  Geometry(std::vector<index_t> modes, double eps) {
    grid = make_grid_spec(modes, kernel_width(eps, Precision::double_));
    params = select_kernel_params(eps, grid, Precision::double_);
  }

  std::vector<cplx> oracle(const testing::SimplePoints& p, std::span<const cplx> c) const {
    return testing::spread_oracle(p, c, grid.fine, params.width, params.beta);
  }
  std::vector<cplx> zeros() const { return std::vector<cplx>(grid.fine_count()); }
};

enum class Way { gm, gm_sort, sm };

std::vector<cplx> spread_with(Way way, const Geometry& s, const testing::SimplePoints& p,
                              std::span<const cplx> c, ThreadPool* pool = nullptr,
                              bool deterministic = false, index_t cap = 1024) {
  Spreader<double> spreader(s.grid, s.params, pool, deterministic);
  auto fine = s.zeros();
  const auto view = testing::view_of(p);
  if (way == Way::gm) {
    spreader.spread_gm(view, c, fine);
    return fine;
  }
  const auto layout = bin_sort(view, s.grid, default_bin_dims(s.grid.dim));
  if (way == Way::gm_sort) {
    spreader.spread_gm_sort(view, layout, c, fine);
  } else {
    spreader.spread_sm(view, layout, build_subproblems(layout, cap, s.params), c, fine);
  }
  return fine;
}

TEST(SpreadPoint, ZeroStrengthLeavesGridUnchanged) {
  const Geometry s({16, 16}, 1e-5);
  FootprintEvaluator kernel(s.grid, s.params);
  std::vector<cplx> fine(s.grid.fine_count(), cplx(0.5, -1));
  const auto before = fine;
  spread_point<double>({0.3, -1.2, 0}, cplx(0, 0), kernel, s.grid, fine);
  EXPECT_EQ(fine, before);
}

TEST(SpreadPoint, NodePointIsOuterProductOfRows) {
  const Geometry s({16, 16}, 1e-5);
  ASSERT_EQ(s.params.width, 6);
  FootprintEvaluator kernel(s.grid, s.params);
  auto fine = s.zeros();
  // fine node (0, 0) sits at (-pi, -pi)
  spread_point<double>({-pi, -pi, 0}, cplx(1, 0), kernel, s.grid, fine);
  const index_t n = s.grid.fine[0];
  std::vector<double> row;
  for (int a = 0; a < 6; ++a) row.push_back(eval_kernel(s.params.beta, (a - 3) / 3.0));
  EXPECT_EQ(row[0], std::exp(-s.params.beta));
  int nonzero = 0;
  for (auto v : fine) nonzero += v != cplx(0, 0);
  EXPECT_EQ(nonzero, 36);
  for (int b = 0; b < 6; ++b) {
    for (int a = 0; a < 6; ++a) {
      const index_t l1 = wrap_index(a - 3, n);
      const index_t l2 = wrap_index(b - 3, n);
      EXPECT_NEAR(fine[l1 + n * l2].real(), row[a] * row[b], 1e-16);
      EXPECT_EQ(fine[l1 + n * l2].imag(), 0.0);
    }
  }
}

TEST(SpreadPoint, WrapsAcrossLowerBoundary) {
  const Geometry s({16, 16}, 1e-5);
  FootprintEvaluator kernel(s.grid, s.params);
  testing::SimplePoints p;
  p.dim = 2;
  p.x[0] = {-pi + s.grid.spacing[0] / 2};
  p.x[1] = {-pi};
  const std::vector<cplx> c{cplx(1, 0.5)};
  auto fine = s.zeros();
  spread_point<double>({p.x[0][0], p.x[1][0], 0}, c[0], kernel, s.grid, fine);
  const auto expect = s.oracle(p, c);
  EXPECT_LE(testing::max_abs_diff(fine, expect), 1e-12 * testing::l2_norm(expect));
  // cells on the far side of the grid are populated
  const index_t n = s.grid.fine[0];
  EXPECT_NE(fine[(n - 1) + n * (n - 1)], cplx(0, 0));
}

TEST(SpreadPoint, PaddedBufferMatchesGlobalAfterMerge) {
  const Geometry s({16, 16}, 1e-5);
  FootprintEvaluator kernel(s.grid, s.params);
  std::vector<cplx> storage(20 * 20);
  PaddedBinBuffer<double> buf{{-5, 20, 0}, {20, 20, 1}, storage};
  const std::array<double, 3> x{-pi + 0.7 * s.grid.spacing[0], -pi + 25.2 * s.grid.spacing[1], 0};
  spread_point<double>(x, cplx(2, 1), kernel, buf);
  auto merged = s.zeros();
  merge_padded_bin<double>(buf, s.grid, merged);
  auto direct = s.zeros();
  spread_point<double>(x, cplx(2, 1), kernel, s.grid, direct);
  EXPECT_EQ(merged, direct);

  PaddedBinBuffer<double> small{{0, 0, 0}, {4, 4, 1}, std::span(storage.data(), 16)};
  EXPECT_THROW(spread_point<double>(x, cplx(1, 0), kernel, small), Error);
}

TEST(Spread, EmptyPointSetGivesZeroGrid) {
  const Geometry s({16, 16}, 1e-5);
  testing::SimplePoints p;
  for (Way way : {Way::gm, Way::gm_sort, Way::sm}) {
    const auto fine = spread_with(way, s, p, {});
    for (auto v : fine) EXPECT_EQ(v, cplx(0, 0));
  }
}

TEST(Spread, OverwritesPreviousContents) {
  const Geometry s({16, 16}, 1e-5);
  std::mt19937_64 rng(11);
  const auto p = testing::random_points(2, 40, rng);
  const auto c = testing::random_complex(40, rng);
  Spreader<double> spreader(s.grid, s.params);
  std::vector<cplx> fine(s.grid.fine_count(), cplx(7, 7));
  spreader.spread_gm(testing::view_of(p), c, fine);
  EXPECT_EQ(fine, spread_with(Way::gm, s, p, c));
}

TEST(Spread, SinglePointMatchesSpreadPoint) {
  const Geometry s({20, 12}, 1e-7);
  FootprintEvaluator kernel(s.grid, s.params);
  testing::SimplePoints p;
  p.dim = 2;
  p.x[0] = {1.234};
  p.x[1] = {-2.5};
  const std::vector<cplx> c{cplx(0.3, -0.7)};
  auto direct = s.zeros();
  spread_point<double>({1.234, -2.5, 0}, c[0], kernel, s.grid, direct);
  for (Way way : {Way::gm, Way::gm_sort, Way::sm}) EXPECT_EQ(spread_with(way, s, p, c), direct);
}

TEST(Spread, GmMatchesSerialOracle) {
  const Geometry s({32, 40}, 1e-9);
  std::mt19937_64 rng(12);
  const auto p = testing::random_points(2, 1000, rng);
  const auto c = testing::random_complex(1000, rng);
  const auto expect = s.oracle(p, c);
  EXPECT_LE(testing::rel_diff(spread_with(Way::gm, s, p, c), expect), 1e-12);
}

TEST(Spread, GmSortEqualsGm) {
  const Geometry s({64, 64}, 1e-6);
  std::mt19937_64 rng(13);
  const auto p = testing::random_points(2, 5000, rng);
  const auto c = testing::random_complex(5000, rng);
  EXPECT_LE(testing::rel_diff(spread_with(Way::gm_sort, s, p, c), spread_with(Way::gm, s, p, c)),
            1e-12);
}

TEST(Spread, SingleBinVisitOrderEqualsGm) {
  const Geometry s({64, 64}, 1e-6);
  std::mt19937_64 rng(14);
  const auto p = testing::random_points(2, 300, rng, -pi, -pi + 31 * s.grid.spacing[0]);
  const auto c = testing::random_complex(300, rng);
  EXPECT_EQ(spread_with(Way::gm_sort, s, p, c), spread_with(Way::gm, s, p, c));
}

TEST(Spread, ClusterMatchesOracle) {
  const Geometry s({64, 64}, 1e-5);
  ASSERT_EQ(s.params.width, 6);
  std::mt19937_64 rng(15);
  const auto p = testing::cluster_points(2, 10000, s.grid.fine, rng);
  const auto c = testing::random_complex(10000, rng);
  const auto expect = s.oracle(p, c);
  for (Way way : {Way::gm, Way::gm_sort, Way::sm}) {
    EXPECT_LE(testing::rel_diff(spread_with(way, s, p, c), expect), 1e-12);
  }
}

TEST(Spread, SmTouchesOnlyPaddedBinsOfOccupiedBins) {
  const Geometry s({64, 64}, 1e-5);
  std::mt19937_64 rng(16);
  const auto p = testing::cluster_points(2, 2000, s.grid.fine, rng);
  const auto c = testing::random_complex(2000, rng);
  const auto fine = spread_with(Way::sm, s, p, c);
  const auto layout = bin_sort(testing::view_of(p), s.grid, default_bin_dims(2));
  const auto subs = build_subproblems(layout, 1024, s.params);
  const index_t n = s.grid.fine[0];
  std::vector<char> covered(fine.size(), 0);
  for (const auto& sub : subs.items) {
    for (index_t b = 0; b < sub.padded_dims[1]; ++b) {
      for (index_t a = 0; a < sub.padded_dims[0]; ++a) {
        covered[wrap_index(sub.offset[0] + a, n) + n * wrap_index(sub.offset[1] + b, n)] = 1;
      }
    }
  }
  for (std::size_t i = 0; i < fine.size(); ++i) {
    if (!covered[i]) EXPECT_EQ(fine[i], cplx(0, 0));
  }
}

TEST(Spread, SmOneSubproblemEqualsGmSort) {
  const Geometry s({64, 64}, 1e-6);
  std::mt19937_64 rng(17);
  const auto p = testing::random_points(2, 700, rng, -pi, -pi + 31 * s.grid.spacing[0]);
  const auto c = testing::random_complex(700, rng);
  EXPECT_LE(testing::rel_diff(spread_with(Way::sm, s, p, c), spread_with(Way::gm_sort, s, p, c)),
            1e-12);
}

TEST(Spread, SmCornerBinWrapsBothAxes) {
  const Geometry s({64, 64}, 1e-5);
  std::mt19937_64 rng(18);
  const double h = s.grid.spacing[0];
  auto p = testing::random_points(2, 400, rng, -pi, -pi + 2 * h);
  const auto c = testing::random_complex(400, rng);
  const auto fine = spread_with(Way::sm, s, p, c);
  const auto expect = s.oracle(p, c);
  EXPECT_LE(testing::max_abs_diff(fine, expect), 1e-12 * testing::l2_norm(expect));
  const index_t n = s.grid.fine[0];
  EXPECT_NE(fine[(n - 1) + n * (n - 1)], cplx(0, 0));
  EXPECT_NE(fine[(n - 2) + n * 1], cplx(0, 0));
}

TEST(Spread, SmWithSmallCapMatchesOracle3D) {
  const Geometry s({20, 20, 20}, 1e-6);
  std::mt19937_64 rng(19);
  const auto p = testing::random_points(3, 3000, rng);
  const auto c = testing::random_complex(3000, rng);
  const auto expect = s.oracle(p, c);
  EXPECT_LE(testing::rel_diff(spread_with(Way::sm, s, p, c, nullptr, false, 7), expect), 1e-12);
  EXPECT_LE(testing::rel_diff(spread_with(Way::gm, s, p, c), expect), 1e-12);
}

TEST(Spread, MethodEquivalenceWithThreads) {
  ThreadPool pool(4);
  std::mt19937_64 rng(20);
  for (int dim : {2, 3}) {
    const Geometry s(dim == 2 ? std::vector<index_t>{48, 48} : std::vector<index_t>{16, 16, 16},
                  1e-8);
    const auto p = testing::random_points(dim, 20000, rng);
    const auto c = testing::random_complex(20000, rng);
    const auto ref = spread_with(Way::gm, s, p, c);
    for (Way way : {Way::gm, Way::gm_sort, Way::sm}) {
      EXPECT_LE(testing::rel_diff(spread_with(way, s, p, c, &pool), ref), 1e-10);
    }
  }
}

TEST(Spread, DeterministicModeIsBitReproducible) {
  ThreadPool pool(4);
  const Geometry s({48, 48}, 1e-6);
  std::mt19937_64 rng(21);
  const auto p = testing::random_points(2, 10000, rng);
  const auto c = testing::random_complex(10000, rng);
  for (Way way : {Way::gm_sort, Way::sm}) {
    const auto first = spread_with(way, s, p, c, &pool, true, 64);
    for (int r = 0; r < 3; ++r) EXPECT_EQ(spread_with(way, s, p, c, &pool, true, 64), first);
  }
  // a single worker is deterministic as well and matches the batched merge order
  EXPECT_EQ(spread_with(Way::sm, s, p, c, nullptr, false, 64),
            spread_with(Way::sm, s, p, c, &pool, true, 64));
}

TEST(Spread, SupportIsWidthToTheD) {
  std::mt19937_64 rng(22);
  for (double eps : {1e-2, 1e-5, 1e-12}) {
    for (int dim : {2, 3}) {
      const Geometry s(dim == 2 ? std::vector<index_t>{16, 16} : std::vector<index_t>{12, 12, 12}, eps);
      const auto p = testing::random_points(dim, 1, rng);
      const std::vector<cplx> c{cplx(1, 1)};
      const auto fine = spread_with(Way::gm, s, p, c);
      std::size_t nonzero = 0;
      for (auto v : fine) nonzero += v != cplx(0, 0);
      EXPECT_EQ(nonzero, static_cast<std::size_t>(std::pow(s.params.width, dim)));
    }
  }
}

TEST(Spread, TranslationByOneCellShiftsGrid) {
  const Geometry s({32, 24}, 1e-9);
  std::mt19937_64 rng(23);
  auto p = testing::random_points(2, 500, rng);
  const auto c = testing::random_complex(500, rng);
  auto shifted = p;
  for (auto& x : shifted.x[0]) x = fold_coordinate(x + s.grid.spacing[0]);
  for (Way way : {Way::gm, Way::sm}) {
    const auto a = spread_with(way, s, p, c);
    const auto b = spread_with(way, s, shifted, c);
    const index_t n1 = s.grid.fine[0];
    std::vector<cplx> rolled(a.size());
    for (index_t l2 = 0; l2 < s.grid.fine[1]; ++l2) {
      for (index_t l1 = 0; l1 < n1; ++l1) rolled[(l1 + 1) % n1 + n1 * l2] = a[l1 + n1 * l2];
    }
    EXPECT_LE(testing::rel_diff(b, rolled), 1e-13);
  }
}

TEST(Spread, ConjugateStrengthsGiveConjugateGrid) {
  const Geometry s({32, 32}, 1e-7);
  std::mt19937_64 rng(24);
  const auto p = testing::random_points(2, 800, rng);
  const auto c = testing::random_complex(800, rng);
  std::vector<cplx> cc(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) cc[j] = std::conj(c[j]);
  for (Way way : {Way::gm, Way::gm_sort, Way::sm}) {
    const auto a = spread_with(way, s, p, c);
    const auto b = spread_with(way, s, p, cc);
    for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(b[i], std::conj(a[i]));
  }
}

TEST(Spread, GridMassEqualsKernelSum) {
  const Geometry s({24, 20}, 1e-8);
  std::mt19937_64 rng(25);
  const auto p = testing::random_points(2, 50, rng);
  for (std::size_t j = 0; j < p.size(); ++j) {
    testing::SimplePoints one;
    one.dim = 2;
    one.x[0] = {p.x[0][j]};
    one.x[1] = {p.x[1][j]};
    const std::vector<cplx> c{cplx(1.5, -0.5)};
    const auto fine = spread_with(Way::gm, s, one, c);
    cplx mass = 0;
    for (auto v : fine) mass += v;
    double k = 1;
    for (int i = 0; i < 2; ++i) {
      double axis = 0;
      for (index_t l = 0; l < s.grid.fine[i]; ++l) {
        axis += testing::psi_per_axis(l, p.x[i][j], s.grid.fine[i], s.params.width, s.params.beta);
      }
      k *= axis;
    }
    EXPECT_LE(std::abs(mass - c[0] * k), 1e-12 * std::abs(c[0] * k));
  }
}

TEST(Spread, RejectsMismatchedInputs) {
  const Geometry s({16, 16}, 1e-5);
  Spreader<double> spreader(s.grid, s.params);
  std::mt19937_64 rng(26);
  const auto p = testing::random_points(2, 10, rng);
  const auto c = testing::random_complex(9, rng);
  auto fine = s.zeros();
  EXPECT_THROW(spreader.spread_gm(testing::view_of(p), c, fine), Error);
  const auto c10 = testing::random_complex(10, rng);
  std::vector<cplx> small(5);
  EXPECT_THROW(spreader.spread_gm(testing::view_of(p), c10, small), Error);
  const auto other = testing::random_points(2, 11, rng);
  const auto layout = bin_sort(testing::view_of(other), s.grid, default_bin_dims(2));
  EXPECT_THROW(spreader.spread_gm_sort(testing::view_of(p), layout, c10, fine), Error);
  const auto subs = build_subproblems(layout, 1024, s.params);
  EXPECT_THROW(spreader.spread_sm(testing::view_of(p), layout, subs, c10, fine), Error);
}

TEST(Spread, SinglePrecisionCloseToDouble) {
  const Geometry s({32, 32}, 1e-5);
  std::mt19937_64 rng(27);
  const auto p = testing::random_points(2, 2000, rng);
  const auto c = testing::random_complex(2000, rng);
  std::array<std::vector<float>, 3> xf;
  testing::SimplePoints rounded = p;
  for (int i = 0; i < 2; ++i) {
    for (double v : p.x[i]) xf[i].push_back(static_cast<float>(v));
    for (auto& v : rounded.x[i]) v = static_cast<float>(v);
  }
  std::vector<std::complex<float>> cf(c.begin(), c.end());
  std::vector<cplx> cr(cf.begin(), cf.end());
  auto params = select_kernel_params(1e-5, s.grid, Precision::single);
  Spreader<float> spreader(s.grid, params);
  std::vector<std::complex<float>> fine(s.grid.fine_count());
  const auto view = testing::view_of<float>(2, xf);
  const auto layout = bin_sort(view, s.grid, default_bin_dims(2));
  spreader.spread_sm(view, layout, build_subproblems(layout, 1024, params), cf, fine);
  const auto expect = s.oracle(rounded, cr);
  EXPECT_LE(testing::rel_diff(testing::widen(fine), expect), 1e-5);
}

TEST(Spread, SinglePrecisionClusterSumsStayAccurate) {
  const Geometry s({20, 20, 20}, 1e-6);
  std::mt19937_64 rng(28);
  auto p = testing::cluster_points(3, 40000, s.grid.fine, rng);
  std::array<std::vector<float>, 3> xf;
  for (int i = 0; i < 3; ++i) {
    for (auto& v : p.x[i]) {
      v = static_cast<float>(v);
      xf[i].push_back(static_cast<float>(v));
    }
  }
  std::uniform_real_distribution<float> u(0, 1);
  std::vector<std::complex<float>> cf(p.size());
  for (auto& v : cf) v = {u(rng), u(rng)};
  const std::vector<cplx> cr(cf.begin(), cf.end());
  const auto params = select_kernel_params(1e-6, s.grid, Precision::single);
  const auto expect = testing::spread_oracle(p, cr, s.grid.fine, params.width, params.beta);
  Spreader<float> spreader(s.grid, params);
  const auto view = testing::view_of<float>(3, xf);
  const auto layout = bin_sort(view, s.grid, default_bin_dims(3));
  std::vector<std::complex<float>> fine(s.grid.fine_count());
  spreader.spread_gm(view, cf, fine);
  EXPECT_LE(testing::rel_diff(testing::widen(fine), expect), 2e-7);
  spreader.spread_gm_sort(view, layout, cf, fine);
  EXPECT_LE(testing::rel_diff(testing::widen(fine), expect), 2e-7);
  EXPECT_GE(spreader.scratch_bytes(), fine.size() * sizeof(cplx));
}

}  // namespace
}  // namespace esnufft

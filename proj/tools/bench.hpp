#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esnufft/grid.hpp"
#include "esnufft/types.hpp"

namespace esnufft::bench {

enum class Distribution { rand, cluster };

std::string_view to_string(Distribution d) noexcept;
std::optional<Distribution> parse_distribution(std::string_view s) noexcept;
std::optional<Method> parse_method(std::string_view s) noexcept;
std::optional<Precision> parse_precision(std::string_view s) noexcept;

inline constexpr double default_oracle_budget = 1e9;

struct BenchConfig {
  int dim = 2;
  TransformType type = TransformType::type1;
  std::array<index_t, 3> modes{64, 64, 1};
  std::optional<double> density;  // rho; M = ceil(rho * prod n_i)
  std::optional<index_t> points;  // explicit M
  Distribution dist = Distribution::rand;
  double tolerance = 1e-5;
  Method method = Method::sm;
  Precision precision = Precision::double_;
  int repeats = 3;
  std::uint64_t seed = 1;
  int threads = 0;
  bool deterministic = true;
  double oracle_budget = default_oracle_budget;
  /// Coordinates read from a file (dim values per point) replace generated ones.
  std::optional<std::vector<double>> external_coords;
};

/// Throws esnufft::Error with a readable message on an inconsistent config.
void validate(const BenchConfig& config);

/// Fine-grid sizes the library will pick for this config.
GridSpec plan_grid(const BenchConfig& config);

/// M from the config: explicit count, density rule, external file, or rho = 1.
index_t point_count(const BenchConfig& config, const GridSpec& grid);

struct PointSet {
  int dim = 0;
  std::array<std::vector<double>, 3> x;
  std::vector<std::complex<double>> strengths;
  index_t size() const noexcept { return static_cast<index_t>(x[0].size()); }
};

/// rand: iid uniform on [-pi, pi)^d. cluster: iid uniform on prod [0, 8 h_i].
/// Strengths have real and imaginary parts iid uniform on [0, 1).
PointSet gen_points(Distribution dist, index_t m, const GridSpec& grid, std::uint64_t seed);

/// Uniform-side input for type-2 runs, same distribution as the strengths.
std::vector<std::complex<double>> gen_modes(index_t count, std::uint64_t seed);

/// Raw little-endian float64 records, `dim` per point.
std::vector<double> read_point_file(const std::string& path, int dim);

struct BenchRow {
  BenchConfig config;
  GridSpec grid;
  index_t m = 0;
  double setup_ns = 0;
  double exec_median_ns = 0;
  double exec_min_ns = 0;
  std::optional<double> rel_l2_err;
  std::size_t workspace_bytes = 0;

  double per_point(double ns) const noexcept { return ns / static_cast<double>(m > 0 ? m : 1); }
};

/// Plans, binds the points once, then runs `repeats` executions.
BenchRow run_benchmark(const BenchConfig& config);

inline constexpr std::string_view csv_header =
    "dim,type,method,prec,dist,N1,N2,N3,M,tol,setup_ns_per_pt,exec_ns_per_pt,total_ns_per_pt,"
    "rel_l2_err,workspace_bytes,seed";

std::string csv_row(const BenchRow& row);

/// How the reported phases relate to the usual GPU timing categories.
inline constexpr std::string_view timing_note =
    "# setup = set_points (fold, bin sort, subproblems); exec = execute with points bound "
    "(median over repeats); total = setup + exec. There is no host/device transfer, so no "
    "total+mem column is reported.";

}  // namespace esnufft::bench

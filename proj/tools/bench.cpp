#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>

#include "esnufft/error.hpp"
#include "esnufft/kernel.hpp"
#include "esnufft/oracle.hpp"
#include "esnufft/plan.hpp"
#include "esnufft/thread_pool.hpp"

namespace esnufft::bench {

std::string_view to_string(Distribution d) noexcept {
  return d == Distribution::rand ? "rand" : "cluster";
}

std::optional<Distribution> parse_distribution(std::string_view s) noexcept {
  if (s == "rand") return Distribution::rand;
  if (s == "cluster") return Distribution::cluster;
  return std::nullopt;
}

std::optional<Method> parse_method(std::string_view s) noexcept {
  if (s == "gm") return Method::gm;
  if (s == "gmsort") return Method::gm_sort;
  if (s == "sm") return Method::sm;
  return std::nullopt;
}

std::optional<Precision> parse_precision(std::string_view s) noexcept {
  if (s == "f32") return Precision::single;
  if (s == "f64") return Precision::double_;
  return std::nullopt;
}

namespace {

[[noreturn]] void reject(const std::string& msg) { throw Error(ErrorCode::invalid_argument, msg); }

}  // namespace

void validate(const BenchConfig& c) {
  if (c.dim != 2 && c.dim != 3) reject("--dim must be 2 or 3");
  if (c.type != TransformType::type1 && c.type != TransformType::type2) {
    reject("--type must be 1 or 2");
  }
  for (int i = 0; i < c.dim; ++i) {
    if (c.modes[i] < 1) reject("mode counts must be positive");
  }
  if (c.density && c.points) reject("give either --density or --M, not both");
  if (c.density && !(*c.density > 0 && std::isfinite(*c.density))) {
    reject("--density must be positive");
  }
  if (c.points && *c.points < 0) reject("--M must be >= 0");
  if (c.external_coords && (c.density || c.points)) {
    reject("--points fixes M; do not combine it with --density or --M");
  }
  if (!(c.tolerance > 0 && c.tolerance < 1)) reject("--tol must lie in (0, 1)");
  if (c.repeats < 1) reject("--repeats must be >= 1");
  if (c.threads < 0) reject("--threads must be >= 0");
}

GridSpec plan_grid(const BenchConfig& c) {
  std::vector<index_t> modes(c.modes.begin(), c.modes.begin() + c.dim);
  return make_grid_spec(modes, kernel_width(c.tolerance, c.precision));
}

index_t point_count(const BenchConfig& c, const GridSpec& grid) {
  if (c.external_coords) return static_cast<index_t>(c.external_coords->size()) / c.dim;
  if (c.points) return *c.points;
  const double rho = c.density.value_or(1.0);
  // ceil with a relative guard so that exact products are not bumped up by rounding
  const double target = rho * static_cast<double>(grid.fine_count());
  return static_cast<index_t>(std::ceil(target * (1 - 1e-14)));
}

PointSet gen_points(Distribution dist, index_t m, const GridSpec& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PointSet p;
  p.dim = grid.dim;
  for (int i = 0; i < grid.dim; ++i) {
    const double lo = dist == Distribution::rand ? -std::numbers::pi : 0.0;
    const double hi = dist == Distribution::rand ? std::numbers::pi : 8 * grid.spacing[i];
    std::uniform_real_distribution<double> u(lo, hi);
    p.x[i].resize(static_cast<std::size_t>(m));
    for (auto& v : p.x[i]) v = u(rng);
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  p.strengths.resize(static_cast<std::size_t>(m));
  for (auto& c : p.strengths) {
    const double re = unit(rng);
    c = {re, unit(rng)};
  }
  return p;
}

std::vector<std::complex<double>> gen_modes(index_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::complex<double>> f(static_cast<std::size_t>(count));
  for (auto& v : f) {
    const double re = unit(rng);
    v = {re, unit(rng)};
  }
  return f;
}

std::vector<double> read_point_file(const std::string& path, int dim) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) reject("cannot open point file '" + path + "'");
  const auto bytes = static_cast<std::size_t>(in.tellg());
  const std::size_t record = 8 * static_cast<std::size_t>(dim);
  if (bytes % record != 0) {
    reject("point file size " + std::to_string(bytes) + " is not a multiple of " +
           std::to_string(record) + " bytes");
  }
  in.seekg(0);
  std::vector<unsigned char> raw(bytes);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(bytes));
  std::vector<double> out(bytes / 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b) bits = (bits << 8) | raw[8 * i + static_cast<std::size_t>(b)];
    std::memcpy(&out[i], &bits, sizeof bits);
    if (!std::isfinite(out[i])) {
      reject("point file holds a non-finite coordinate at record " + std::to_string(i / dim));
    }
  }
  return out;
}

namespace {

using clock = std::chrono::steady_clock;

double elapsed_ns(clock::time_point a, clock::time_point b) {
  return std::chrono::duration<double, std::nano>(b - a).count();
}

template <class T>
BenchRow run_typed(const BenchConfig& c, const GridSpec& grid, const PointSet& pts) {
  BenchRow row;
  row.config = c;
  row.grid = grid;
  row.m = pts.size();

  PlanOptions opts;
  opts.method = c.method;
  opts.workers = c.threads;
  opts.deterministic = c.deterministic;
  std::vector<index_t> modes(c.modes.begin(), c.modes.begin() + c.dim);
  Plan<T> plan(c.type, modes, c.tolerance, opts);

  std::array<std::vector<T>, 3> x;
  for (int i = 0; i < c.dim; ++i) x[i].assign(pts.x[i].begin(), pts.x[i].end());
  const auto t0 = clock::now();
  plan.set_points(x[0], x[1], x[2]);
  row.setup_ns = elapsed_ns(t0, clock::now());

  std::vector<std::complex<double>> input64 =
      c.type == TransformType::type1 ? pts.strengths : gen_modes(grid.mode_count(), c.seed);
  const std::vector<std::complex<T>> input(input64.begin(), input64.end());
  std::vector<std::complex<T>> output(static_cast<std::size_t>(plan.output_size()));

  std::vector<double> times;
  for (int r = 0; r < c.repeats; ++r) {
    const auto a = clock::now();
    plan.execute(input, output);
    times.push_back(elapsed_ns(a, clock::now()));
  }
  std::sort(times.begin(), times.end());
  const std::size_t mid = times.size() / 2;
  row.exec_median_ns = times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
  row.exec_min_ns = times.front();
  row.workspace_bytes = plan.workspace_bytes();

  const double cost = static_cast<double>(grid.mode_count()) * static_cast<double>(row.m);
  if (row.m > 0 && cost <= c.oracle_budget) {
    // The oracle sees the coordinates and inputs exactly as the plan received them.
    std::array<std::vector<double>, 3> xd;
    PointsView<double> view;
    view.dim = c.dim;
    for (int i = 0; i < c.dim; ++i) {
      xd[i].assign(x[i].begin(), x[i].end());
      view.axis[i] = xd[i];
    }
    const std::vector<std::complex<double>> in_used(input.begin(), input.end());
    ThreadPool pool(c.threads);
    const auto exact = c.type == TransformType::type1
                           ? direct_type1(view, in_used, grid.modes, &pool)
                           : direct_type2(view, in_used, grid.modes, &pool);
    bool any = false;
    for (const auto& v : exact) any = any || v != std::complex<double>{};
    if (any) row.rel_l2_err = rel_l2_error(std::span<const std::complex<T>>(output), exact);
  }
  return row;
}

}  // namespace

BenchRow run_benchmark(const BenchConfig& config) {
  validate(config);
  const GridSpec grid = plan_grid(config);
  const index_t m = point_count(config, grid);
  PointSet pts = gen_points(config.dist, m, grid, config.seed);
  if (config.external_coords) {
    for (int i = 0; i < config.dim; ++i) {
      for (index_t j = 0; j < m; ++j) {
        pts.x[i][j] = (*config.external_coords)[static_cast<std::size_t>(j * config.dim + i)];
      }
    }
  }
  return config.precision == Precision::single ? run_typed<float>(config, grid, pts)
                                               : run_typed<double>(config, grid, pts);
}

std::string csv_row(const BenchRow& r) {
  const auto& c = r.config;
  char err[32] = "";
  if (r.rel_l2_err) std::snprintf(err, sizeof err, "%.6e", *r.rel_l2_err);
  const double setup = r.per_point(r.setup_ns);
  const double exec = r.per_point(r.exec_median_ns);
  char buf[512];
  std::snprintf(buf, sizeof buf, "%d,%d,%s,%s,%s,%lld,%lld,%lld,%lld,%g,%.3f,%.3f,%.3f,%s,%zu,%llu",
                c.dim, static_cast<int>(c.type), std::string(esnufft::to_string(c.method)).c_str(),
                std::string(esnufft::to_string(c.precision)).c_str(),
                std::string(to_string(c.dist)).c_str(), static_cast<long long>(r.grid.modes[0]),
                static_cast<long long>(r.grid.modes[1]), static_cast<long long>(r.grid.modes[2]),
                static_cast<long long>(r.m), c.tolerance, setup, exec, setup + exec, err,
                r.workspace_bytes, static_cast<unsigned long long>(c.seed));
  return buf;
}

}  // namespace esnufft::bench

// esnufft-bench: timing and accuracy runs over generated or external point sets.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bench.hpp"
#include "esnufft/error.hpp"

namespace {

using namespace esnufft;

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::invalid_argument, msg); }

index_t parse_count(const std::string& s, const char* what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) fail(std::string("cannot read ") + what + " from '" + s + "'");
  return v;
}

double parse_real(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) fail(std::string("cannot read ") + what + " from '" + s + "'");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonuniform FFT benchmark and accuracy harness"};
  int dim = 2, type = 1, repeats = 3, threads = 0;
  std::string modes = "64", dist = "rand", tols = "1e-5", methods = "sm", prec = "f64";
  std::string out_path, points_path;
  std::optional<double> density;
  std::optional<long long> m_points;
  std::uint64_t seed = 1;
  bool relaxed = false;
  double budget = bench::default_oracle_budget;

  app.add_option("--dim", dim, "2 or 3");
  app.add_option("--type", type, "transform type, 1 or 2");
  app.add_option("--n", modes, "mode counts N1[,N2[,N3]]; one value applies to every axis");
  auto* dens = app.add_option("--density", density, "points per fine-grid cell (rho)");
  auto* mopt = app.add_option("--M", m_points, "number of nonuniform points");
  dens->excludes(mopt);
  app.add_option("--dist", dist, "rand or cluster");
  app.add_option("--tol", tols, "tolerance, or a comma list");
  app.add_option("--method", methods, "gm, gmsort or sm, or a comma list");
  app.add_option("--prec", prec, "f32 or f64");
  app.add_option("--repeats", repeats, "timed executions after one setup");
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--threads", threads, "worker threads, 0 = all cores");
  app.add_option("--out", out_path, "CSV output file (default: stdout)");
  app.add_option("--points", points_path, "raw little-endian float64 coordinates, d per point");
  app.add_option("--oracle-budget", budget, "skip the accuracy column when N*M exceeds this");
  app.add_flag("--relaxed", relaxed, "let parallel merges run in any order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  std::vector<bench::BenchConfig> configs;
  try {
    bench::BenchConfig base;
    base.dim = dim;
    if (type != 1 && type != 2) fail("--type must be 1 or 2");
    base.type = static_cast<TransformType>(type);
    if (dim != 2 && dim != 3) fail("--dim must be 2 or 3");
    const auto n = split(modes);
    if (n.size() != 1 && static_cast<int>(n.size()) != dim) {
      fail("--n needs 1 or " + std::to_string(dim) + " values");
    }
    base.modes = {1, 1, 1};
    for (int i = 0; i < dim; ++i) base.modes[i] = parse_count(n.size() == 1 ? n[0] : n[i], "--n");
    base.density = density;
    if (m_points) base.points = *m_points;
    const auto d = bench::parse_distribution(dist);
    if (!d) fail("--dist must be rand or cluster");
    base.dist = *d;
    const auto p = bench::parse_precision(prec);
    if (!p) fail("--prec must be f32 or f64");
    base.precision = *p;
    base.repeats = repeats;
    base.seed = seed;
    base.threads = threads;
    base.deterministic = !relaxed;
    base.oracle_budget = budget;
    if (!points_path.empty()) base.external_coords = bench::read_point_file(points_path, dim);

    const auto method_list = split(methods);
    const auto tol_list = split(tols);
    if (method_list.empty()) fail("--method is empty");
    if (tol_list.empty()) fail("--tol is empty");
    for (const auto& ms : method_list) {
      const auto method = bench::parse_method(ms);
      if (!method) fail("unknown method '" + ms + "' (use gm, gmsort or sm)");
      for (const auto& ts : tol_list) {
        bench::BenchConfig c = base;
        c.method = *method;
        c.tolerance = parse_real(ts, "--tol");
        bench::validate(c);
        configs.push_back(std::move(c));
      }
    }
  } catch (const Error& e) {
    std::cerr << "esnufft-bench: " << e.what() << "\n";
    return 2;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "esnufft-bench: cannot write '" << out_path << "'\n";
      return 2;
    }
  }
  std::ostream& csv = out_path.empty() ? std::cout : file;
  std::ostream& notes = out_path.empty() ? std::cerr : std::cout;
  notes << bench::timing_note << "\n";
  csv << bench::csv_header << "\n";

  try {
    for (const auto& c : configs) {
      const auto row = bench::run_benchmark(c);
      csv << bench::csv_row(row) << "\n";
      csv.flush();
      char line[256];
      std::snprintf(line, sizeof line,
                    "# %s %s tol=%g M=%lld exec median %.2f ns/pt, min %.2f ns/pt, %.3g pts/s",
                    std::string(to_string(c.method)).c_str(),
                    std::string(to_string(c.precision)).c_str(), c.tolerance,
                    static_cast<long long>(row.m), row.per_point(row.exec_median_ns),
                    row.per_point(row.exec_min_ns),
                    row.exec_median_ns > 0 ? 1e9 * static_cast<double>(row.m) / row.exec_median_ns
                                           : 0.0);
      notes << line << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "esnufft-bench: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "nplic/geometry.hpp"
#include "nplic/model.hpp"

namespace nplic {

struct QueryBatch {
  std::vector<Vec3> normals;
  std::vector<double> alphas;
};

// Deterministic batch: unit normals by rejection sampling in the cube
// (accept 0.1 <= |v| <= 1, normalize), alpha ~ uniform(1e-6, 1-1e-6).
QueryBatch make_query_batch(MeshType mesh, std::size_t size, std::uint64_t seed);

struct BenchRow {
  std::string mesh;
  std::string solver;  // "exact" or "nplic"
  std::size_t batch_size = 0;
  double wall_time_seconds = 0.0;
  double throughput = 0.0;  // queries per second
  double speedup = 0.0;     // exact_time / nplic_time, filled on nplic rows
};

struct BenchReport {
  bool parallel = false;
  std::vector<BenchRow> rows;
};

struct BenchOptions {
  std::vector<std::size_t> sizes = {1000, 10000, 100000, 1000000};
  int repeats = 5;
  int threads = 1;  // 1 = paper-parity serial mode
  std::uint64_t seed = 1;
};

// Times the exact solver (per-query loop) and the surrogate (batched forward)
// on identical query batches; reports the median of `repeats` runs. Batch
// construction and model loading are excluded from the timed region.
BenchReport run_bench(MeshType mesh, const MlpModel& model, const BenchOptions& opts);

// Forward-pass cost per query: 2dN multiply-adds + N bias adds + N ReLU
// + 2N output multiply-adds + 1 output bias.
long analytic_flops(const MlpModel& model);

// Median-of-repeats wall time of fn(), in seconds (steady clock).
double time_median(int repeats, const std::function<void()>& fn);

void write_report(const BenchReport& report, std::ostream& out);
void write_report(const BenchReport& report, const std::string& path);

}  // namespace nplic

#include "nplic/bench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>

#include "nplic/exact_plic.hpp"
#include "nplic/parallel.hpp"
#include "nplic/rng.hpp"
#include "nplic/text_io.hpp"

namespace nplic {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

QueryBatch make_query_batch(MeshType mesh, std::size_t size, std::uint64_t seed) {
  if (size < 1) throw std::invalid_argument("batch size must be >= 1");
  const int dim = dimension(mesh);
  SplitMix64 rng(derive_seed(seed, "bench-batch"));
  QueryBatch batch;
  batch.normals.reserve(size);
  batch.alphas.reserve(size);
  while (batch.normals.size() < size) {
    Vec3 v{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
           dim == 3 ? rng.uniform(-1.0, 1.0) : 0.0};
    const double len = norm(v);
    if (len < 0.1 || len > 1.0) continue;
    batch.normals.push_back({v.x / len, v.y / len, v.z / len});
    batch.alphas.push_back(rng.uniform(1e-6, 1.0 - 1e-6));
  }
  return batch;
}

double time_median(int repeats, const std::function<void()>& fn) {
  std::vector<double> times(std::max(repeats, 1));
  for (double& t : times) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    t = seconds_since(t0);
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

BenchReport run_bench(MeshType mesh, const MlpModel& model, const BenchOptions& opts) {
  const Cell cell = canonical_cell(mesh);
  BenchReport report;
  report.parallel = opts.threads > 1;

  std::vector<double> exact_c, nplic_c;
  for (const std::size_t size : opts.sizes) {
    const QueryBatch batch = make_query_batch(mesh, size, opts.seed);
    exact_c.assign(size, 0.0);

    const double t_exact = time_median(opts.repeats, [&] {
      parallel_for(size, opts.threads, [&](std::size_t i) {
        exact_c[i] = solve_c_exact(cell, batch.normals[i], batch.alphas[i]);
      });
    });

    const double t_nplic = time_median(opts.repeats, [&] {
      if (opts.threads <= 1) {
        nplic_c = nplic_solve_batch(model, mesh, batch.normals, batch.alphas);
        return;
      }
      nplic_c.resize(size);
      const std::size_t chunk = (size + opts.threads - 1) / opts.threads;
      parallel_for(static_cast<std::size_t>(opts.threads), opts.threads, [&](std::size_t t) {
        const std::size_t lo = t * chunk;
        if (lo >= size) return;
        const std::size_t hi = std::min(size, lo + chunk);
        const auto part = nplic_solve_batch(
            model, mesh, std::span(batch.normals).subspan(lo, hi - lo),
            std::span(batch.alphas).subspan(lo, hi - lo));
        std::copy(part.begin(), part.end(), nplic_c.begin() + static_cast<std::ptrdiff_t>(lo));
      });
    });

    const double n = static_cast<double>(size);
    report.rows.push_back({mesh_name(mesh), "exact", size, t_exact, n / t_exact, 0.0});
    report.rows.push_back(
        {mesh_name(mesh), "nplic", size, t_nplic, n / t_nplic, t_exact / t_nplic});
  }
  return report;
}

long analytic_flops(const MlpModel& model) {
  const long d = input_dim(model.config.layout);
  const long n = model.config.hidden_units;
  return 2 * d * n + n + n + 2 * n + 1;
}

void write_report(const BenchReport& report, std::ostream& out) {
  out << "nplic-bench v1 mode=" << (report.parallel ? "parallel" : "serial") << '\n';
  out << "mesh_type,solver,batch_size,wall_time_seconds,throughput,speedup\n";
  for (const BenchRow& r : report.rows) {
    out << r.mesh << ',' << r.solver << ',' << r.batch_size << ','
        << format_double(r.wall_time_seconds) << ',' << format_double(r.throughput) << ',';
    if (r.speedup > 0.0) out << format_double(r.speedup);
    out << '\n';
  }
}

void write_report(const BenchReport& report, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_report(report, f);
  if (!f.good()) throw std::runtime_error("write failed for " + path);
}

}  // namespace nplic

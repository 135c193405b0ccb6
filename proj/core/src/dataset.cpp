#include "nplic/dataset.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "nplic/exact_plic.hpp"
#include "nplic/parallel.hpp"
#include "nplic/rng.hpp"
#include "nplic/text_io.hpp"

namespace nplic {

namespace {

constexpr std::string_view kHeaderMagic = "nplic-dataset v1";

void label_records(MeshType mesh, std::vector<SampleRecord>& records, int threads) {
  const Cell cell = canonical_cell(mesh);
  parallel_for(records.size(), threads, [&](std::size_t i) {
    SampleRecord& r = records[i];
    const Vec3 n = angles_to_normal({r.theta, r.phi});
    r.c = solve_c_exact(cell, n, r.alpha0, 1e-12);
  });
}

std::vector<SampleRecord> grid_records(MeshType mesh, int n_n, int n_alpha) {
  const std::vector<double> alphas = sample_alphas(n_alpha);
  std::vector<SampleRecord> out;
  const int m_flag = is_simplex(mesh) ? 1 : 0;
  if (dimension(mesh) == 2) {
    const std::vector<double> thetas = sample_normals_2d(n_n);
    out.reserve(thetas.size() * alphas.size());
    for (double th : thetas)
      for (double a : alphas) out.push_back({mesh, m_flag, th, std::nullopt, a, 0.0});
  } else {
    const std::vector<Angles> angles = sample_normals_3d(n_n);
    out.reserve(angles.size() * alphas.size());
    for (const Angles& ang : angles)
      for (double a : alphas) out.push_back({mesh, m_flag, ang.theta, ang.phi, a, 0.0});
  }
  return out;
}

}  // namespace

std::vector<double> sample_alphas(int n_alpha) {
  if (n_alpha < 2) throw std::invalid_argument("sample_alphas requires n_alpha >= 2");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_alpha) + 10);
  for (int k = 9; k >= 5; --k) out.push_back(std::pow(10.0, -k));
  for (int m = 1; m <= n_alpha; ++m)
    out.push_back(1e-4 + (m - 1) / static_cast<double>(n_alpha - 1) * (1.0 - 2e-4));
  for (int k = 5; k <= 9; ++k) out.push_back(1.0 - std::pow(10.0, -k));
  return out;
}

std::vector<double> sample_normals_2d(int n_n) {
  if (n_n < 1) throw std::invalid_argument("sample_normals_2d requires n_n >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_n) + 1);
  for (int k = 0; k <= n_n; ++k) out.push_back(k * std::numbers::pi / n_n);
  return out;
}

std::vector<Angles> sample_normals_3d(int n_n) {
  if (n_n < 1) throw std::invalid_argument("sample_normals_3d requires n_n >= 1");
  std::vector<Angles> out;
  out.reserve(static_cast<std::size_t>(2 * n_n) * (n_n + 1));
  for (int k = 0; k <= n_n; ++k)
    for (int j = 1; j <= 2 * n_n; ++j)
      out.push_back({k * std::numbers::pi / n_n, j * std::numbers::pi / (2.0 * n_n)});
  return out;
}

Dataset generate_dataset(MeshType mesh, int n_n, int n_alpha, int threads) {
  Dataset ds;
  ds.config = {mesh_name(mesh), n_n, n_alpha};
  ds.records = grid_records(mesh, n_n, n_alpha);
  label_records(mesh, ds.records, threads);
  return ds;
}

Dataset generate_combined(MeshType simplex, MeshType rect, int n_n, int n_alpha, int threads) {
  const bool two_d = simplex == MeshType::Triangle && rect == MeshType::Square;
  const bool three_d = simplex == MeshType::Tetrahedron && rect == MeshType::Cube;
  if (!two_d && !three_d)
    throw std::invalid_argument("combined datasets pair triangle+square or tetrahedron+cube");
  Dataset ds;
  ds.config = {two_d ? "t-s" : "t-c", n_n, n_alpha};
  ds.records = grid_records(simplex, n_n, n_alpha);
  std::vector<SampleRecord> rect_part = grid_records(rect, n_n, n_alpha);
  label_records(simplex, ds.records, threads);
  label_records(rect, rect_part, threads);
  ds.records.insert(ds.records.end(), rect_part.begin(), rect_part.end());
  return ds;
}

SplitDataset split_dataset(const Dataset& ds, std::uint64_t seed) {
  const std::size_t n = ds.records.size();
  if (n < 10) throw std::invalid_argument("split_dataset needs at least 10 records");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  SplitMix64 rng(seed);
  fisher_yates(order, rng);

  const auto n_val = static_cast<std::size_t>(std::lround(0.1 * static_cast<double>(n)));
  const auto n_test = static_cast<std::size_t>(std::lround(0.2 * static_cast<double>(n)));
  const std::size_t n_train = n - n_val - n_test;

  SplitDataset split;
  split.split_seed = seed;
  split.train.config = split.validation.config = split.test.config = ds.config;
  split.train.records.reserve(n_train);
  split.validation.records.reserve(n_val);
  split.test.records.reserve(n_test);
  for (std::size_t i = 0; i < n; ++i) {
    const SampleRecord& r = ds.records[order[i]];
    if (i < n_train)
      split.train.records.push_back(r);
    else if (i < n_train + n_val)
      split.validation.records.push_back(r);
    else
      split.test.records.push_back(r);
  }
  return split;
}

void write_dataset(const Dataset& ds, std::ostream& out) {
  out << kHeaderMagic << ' ' << ds.config.tag << " nn=" << ds.config.n_normals
      << " nalpha=" << ds.config.n_alphas << '\n';
  for (const SampleRecord& r : ds.records) {
    out << mesh_name(r.mesh_type) << ',' << r.m << ',' << format_double(r.theta) << ',';
    if (r.phi) out << format_double(*r.phi);
    out << ',' << format_double(r.alpha0) << ',' << format_double(r.c) << '\n';
  }
}

void write_dataset(const Dataset& ds, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_dataset(ds, f);
  if (!f.good()) throw std::runtime_error("write failed for " + path);
}

Dataset read_dataset(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("dataset line 1: empty file");
  if (line.ends_with('\r')) line.pop_back();
  const auto head = split_on(line, ' ');
  if (head.size() != 5 || head[0] != "nplic-dataset" || head[1] != "v1" ||
      !head[3].starts_with("nn=") || !head[4].starts_with("nalpha="))
    throw std::runtime_error("dataset line 1: bad header '" + line + "'");
  Dataset ds;
  ds.config.tag = std::string(head[2]);
  ds.config.n_normals = static_cast<int>(parse_long(head[3].substr(3), "dataset line 1"));
  ds.config.n_alphas = static_cast<int>(parse_long(head[4].substr(7), "dataset line 1"));

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.ends_with('\r')) line.pop_back();
    if (line.empty()) continue;
    const std::string context = "dataset line " + std::to_string(line_no);
    const auto f = split_on(line, ',');
    if (f.size() != 6) throw std::runtime_error(context + ": expected 6 fields");
    SampleRecord r;
    const auto mesh = mesh_from_name(f[0]);
    if (!mesh) throw std::runtime_error(context + ": unknown mesh '" + std::string(f[0]) + "'");
    r.mesh_type = *mesh;
    r.m = static_cast<int>(parse_long(f[1], context));
    r.theta = parse_double(f[2], context);
    if (!f[3].empty()) r.phi = parse_double(f[3], context);
    r.alpha0 = parse_double(f[4], context);
    r.c = parse_double(f[5], context);
    ds.records.push_back(r);
  }
  return ds;
}

Dataset read_dataset(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_dataset(f);
}

}  // namespace nplic

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nplic/geometry.hpp"

namespace nplic {

// One labelled PLIC query on the canonical cell of mesh_type.
struct SampleRecord {
  MeshType mesh_type = MeshType::Square;
  int m = 0;  // 1 = triangular/tetrahedral, 0 = square/cubic
  double theta = 0.0;
  std::optional<double> phi;  // absent in 2D
  double alpha0 = 0.0;
  double c = 0.0;  // label
};

struct DatasetConfig {
  std::string tag;  // mesh name or "t-s"/"t-c"
  int n_normals = 0;
  int n_alphas = 0;
};

struct Dataset {
  DatasetConfig config;
  std::vector<SampleRecord> records;
};

struct SplitDataset {
  Dataset train, validation, test;
  std::uint64_t split_seed = 0;
};

// Alpha grid: {1e-9..1e-5} + linear ramp 1e-4..1-1e-4 (n_alpha points) +
// {1-1e-5..1-1e-9}; size n_alpha + 10, strictly inside (0,1).
std::vector<double> sample_alphas(int n_alpha);

// 2D orientations: theta = k*pi/n_n, k = 0..n_n.
std::vector<double> sample_normals_2d(int n_n);

// 3D orientations: theta = k*pi/n_n (k = 0..n_n) x phi = j*pi/(2 n_n)
// (j = 1..2 n_n), theta-major. Pole rows are kept as generated.
std::vector<Angles> sample_normals_3d(int n_n);

// Grid product in nested order (theta outer, phi middle, alpha inner), each
// labelled with the exact solver at tol 1e-12.
Dataset generate_dataset(MeshType mesh, int n_n, int n_alpha, int threads = 1);

// Simplex dataset followed by the square/cubic one, with the m flag set;
// meshes must pair {Triangle,Square} or {Tetrahedron,Cube}.
Dataset generate_combined(MeshType simplex, MeshType rect, int n_n, int n_alpha,
                          int threads = 1);

// Fisher-Yates shuffle under SplitMix64(seed), then 70/10/20 train/val/test
// (val/test sizes rounded to nearest, remainder to train).
SplitDataset split_dataset(const Dataset& ds, std::uint64_t seed);

void write_dataset(const Dataset& ds, std::ostream& out);
void write_dataset(const Dataset& ds, const std::string& path);
Dataset read_dataset(std::istream& in);
Dataset read_dataset(const std::string& path);

}  // namespace nplic

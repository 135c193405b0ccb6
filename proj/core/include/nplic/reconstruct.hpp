#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nplic/geometry.hpp"
#include "nplic/model.hpp"

namespace nplic {

// Uniform 2D scalar field; cell (i,j) covers [i*h,(i+1)*h] x [j*h,(j+1)*h].
struct VofGrid {
  int nx = 0, ny = 0;
  double h = 1.0;
  std::vector<double> alpha;  // nx * ny, i-major

  double& at(int i, int j) { return alpha[static_cast<std::size_t>(i) * ny + j]; }
  double at(int i, int j) const { return alpha[static_cast<std::size_t>(i) * ny + j]; }
};

// Liquid fraction (alpha = 1) outside a gas disk (alpha = 0); interface cells
// are resolved by adaptive subdivision to an effective 4096^2 per cell.
VofGrid make_circle_field(Vec3 center, double radius, int n, double h);

struct CellNormal {
  int i = 0, j = 0;
  Vec3 n;  // -grad(alpha)/|grad(alpha)|, points toward the gas side
};

// Youngs 1-2-1 stencil on interface cells (one-sided at grid borders);
// cells with |grad| < 1e-12 are skipped.
std::vector<CellNormal> estimate_normals(const VofGrid& grid);

struct CellInterface {
  int i = 0, j = 0;
  Vec3 normal;       // unit normal, cell-local = global orientation
  double c = 0.0;    // plane constant in unit-cell coordinates
  Vec3 p0, p1;       // segment endpoints, global coordinates
};

enum class SolverKind { Exact, Nplic };

// One segment per interface cell, ordered by (i,j). The surrogate solver
// requires a model covering Square.
std::vector<CellInterface> reconstruct_field(const VofGrid& grid, SolverKind solver,
                                             const MlpModel* model = nullptr, int threads = 1);

struct LabeledSegments {
  std::string solver;
  std::vector<CellInterface> cells;
};

void emit_segments_csv(std::span<const LabeledSegments> sets, std::ostream& out);
void emit_segments_csv(std::span<const LabeledSegments> sets, const std::string& path);
std::vector<LabeledSegments> read_segments_csv(std::istream& in);

// Grid lines plus one polyline style per solver, 1 user unit per cell width.
void emit_segments_svg(const VofGrid& grid, std::span<const LabeledSegments> sets,
                       std::ostream& out);
void emit_segments_svg(const VofGrid& grid, std::span<const LabeledSegments> sets,
                       const std::string& path);

}  // namespace nplic

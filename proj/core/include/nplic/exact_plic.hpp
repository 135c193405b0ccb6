#pragma once

#include <array>
#include <functional>
#include <span>

#include "nplic/geometry.hpp"

namespace nplic {

// Row-major square matrix, top-left dim x dim block in use.
using Mat3 = std::array<std::array<double, 3>, 3>;

// Composition mapping an arbitrary simplex onto the canonical unit simplex:
// x = origin + R^T * (Q * delta). R is orthonormal (rows; may include a
// reflection so that y3 > 0 and z4 > 0 hold), Q is upper triangular with the
// aligned vertex coordinates as columns.
struct NormalizationTransform {
  int dim = 3;
  Vec3 origin;   // P1, subtracted before rotating
  Mat3 rotation; // rows r0,r1,r2: aligned = R * (x - origin)
  Mat3 q;        // columns are aligned P2-P1, P3-P1 [, P4-P1]
  double det_q = 0.0;
};

struct TransformedPlane {
  Vec3 n_delta;     // unit normal in canonical coordinates
  double c_delta;   // plane constant in canonical coordinates
  double scale;     // |Q^T R n|, used by the back transform
  double c_shift;   // n . origin; physical C = c_delta * scale - c_shift
};

// Bracketed root finding for volume_fraction(cell, n, C) = alpha0.
// Bisection with a secant acceleration; terminates on |alpha - alpha0| <=
// tol_alpha or bracket width 1e-14 * (c_max - c_min).
double solve_c_exact(const Cell& cell, Vec3 n, double alpha0, double tol_alpha = 1e-12);

// 3 points (2D, z ignored) or 4 points (3D) -> alignment + Eq-style upper
// triangular matrix mapping onto the canonical simplex. Throws on degenerate
// input.
std::pair<NormalizationTransform, Cell> normalize_simplex(std::span<const Vec3> vertices);

TransformedPlane transform_plane(const NormalizationTransform& t, Vec3 n, double c);

// Applies t to a canonical-frame unit normal/constant, returning the physical
// plane; inverse of transform_plane up to normalization.
Vec3 apply_to_direction(const NormalizationTransform& t, Vec3 delta_dir);

using CanonicalSolver = std::function<double(MeshType, Vec3, double)>;

// normalize -> transform -> canonical solve -> back transform. The default
// canonical solver is solve_c_exact on the canonical cell.
double solve_c_general(std::span<const Vec3> vertices, Vec3 n, double alpha0);
double solve_c_general(std::span<const Vec3> vertices, Vec3 n, double alpha0,
                       const CanonicalSolver& solver);

// Closed-form inverse on the canonical square/cube (piecewise
// linear/quadratic/cubic branches); agrees with solve_c_exact to 1e-10.
double solve_c_rect_analytic(MeshType mesh, Vec3 n, double alpha0);

}  // namespace nplic

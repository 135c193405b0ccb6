#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "nplic/vec.hpp"

namespace nplic {

enum class MeshType { Square, Triangle, Cube, Tetrahedron };

int dimension(MeshType t);
bool is_simplex(MeshType t);
const char* mesh_name(MeshType t);
// Accepts the names written by mesh_name plus the CLI short form "tetra".
std::optional<MeshType> mesh_from_name(std::string_view name);

// Convex cell, canonical unit form or an arbitrary simplex.
// Vertex counts: Square 4 (ccw), Triangle 3, Cube 8 (bottom face ccw then top
// face ccw, i.e. z=0: (0,0),(1,0),(1,1),(0,1), then the same at z=1),
// Tetrahedron 4.
struct Cell {
  MeshType type;
  std::vector<Vec3> vertices;
};

// Interface orientation, theta in [0,pi]; phi in (0,2pi] in 3D, absent in 2D.
struct Angles {
  double theta = 0.0;
  std::optional<double> phi;
};

Cell canonical_cell(MeshType t);
double cell_measure(const Cell& cell);

Vec3 angles_to_normal(const Angles& a);
// Pole convention: phi = 2pi when |sin theta| < 1e-12 (phi undefined there).
Angles normal_to_angles(Vec3 n, int dim);

struct CBounds {
  double c_min = 0.0;  // volume_fraction(c_min) = 1
  double c_max = 0.0;  // volume_fraction(c_max) = 0
};

CBounds c_bounds(const Cell& cell, Vec3 n);

// Fraction of the cell on the n.x + C <= 0 side, by half-space clipping.
// Points within 1e-14 of the plane count as inside.
double volume_fraction(const Cell& cell, Vec3 n, double c);

// Ordered plane/cell intersection: a 2-point segment in 2D, a 3..6 vertex
// polygon in 3D. Throws if the plane misses the cell interior.
std::vector<Vec3> interface_polygon(const Cell& cell, Vec3 n, double c);

}  // namespace nplic

#include "nplic/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nplic {

namespace {

constexpr double kOnPlane = 1e-14;  // |n.x + c| below this counts as inside

bool inside(double s) { return s <= kOnPlane; }

double clamp01(double t) { return std::clamp(t, 0.0, 1.0); }

double tet_volume(Vec3 a, Vec3 b, Vec3 c, Vec3 d) {
  return std::abs(dot(b - a, cross(c - a, d - a))) / 6.0;
}

double tri_area(Vec3 a, Vec3 b, Vec3 c) {
  const Vec3 u = b - a, v = c - a;
  return std::abs(u.x * v.y - u.y * v.x) / 2.0;
}

// Volume of {x in tet : n.x + c <= 0} by sign case analysis on the vertices.
double clipped_tet_volume(const std::array<Vec3, 4>& v, Vec3 n, double c) {
  std::array<double, 4> s;
  std::array<int, 4> in_idx{}, out_idx{};
  int k = 0, m = 0;
  for (int i = 0; i < 4; ++i) {
    s[i] = dot(n, v[i]) + c;
    if (inside(s[i]))
      in_idx[k++] = i;
    else
      out_idx[m++] = i;
  }
  const double vol = tet_volume(v[0], v[1], v[2], v[3]);
  auto cut = [&](int a, int b) {
    const double t = clamp01(s[a] / (s[a] - s[b]));
    return lerp(v[a], v[b], t);
  };
  switch (k) {
    case 0:
      return 0.0;
    case 4:
      return vol;
    case 1: {
      const int a = in_idx[0];
      double f = 1.0;
      for (int j = 0; j < 3; ++j) f *= clamp01(s[a] / (s[a] - s[out_idx[j]]));
      return vol * f;
    }
    case 3: {
      const int d = out_idx[0];
      double f = 1.0;
      for (int j = 0; j < 3; ++j) f *= clamp01(s[d] / (s[d] - s[in_idx[j]]));
      return vol * (1.0 - f);
    }
    default: {  // 2 in, 2 out: wedge, fanned from vertex a into three tets
      const int a = in_idx[0], b = in_idx[1], c0 = out_idx[0], d0 = out_idx[1];
      const Vec3 pac = cut(a, c0), pad = cut(a, d0);
      const Vec3 pbc = cut(b, c0), pbd = cut(b, d0);
      return tet_volume(v[a], v[b], pbc, pbd) + tet_volume(v[a], pac, pbc, pbd) +
             tet_volume(v[a], pac, pbd, pad);
    }
  }
}

// Cube as six tetrahedra around the v0-v6 diagonal (vertex order per Cell doc).
constexpr std::array<std::array<int, 4>, 6> kCubeTets = {{
    {0, 1, 2, 6},
    {0, 1, 5, 6},
    {0, 3, 2, 6},
    {0, 3, 7, 6},
    {0, 4, 5, 6},
    {0, 4, 7, 6},
}};

// Sutherland-Hodgman against the single half-plane n.x + c <= 0.
std::vector<Vec3> clip_polygon(const std::vector<Vec3>& poly, Vec3 n, double c) {
  std::vector<Vec3> out;
  out.reserve(poly.size() + 1);
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec3 a = poly[i];
    const Vec3 b = poly[(i + 1) % m];
    const double sa = dot(n, a) + c;
    const double sb = dot(n, b) + c;
    if (inside(sa)) {
      out.push_back(a);
      if (!inside(sb)) out.push_back(lerp(a, b, clamp01(sa / (sa - sb))));
    } else if (inside(sb)) {
      out.push_back(lerp(a, b, clamp01(sa / (sa - sb))));
    }
  }
  return out;
}

double polygon_area(const std::vector<Vec3>& poly) {
  double twice = 0.0;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec3 a = poly[i], b = poly[(i + 1) % m];
    twice += a.x * b.y - b.x * a.y;
  }
  return std::abs(twice) / 2.0;
}

void check_vertex_count(const Cell& cell) {
  const std::size_t want = cell.type == MeshType::Cube      ? 8
                           : cell.type == MeshType::Triangle ? 3
                                                             : 4;
  if (cell.vertices.size() != want)
    throw std::invalid_argument("cell has " + std::to_string(cell.vertices.size()) +
                                " vertices, expected " + std::to_string(want));
}

}  // namespace

int dimension(MeshType t) {
  return (t == MeshType::Square || t == MeshType::Triangle) ? 2 : 3;
}

bool is_simplex(MeshType t) {
  return t == MeshType::Triangle || t == MeshType::Tetrahedron;
}

const char* mesh_name(MeshType t) {
  switch (t) {
    case MeshType::Square: return "square";
    case MeshType::Triangle: return "triangle";
    case MeshType::Cube: return "cube";
    default: return "tetrahedron";
  }
}

std::optional<MeshType> mesh_from_name(std::string_view name) {
  if (name == "square") return MeshType::Square;
  if (name == "triangle") return MeshType::Triangle;
  if (name == "cube") return MeshType::Cube;
  if (name == "tetrahedron" || name == "tetra") return MeshType::Tetrahedron;
  return std::nullopt;
}

Cell canonical_cell(MeshType t) {
  switch (t) {
    case MeshType::Square:
      return {t, {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}};
    case MeshType::Triangle:
      return {t, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}};
    case MeshType::Cube:
      return {t,
              {{0, 0, 0},
               {1, 0, 0},
               {1, 1, 0},
               {0, 1, 0},
               {0, 0, 1},
               {1, 0, 1},
               {1, 1, 1},
               {0, 1, 1}}};
    default:
      return {t, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  }
}

double cell_measure(const Cell& cell) {
  check_vertex_count(cell);
  const auto& v = cell.vertices;
  switch (cell.type) {
    case MeshType::Square:
      return polygon_area(v);
    case MeshType::Triangle:
      return tri_area(v[0], v[1], v[2]);
    case MeshType::Cube: {
      double total = 0.0;
      for (const auto& t : kCubeTets)
        total += tet_volume(v[t[0]], v[t[1]], v[t[2]], v[t[3]]);
      return total;
    }
    default:
      return tet_volume(v[0], v[1], v[2], v[3]);
  }
}

Vec3 angles_to_normal(const Angles& a) {
  if (!a.phi) return {std::cos(a.theta), std::sin(a.theta), 0.0};
  const double st = std::sin(a.theta);
  return {st * std::cos(*a.phi), st * std::sin(*a.phi), std::cos(a.theta)};
}

Angles normal_to_angles(Vec3 n, int dim) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (dim == 2) {
    double theta = std::atan2(n.y, n.x);
    if (theta < 0.0) theta += two_pi;
    return {theta, std::nullopt};
  }
  const double theta = std::acos(std::clamp(n.z, -1.0, 1.0));
  if (std::abs(std::sin(theta)) < 1e-12) return {theta, two_pi};
  double phi = std::atan2(n.y, n.x);
  if (phi <= 0.0) phi += two_pi;
  return {theta, phi};
}

CBounds c_bounds(const Cell& cell, Vec3 n) {
  check_vertex_count(cell);
  double lo = dot(n, cell.vertices[0]), hi = lo;
  for (const Vec3& v : cell.vertices) {
    const double d = dot(n, v);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return {-hi, -lo};
}

double volume_fraction(const Cell& cell, Vec3 n, double c) {
  check_vertex_count(cell);
  const double measure = cell_measure(cell);
  if (measure <= 0.0) throw std::invalid_argument("degenerate cell with zero measure");
  const auto& v = cell.vertices;
  double clipped = 0.0;
  switch (cell.type) {
    case MeshType::Square:
    case MeshType::Triangle:
      clipped = polygon_area(clip_polygon(v, n, c));
      break;
    case MeshType::Cube:
      for (const auto& t : kCubeTets)
        clipped += clipped_tet_volume({v[t[0]], v[t[1]], v[t[2]], v[t[3]]}, n, c);
      break;
    default:
      clipped = clipped_tet_volume({v[0], v[1], v[2], v[3]}, n, c);
      break;
  }
  return std::clamp(clipped / measure, 0.0, 1.0);
}

std::vector<Vec3> interface_polygon(const Cell& cell, Vec3 n, double c) {
  check_vertex_count(cell);
  const auto& v = cell.vertices;
  const int dim = dimension(cell.type);

  std::vector<std::pair<int, int>> edges;
  if (cell.type == MeshType::Square) {
    edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  } else if (cell.type == MeshType::Triangle) {
    edges = {{0, 1}, {1, 2}, {2, 0}};
  } else if (cell.type == MeshType::Tetrahedron) {
    edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  } else {
    edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6},
             {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};
  }

  std::vector<Vec3> pts;
  auto push_unique = [&](Vec3 p) {
    for (const Vec3& q : pts)
      if (norm(p - q) < 1e-12) return;
    pts.push_back(p);
  };
  for (auto [a, b] : edges) {
    const double sa = dot(n, v[a]) + c;
    const double sb = dot(n, v[b]) + c;
    if (std::abs(sa) <= kOnPlane) push_unique(v[a]);
    if (std::abs(sb) <= kOnPlane) push_unique(v[b]);
    if ((sa > kOnPlane && sb < -kOnPlane) || (sa < -kOnPlane && sb > kOnPlane))
      push_unique(lerp(v[a], v[b], sa / (sa - sb)));
  }

  if (dim == 2) {
    if (pts.size() != 2) throw std::runtime_error("plane does not cut the cell interior");
    return pts;
  }
  if (pts.size() < 3) throw std::runtime_error("plane does not cut the cell interior");

  // order around the centroid within the cut plane
  Vec3 centroid{0, 0, 0};
  for (const Vec3& p : pts) centroid = centroid + p;
  centroid = (1.0 / static_cast<double>(pts.size())) * centroid;
  const Vec3 axis = normalized(n);
  Vec3 ref = pts[0] - centroid;
  ref = ref - dot(ref, axis) * axis;
  const Vec3 u = normalized(ref);
  const Vec3 w = cross(axis, u);
  std::sort(pts.begin(), pts.end(), [&](Vec3 a, Vec3 b) {
    const Vec3 da = a - centroid, db = b - centroid;
    return std::atan2(dot(da, w), dot(da, u)) < std::atan2(dot(db, w), dot(db, u));
  });
  return pts;
}

}  // namespace nplic

#include "nplic/exact_plic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nplic {

namespace {

constexpr double kAlphaSnap = 1e-15;   // alpha closer than this to 0/1 snaps to the bound
constexpr double kDegenerate = 1e-12;  // relative tolerance for simplex degeneracy

Vec3 mat_mul(const Mat3& m, Vec3 v) {
  return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
          m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
          m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

Vec3 mat_tmul(const Mat3& m, Vec3 v) {
  return {m[0][0] * v.x + m[1][0] * v.y + m[2][0] * v.z,
          m[0][1] * v.x + m[1][1] * v.y + m[2][1] * v.z,
          m[0][2] * v.x + m[1][2] * v.y + m[2][2] * v.z};
}

// All real roots of x^3 + a2 x^2 + a1 x + a0 = 0 (trigonometric/Cardano).
int cubic_roots(double a2, double a1, double a0, double out[3]) {
  const double p = a1 - a2 * a2 / 3.0;
  const double q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
  const double shift = -a2 / 3.0;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    out[0] = shift + std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s);
    return 1;
  }
  if (p >= 0.0) {  // p ~ 0: triple-ish root
    out[0] = shift + std::cbrt(-q);
    return 1;
  }
  const double m = 2.0 * std::sqrt(-p / 3.0);
  const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
  const double t = std::acos(arg) / 3.0;
  constexpr double tau = 2.0 * std::numbers::pi / 3.0;
  for (int k = 0; k < 3; ++k) out[k] = shift + m * std::cos(t - tau * k);
  return 3;
}

// Root of the monotone branch polynomial inside [lo, hi], Newton-polished.
double branch_cubic(double a2, double a1, double a0, double lo, double hi) {
  double roots[3];
  const int nr = cubic_roots(a2, a1, a0, roots);
  const double span = hi - lo;
  double best = 0.5 * (lo + hi);
  double best_miss = std::numeric_limits<double>::max();
  for (int k = 0; k < nr; ++k) {
    const double miss = std::max(lo - roots[k], roots[k] - hi);
    if (miss < best_miss) {
      best_miss = miss;
      best = roots[k];
    }
  }
  best = std::clamp(best, lo, hi);
  for (int it = 0; it < 2; ++it) {
    const double f = ((best + a2) * best + a1) * best + a0;
    const double df = (3.0 * best + 2.0 * a2) * best + a1;
    if (df != 0.0) best = std::clamp(best - f / df, lo - 1e-12 * span, hi + 1e-12 * span);
  }
  return best;
}

// d with area{m1 x + m2 y <= d} = alpha on the unit square, 0 <= m1 <= m2.
double rect_d_2d(double m1, double m2, double alpha) {
  if (m1 < 1e-12) return alpha * m2;
  const double a_tri = m1 / (2.0 * m2);
  if (alpha <= a_tri) return std::sqrt(2.0 * alpha * m1 * m2);
  if (alpha >= 1.0 - a_tri) return m1 + m2 - std::sqrt(2.0 * (1.0 - alpha) * m1 * m2);
  return alpha * m2 + 0.5 * m1;
}

// d with vol{m1 x + m2 y + m3 z <= d} = alpha on the unit cube, 0 <= m1 <= m2 <= m3.
double rect_d_3d(double m1, double m2, double m3, double alpha) {
  if (m1 < 1e-12) return rect_d_2d(m2, m3, alpha);
  const double sum = m1 + m2 + m3;
  if (alpha > 0.5) return sum - rect_d_3d(m1, m2, m3, 1.0 - alpha);

  const double m12 = m1 + m2;
  const double v1 = m1 * m1 / (6.0 * m2 * m3);
  const double v2 = (3.0 * m2 * m2 - 3.0 * m1 * m2 + m1 * m1) / (6.0 * m2 * m3);
  if (alpha <= v1) return std::cbrt(6.0 * alpha * m1 * m2 * m3);
  if (alpha <= v2) return (3.0 * m1 + std::sqrt(72.0 * alpha * m2 * m3 - 3.0 * m1 * m1)) / 6.0;

  const double dtop = std::min(m12, m3);
  // vol on [m2, min(m12,m3)]: (d^3 - (d-m1)^3 - (d-m2)^3) / (6 m1 m2 m3)
  const double v3 = (dtop * dtop * dtop - std::pow(dtop - m1, 3) - std::pow(dtop - m2, 3)) /
                    (6.0 * m1 * m2 * m3);
  if (alpha <= v3) {
    // d^3 - 3(m1+m2)d^2 + 3(m1^2+m2^2)d - (m1^3+m2^3) + 6 alpha m1 m2 m3 = 0
    return branch_cubic(-3.0 * m12, 3.0 * (m1 * m1 + m2 * m2),
                        6.0 * alpha * m1 * m2 * m3 - (m1 * m1 * m1 + m2 * m2 * m2), m2, dtop);
  }
  if (m12 <= m3) {
    // linear stretch: vol = (d - m12/2) / m3
    return alpha * m3 + 0.5 * m12;
  }
  // all three corners cut: -2d^3 + 3 sum d^2 - 3 (sum of mi^2) d + sum mi^3 = 6 alpha m1 m2 m3
  // normalized: d^3 - (3 sum / 2) d^2 + (3/2)(sum mi^2) d + (6 alpha m1 m2 m3 - sum mi^3)/2 = 0
  const double sq = m1 * m1 + m2 * m2 + m3 * m3;
  const double cu = m1 * m1 * m1 + m2 * m2 * m2 + m3 * m3 * m3;
  return branch_cubic(-1.5 * sum, 1.5 * sq, (6.0 * alpha * m1 * m2 * m3 - cu) / 2.0, m3,
                      0.5 * sum);
}

}  // namespace

double solve_c_exact(const Cell& cell, Vec3 n, double alpha0, double tol_alpha) {
  if (!(alpha0 >= 0.0 && alpha0 <= 1.0))
    throw std::invalid_argument("alpha0 must lie in [0,1]");
  const CBounds b = c_bounds(cell, n);
  if (alpha0 <= kAlphaSnap) return b.c_max;
  if (alpha0 >= 1.0 - kAlphaSnap) return b.c_min;

  // f(C) = alpha(C) - alpha0 decreases from 1-alpha0 at c_min to -alpha0 at c_max.
  double lo = b.c_min, hi = b.c_max;
  double flo = 1.0 - alpha0, fhi = -alpha0;
  const double width_floor = 1e-14 * (hi - lo);
  double c = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    // secant through the bracket, fall back to bisection when it stalls
    double cand = 0.5 * (lo + hi);
    if (flo != fhi) {
      const double sec = lo - flo * (hi - lo) / (fhi - flo);
      const double margin = 1e-3 * (hi - lo);
      if (sec > lo + margin && sec < hi - margin && (it % 3) != 2) cand = sec;
    }
    c = cand;
    const double f = volume_fraction(cell, n, c) - alpha0;
    if (std::abs(f) <= tol_alpha) return c;
    if (f > 0.0) {
      lo = c;
      flo = f;
    } else {
      hi = c;
      fhi = f;
    }
    if (hi - lo <= width_floor) break;
  }
  return c;
}

std::pair<NormalizationTransform, Cell> normalize_simplex(std::span<const Vec3> vertices) {
  const std::size_t nv = vertices.size();
  if (nv != 3 && nv != 4)
    throw std::invalid_argument("normalize_simplex expects 3 (2D) or 4 (3D) vertices");
  const bool three_d = nv == 4;

  NormalizationTransform t;
  t.dim = three_d ? 3 : 2;
  t.origin = vertices[0];
  t.rotation = {};
  t.q = {};
  t.rotation[2][2] = 1.0;  // identity in the unused row for the 2D case
  t.q[2][2] = 1.0;

  const Vec3 e12 = vertices[1] - t.origin;
  double edge_scale = norm(e12);
  for (std::size_t i = 2; i < nv; ++i)
    edge_scale = std::max(edge_scale, norm(vertices[i] - t.origin));
  if (norm(e12) < kDegenerate * std::max(edge_scale, 1.0))
    throw std::invalid_argument("degenerate simplex: coincident vertices");

  const Vec3 e1 = normalized(e12);
  Vec3 e2, e3;
  if (three_d) {
    const Vec3 v3 = vertices[2] - t.origin;
    Vec3 u = v3 - dot(e1, v3) * e1;
    if (norm(u) < kDegenerate * edge_scale)
      throw std::invalid_argument("degenerate simplex: collinear vertices");
    e2 = normalized(u);
    e3 = cross(e1, e2);
    const Vec3 v4 = vertices[3] - t.origin;
    if (std::abs(dot(e3, v4)) < kDegenerate * edge_scale)
      throw std::invalid_argument("degenerate simplex: coplanar vertices");
    if (dot(e3, v4) < 0.0) e3 = -e3;  // reflect so z4 > 0
  } else {
    e2 = {-e1.y, e1.x, 0.0};
    const Vec3 v3 = vertices[2] - t.origin;
    if (std::abs(dot(e2, v3)) < kDegenerate * edge_scale)
      throw std::invalid_argument("degenerate simplex: collinear vertices");
    if (dot(e2, v3) < 0.0) e2 = -e2;  // reflect so y3 > 0
    e3 = {0.0, 0.0, 1.0};
  }
  t.rotation = {{{e1.x, e1.y, e1.z}, {e2.x, e2.y, e2.z}, {e3.x, e3.y, e3.z}}};

  for (std::size_t j = 1; j < nv; ++j) {
    const Vec3 a = mat_mul(t.rotation, vertices[j] - t.origin);
    t.q[0][j - 1] = a.x;
    t.q[1][j - 1] = a.y;
    t.q[2][j - 1] = a.z;
  }
  t.det_q = t.q[0][0] * t.q[1][1] * t.q[2][2];

  return {t, canonical_cell(three_d ? MeshType::Tetrahedron : MeshType::Triangle)};
}

TransformedPlane transform_plane(const NormalizationTransform& t, Vec3 n, double c) {
  const Vec3 aligned = mat_mul(t.rotation, n);
  Vec3 w = mat_tmul(t.q, aligned);
  if (t.dim == 2) w.z = 0.0;
  const double scale = norm(w);
  const double c_shift = dot(n, t.origin);
  return {{w.x / scale, w.y / scale, w.z / scale}, (c + c_shift) / scale, scale, c_shift};
}

Vec3 apply_to_direction(const NormalizationTransform& t, Vec3 delta_dir) {
  return mat_tmul(t.rotation, mat_mul(t.q, delta_dir));
}

double solve_c_general(std::span<const Vec3> vertices, Vec3 n, double alpha0) {
  return solve_c_general(vertices, n, alpha0,
                         [](MeshType mesh, Vec3 nd, double a) {
                           return solve_c_exact(canonical_cell(mesh), nd, a);
                         });
}

double solve_c_general(std::span<const Vec3> vertices, Vec3 n, double alpha0,
                       const CanonicalSolver& solver) {
  auto [t, cell] = normalize_simplex(vertices);
  const TransformedPlane tp = transform_plane(t, n, 0.0);
  const double c_delta = solver(cell.type, tp.n_delta, alpha0);
  return c_delta * tp.scale - tp.c_shift;
}

double solve_c_rect_analytic(MeshType mesh, Vec3 n, double alpha0) {
  if (mesh != MeshType::Square && mesh != MeshType::Cube)
    throw std::invalid_argument("analytic fast path covers canonical square/cube only");
  if (!(alpha0 >= 0.0 && alpha0 <= 1.0))
    throw std::invalid_argument("alpha0 must lie in [0,1]");

  // Reflect negative components onto [0,1]^dim; d is solved with the sorted
  // magnitudes and mapped back through C = sum of reflected weights - d.
  double m[3] = {std::abs(n.x), std::abs(n.y), std::abs(n.z)};
  double neg = std::min(n.x, 0.0) + std::min(n.y, 0.0) + std::min(n.z, 0.0);
  double d;
  if (mesh == MeshType::Square) {
    if (m[0] > m[1]) std::swap(m[0], m[1]);
    d = rect_d_2d(m[0], m[1], alpha0);
  } else {
    std::sort(m, m + 3);
    d = rect_d_3d(m[0], m[1], m[2], alpha0);
  }
  return -neg - d;
}

}  // namespace nplic

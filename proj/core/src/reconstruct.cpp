#include "nplic/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "nplic/exact_plic.hpp"
#include "nplic/parallel.hpp"
#include "nplic/text_io.hpp"

namespace nplic {

namespace {

constexpr int kSubdivDepth = 12;  // effective 4096^2 samples per cell

// Area of {disk} intersect [x0,x1]x[y0,y1] by quadtree subdivision; boxes
// fully inside/outside resolve exactly via nearest/farthest point tests.
double disk_box_area(double cx, double cy, double r, double x0, double y0, double x1, double y1,
                     int depth) {
  const double nx = std::clamp(cx, x0, x1) - cx;
  const double ny = std::clamp(cy, y0, y1) - cy;
  if (nx * nx + ny * ny >= r * r) return 0.0;
  const double fx = std::max(cx - x0, x1 - cx);
  const double fy = std::max(cy - y0, y1 - cy);
  const double area = (x1 - x0) * (y1 - y0);
  if (fx * fx + fy * fy <= r * r) return area;
  if (depth == 0) {
    const double mx = 0.5 * (x0 + x1) - cx, my = 0.5 * (y0 + y1) - cy;
    return (mx * mx + my * my <= r * r) ? area : 0.0;
  }
  const double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
  return disk_box_area(cx, cy, r, x0, y0, xm, ym, depth - 1) +
         disk_box_area(cx, cy, r, xm, y0, x1, ym, depth - 1) +
         disk_box_area(cx, cy, r, x0, ym, xm, y1, depth - 1) +
         disk_box_area(cx, cy, r, xm, ym, x1, y1, depth - 1);
}

bool is_interface(double a) { return a > 0.0 && a < 1.0; }

}  // namespace

VofGrid make_circle_field(Vec3 center, double radius, int n, double h) {
  if (n < 2) throw std::invalid_argument("grid needs n >= 2");
  VofGrid grid{n, n, h, std::vector<double>(static_cast<std::size_t>(n) * n, 1.0)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double gas = disk_box_area(center.x, center.y, radius, i * h, j * h, (i + 1) * h,
                                       (j + 1) * h, kSubdivDepth);
      grid.at(i, j) = 1.0 - gas / (h * h);
    }
  }
  return grid;
}

std::vector<CellNormal> estimate_normals(const VofGrid& grid) {
  const int nx = grid.nx, ny = grid.ny;
  const double h = grid.h;
  auto grad = [&](int i, int j) -> Vec3 {
    double gx, gy;
    if (i > 0 && i < nx - 1 && j > 0 && j < ny - 1) {
      // Youngs corner-weighted 1-2-1 columns
      gx = (grid.at(i + 1, j - 1) + 2.0 * grid.at(i + 1, j) + grid.at(i + 1, j + 1) -
            grid.at(i - 1, j - 1) - 2.0 * grid.at(i - 1, j) - grid.at(i - 1, j + 1)) /
           (8.0 * h);
      gy = (grid.at(i - 1, j + 1) + 2.0 * grid.at(i, j + 1) + grid.at(i + 1, j + 1) -
            grid.at(i - 1, j - 1) - 2.0 * grid.at(i, j - 1) - grid.at(i + 1, j - 1)) /
           (8.0 * h);
    } else {
      // border cells: central where possible, one-sided otherwise
      const int il = std::max(i - 1, 0), ih = std::min(i + 1, nx - 1);
      const int jl = std::max(j - 1, 0), jh = std::min(j + 1, ny - 1);
      gx = (grid.at(ih, j) - grid.at(il, j)) / ((ih - il) * h);
      gy = (grid.at(i, jh) - grid.at(i, jl)) / ((jh - jl) * h);
    }
    return {gx, gy, 0.0};
  };

  std::vector<CellNormal> out;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      if (!is_interface(grid.at(i, j))) continue;
      const Vec3 g = grad(i, j);
      const double len = norm(g);
      if (len < 1e-12) continue;  // flagged: no usable orientation
      out.push_back({i, j, {-g.x / len, -g.y / len, 0.0}});
    }
  }
  return out;
}

std::vector<CellInterface> reconstruct_field(const VofGrid& grid, SolverKind solver,
                                             const MlpModel* model, int threads) {
  if (solver == SolverKind::Nplic) {
    if (!model) throw std::invalid_argument("surrogate reconstruction needs a model");
    if (!covers(model->config, MeshType::Square))
      throw std::invalid_argument("model does not cover square cells");
  }
  const Cell unit = canonical_cell(MeshType::Square);
  const std::vector<CellNormal> normals = estimate_normals(grid);

  std::vector<CellInterface> out(normals.size());
  parallel_for(normals.size(), threads, [&](std::size_t k) {
    const CellNormal& cn = normals[k];
    const double a = grid.at(cn.i, cn.j);
    double c;
    if (solver == SolverKind::Exact) {
      c = solve_c_exact(unit, cn.n, a);
    } else {
      c = nplic_solve(*model, MeshType::Square, cn.n, a);
      // keep a slightly-off prediction inside the geometric bracket
      const CBounds b = c_bounds(unit, cn.n);
      const double margin = 1e-9 * (b.c_max - b.c_min);
      c = std::clamp(c, b.c_min + margin, b.c_max - margin);
    }
    const std::vector<Vec3> seg = interface_polygon(unit, cn.n, c);
    CellInterface ci;
    ci.i = cn.i;
    ci.j = cn.j;
    ci.normal = cn.n;
    ci.c = c;
    ci.p0 = {(cn.i + seg[0].x) * grid.h, (cn.j + seg[0].y) * grid.h, 0.0};
    ci.p1 = {(cn.i + seg[1].x) * grid.h, (cn.j + seg[1].y) * grid.h, 0.0};
    out[k] = ci;
  });
  return out;
}

void emit_segments_csv(std::span<const LabeledSegments> sets, std::ostream& out) {
  out << "nplic-segments v1\n";
  out << "i,j,x0,y0,x1,y1,solver\n";
  for (const LabeledSegments& set : sets) {
    for (const CellInterface& c : set.cells) {
      out << c.i << ',' << c.j << ',' << format_double(c.p0.x) << ',' << format_double(c.p0.y)
          << ',' << format_double(c.p1.x) << ',' << format_double(c.p1.y) << ',' << set.solver
          << '\n';
    }
  }
}

void emit_segments_csv(std::span<const LabeledSegments> sets, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  emit_segments_csv(sets, f);
  if (!f.good()) throw std::runtime_error("write failed for " + path);
}

std::vector<LabeledSegments> read_segments_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("segments line 1: empty file");
  if (line.ends_with('\r')) line.pop_back();
  if (line != "nplic-segments v1")
    throw std::runtime_error("segments line 1: bad header '" + line + "'");
  if (!std::getline(in, line)) throw std::runtime_error("segments line 2: missing columns");

  std::vector<LabeledSegments> sets;
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.ends_with('\r')) line.pop_back();
    if (line.empty()) continue;
    const std::string context = "segments line " + std::to_string(line_no);
    const auto f = split_on(line, ',');
    if (f.size() != 7) throw std::runtime_error(context + ": expected 7 fields");
    CellInterface c;
    c.i = static_cast<int>(parse_long(f[0], context));
    c.j = static_cast<int>(parse_long(f[1], context));
    c.p0 = {parse_double(f[2], context), parse_double(f[3], context), 0.0};
    c.p1 = {parse_double(f[4], context), parse_double(f[5], context), 0.0};
    const std::string solver(f[6]);
    auto it = std::find_if(sets.begin(), sets.end(),
                           [&](const LabeledSegments& s) { return s.solver == solver; });
    if (it == sets.end()) {
      sets.push_back({solver, {}});
      it = sets.end() - 1;
    }
    it->cells.push_back(c);
  }
  return sets;
}

void emit_segments_svg(const VofGrid& grid, std::span<const LabeledSegments> sets,
                       std::ostream& out) {
  const int nx = grid.nx, ny = grid.ny;
  // 1 user unit per cell; svg y runs downward, so flip
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << nx << ' ' << ny
      << "\" width=\"" << nx * 64 << "\" height=\"" << ny * 64 << "\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << nx << "\" height=\"" << ny
      << "\" fill=\"white\"/>\n";
  out << "  <g stroke=\"#cccccc\" stroke-width=\"0.02\">\n";
  for (int i = 0; i <= nx; ++i)
    out << "    <line x1=\"" << i << "\" y1=\"0\" x2=\"" << i << "\" y2=\"" << ny << "\"/>\n";
  for (int j = 0; j <= ny; ++j)
    out << "    <line x1=\"0\" y1=\"" << j << "\" x2=\"" << nx << "\" y2=\"" << j << "\"/>\n";
  out << "  </g>\n";
  const char* styles[] = {"stroke=\"#000000\" stroke-width=\"0.05\"",
                          "stroke=\"#d62728\" stroke-width=\"0.05\" stroke-dasharray=\"0.12 0.08\""};
  std::size_t style_idx = 0;
  for (const LabeledSegments& set : sets) {
    out << "  <g " << styles[std::min<std::size_t>(style_idx++, 1)] << " fill=\"none\">\n";
    for (const CellInterface& c : set.cells) {
      out << "    <line x1=\"" << format_double(c.p0.x / grid.h) << "\" y1=\""
          << format_double(ny - c.p0.y / grid.h) << "\" x2=\"" << format_double(c.p1.x / grid.h)
          << "\" y2=\"" << format_double(ny - c.p1.y / grid.h) << "\"/>\n";
    }
    out << "  </g>\n";
  }
  out << "</svg>\n";
}

void emit_segments_svg(const VofGrid& grid, std::span<const LabeledSegments> sets,
                       const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  emit_segments_svg(grid, sets, f);
  if (!f.good()) throw std::runtime_error("write failed for " + path);
}

}  // namespace nplic

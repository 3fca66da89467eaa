#pragma once

// Test-field initialization and verification metrics.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "sasremap/cell_field.hpp"
#include "sasremap/error.hpp"
#include "sasremap/geometry.hpp"
#include "sasremap/mesh.hpp"
#include "sasremap/parallel.hpp"
#include "sasremap/summation.hpp"

namespace sasremap {

enum class FieldKind { sine, shock, affine, constant };

inline const char* to_string(FieldKind k) {
  switch (k) {
    case FieldKind::sine: return "sine";
    case FieldKind::shock: return "shock";
    case FieldKind::affine: return "affine";
    case FieldKind::constant: return "constant";
  }
  return "?";
}

/// sine:     1 + sin(2 pi x) sin(2 pi y)
/// shock:    1 where y <= (x - 0.4) / 0.3, else 0
/// affine:   a + b x + c y
/// constant: k
struct FieldSpec {
  FieldKind kind = FieldKind::sine;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double k = 1.0;

  double operator()(Vec2 r) const {
    switch (kind) {
      case FieldKind::sine:
        return 1.0 + std::sin(2.0 * std::numbers::pi * r.x) * std::sin(2.0 * std::numbers::pi * r.y);
      case FieldKind::shock: return r.y <= (r.x - 0.4) / 0.3 ? 1.0 : 0.0;
      case FieldKind::affine: return a + b * r.x + c * r.y;
      case FieldKind::constant: return k;
    }
    return 0.0;
  }
};

namespace detail {

// Degree-5 seven-point rule on a triangle: barycentric points and weights
// summing to one.
struct TrianglePoint {
  double l0, l1, l2, w;
};

inline const std::array<TrianglePoint, 7>& triangle_rule() {
  static const std::array<TrianglePoint, 7> rule = [] {
    const double s = std::sqrt(15.0);
    const double a1 = (6.0 - s) / 21.0, b1 = (9.0 + 2.0 * s) / 21.0, w1 = (155.0 - s) / 1200.0;
    const double a2 = (6.0 + s) / 21.0, b2 = (9.0 - 2.0 * s) / 21.0, w2 = (155.0 + s) / 1200.0;
    return std::array<TrianglePoint, 7>{{{1.0 / 3, 1.0 / 3, 1.0 / 3, 9.0 / 40},
                                         {a1, a1, b1, w1},
                                         {a1, b1, a1, w1},
                                         {b1, a1, a1, w1},
                                         {a2, a2, b2, w2},
                                         {a2, b2, a2, w2},
                                         {b2, a2, a2, w2}}};
  }();
  return rule;
}

template <class F>
double integrate_triangle(Vec2 p0, Vec2 p1, Vec2 p2, const F& f) {
  const double area = 0.5 * cross(p1 - p0, p2 - p0);
  double sum = 0.0;
  for (const auto& q : triangle_rule()) sum += q.w * f(q.l0 * p0 + q.l1 * p1 + q.l2 * p2);
  return area * sum;
}

}  // namespace detail

/// Cell means of a test field. Smooth fields use the seven-point rule on
/// the two triangles of each quad; the shock mean is the exact area
/// fraction of the cell on the f = 1 side of the line.
inline CellField init_means(const Mesh& mesh, const FieldSpec& spec, int threads = 1) {
  CellField out(mesh);
  parallel_for(mesh.cell_count(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const CellId c = mesh.cell(k);
      const Polygon poly = cell_polygon(mesh, c);
      const double area = polygon_area(poly);
      if (spec.kind == FieldKind::constant) {
        out[k] = spec.k;
      } else if (spec.kind == FieldKind::shock) {
        // y <= (x - 0.4) / 0.3  <=>  x - 0.3 y - 0.4 >= 0
        out[k] = polygon_area(clip_half_plane(poly, 1.0, -0.3, -0.4)) / area;
      } else {
        const auto q = mesh.corners(c);
        const double total =
            detail::integrate_triangle(q[0], q[1], q[2], spec) + detail::integrate_triangle(q[0], q[2], q[3], spec);
        out[k] = total / area;
      }
    }
  });
  return out;
}

struct Norms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

/// Volume-weighted L1 and L2 norms and the max norm of field - reference.
inline Norms norms(const CellField& field, const CellField& reference, const Mesh& mesh) {
  check_aligned(field, mesh, "norms");
  check_aligned(reference, mesh, "norms");
  CompensatedSum l1;
  CompensatedSum l2;
  Norms n;
  for (std::size_t k = 0; k < mesh.cell_count(); ++k) {
    const double v = polygon_area(cell_polygon(mesh, mesh.cell(k)));
    const double d = std::abs(field[k] - reference[k]);
    l1.add(v * d);
    l2.add(v * d * d);
    n.linf = std::max(n.linf, d);
  }
  n.l1 = l1.value();
  n.l2 = std::sqrt(l2.value());
  return n;
}

/// Mean number of cells per logical row with lo < f < hi, over the rows
/// the transition crosses (row minimum below and row maximum above the
/// midpoint of lo and hi).
inline double interface_width(const CellField& field, const Mesh& mesh, double lo = 0.05, double hi = 0.95) {
  check_aligned(field, mesh, "interface_width");
  const double mid = 0.5 * (lo + hi);
  long long counted = 0;
  int rows = 0;
  for (int j = 0; j < mesh.cells_y(); ++j) {
    double row_min = HUGE_VAL;
    double row_max = -HUGE_VAL;
    int inside = 0;
    for (int i = 0; i < mesh.cells_x(); ++i) {
      const double v = field[mesh.index({i, j})];
      row_min = std::min(row_min, v);
      row_max = std::max(row_max, v);
      if (v > lo && v < hi) ++inside;
    }
    if (row_min < mid && row_max > mid) {
      ++rows;
      counted += inside;
    }
  }
  if (rows == 0) throw Error("interface_width: no row crosses the transition");
  return static_cast<double>(counted) / rows;
}

inline double total_mass(const CellField& field, const Mesh& mesh) {
  check_aligned(field, mesh, "total_mass");
  CompensatedSum s;
  for (std::size_t k = 0; k < mesh.cell_count(); ++k) s.add(field[k] * polygon_area(cell_polygon(mesh, mesh.cell(k))));
  return s.value();
}

struct RemapReport {
  double mass_initial = 0.0;
  double mass_final = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double field_min = 0.0;
  double field_max = 0.0;
  double bound_min = 0.0;  // extrema of the initial field
  double bound_max = 0.0;
  double overshoot = 0.0;
  std::optional<double> interface_width;

  double relative_mass_error() const {
    return std::abs(mass_final - mass_initial) / std::max(std::abs(mass_initial), 1e-300);
  }
};

/// Summary of a run. Errors are measured against `reference` on the final
/// mesh; overshoot is measured against the extrema of the initial field.
inline RemapReport make_report(const Mesh& initial_mesh, const CellField& initial, const Mesh& final_mesh,
                               const CellField& final_field, const CellField& reference, FieldKind kind,
                               double lo = 0.05, double hi = 0.95) {
  RemapReport r;
  r.mass_initial = total_mass(initial, initial_mesh);
  r.mass_final = total_mass(final_field, final_mesh);
  const Norms n = norms(final_field, reference, final_mesh);
  r.l1 = n.l1;
  r.l2 = n.l2;
  r.linf = n.linf;
  const auto [fmin, fmax] = std::minmax_element(final_field.values.begin(), final_field.values.end());
  r.field_min = *fmin;
  r.field_max = *fmax;
  const auto [bmin, bmax] = std::minmax_element(initial.values.begin(), initial.values.end());
  r.bound_min = *bmin;
  r.bound_max = *bmax;
  r.overshoot = std::max(0.0, r.field_max - r.bound_max) + std::max(0.0, r.bound_min - r.field_min);
  if (kind == FieldKind::shock) r.interface_width = interface_width(final_field, final_mesh, lo, hi);
  return r;
}

}  // namespace sasremap

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sasremap/error.hpp"
#include "sasremap/geometry.hpp"

namespace sasremap {

/// Zero-based logical cell index. Cell (i, j) has corner nodes
/// (i, j), (i+1, j), (i+1, j+1), (i, j+1).
struct CellId {
  int i = 0;
  int j = 0;
  friend constexpr bool operator==(CellId, CellId) = default;
};

/// Logically structured quadrilateral mesh: an nx-by-ny grid of nodes with
/// implicit quad connectivity. Immutable once built.
class Mesh {
 public:
  Mesh() = default;

  Mesh(int nx, int ny, std::vector<Vec2> coords) : nx_(nx), ny_(ny), coords_(std::move(coords)) {
    if (nx < 2 || ny < 2) throw MeshError("Mesh: need at least 2x2 nodes");
    if (coords_.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
      throw MeshError("Mesh: coordinate count does not match node dimensions");
    }
  }

  /// Uniform mesh of the unit square.
  static Mesh uniform(int nx, int ny) {
    std::vector<Vec2> coords(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        coords[static_cast<std::size_t>(j) * nx + i] = {static_cast<double>(i) / (nx - 1),
                                                        static_cast<double>(j) / (ny - 1)};
      }
    }
    return Mesh(nx, ny, std::move(coords));
  }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int cells_x() const { return nx_ - 1; }
  int cells_y() const { return ny_ - 1; }
  std::size_t cell_count() const {
    return static_cast<std::size_t>(nx_ - 1) * static_cast<std::size_t>(ny_ - 1);
  }

  const Vec2& node(int i, int j) const { return coords_[static_cast<std::size_t>(j) * nx_ + i]; }
  const std::vector<Vec2>& coords() const { return coords_; }

  bool contains(CellId c) const { return c.i >= 0 && c.j >= 0 && c.i < nx_ - 1 && c.j < ny_ - 1; }
  std::size_t index(CellId c) const {
    return static_cast<std::size_t>(c.j) * (nx_ - 1) + static_cast<std::size_t>(c.i);
  }
  CellId cell(std::size_t index) const {
    return {static_cast<int>(index % (nx_ - 1)), static_cast<int>(index / (nx_ - 1))};
  }

  std::array<Vec2, 4> corners(CellId c) const {
    return {node(c.i, c.j), node(c.i + 1, c.j), node(c.i + 1, c.j + 1), node(c.i, c.j + 1)};
  }

  bool same_shape(const Mesh& other) const { return nx_ == other.nx_ && ny_ == other.ny_; }

 private:
  int nx_ = 0;
  int ny_ = 0;
  std::vector<Vec2> coords_;
};

inline void check_cell(const Mesh& mesh, CellId c) {
  if (!mesh.contains(c)) {
    throw MeshError("cell (" + std::to_string(c.i) + "," + std::to_string(c.j) + ") out of range");
  }
}

/// Counter-clockwise corner polygon of a cell.
inline Polygon cell_polygon(const Mesh& mesh, CellId c) {
  check_cell(mesh, c);
  const auto q = mesh.corners(c);
  return Polygon{q[0], q[1], q[2], q[3]};
}

struct VolumeCentroid {
  double volume = 0.0;
  Vec2 centroid;
};

inline VolumeCentroid cell_volume_centroid(const Mesh& mesh, CellId c) {
  const Polygon p = cell_polygon(mesh, c);
  const double v = polygon_area(p);
  if (!(v > 0.0)) {
    throw MeshError("cell (" + std::to_string(c.i) + "," + std::to_string(c.j) + ") has non-positive area");
  }
  return {v, polygon_centroid(p)};
}

/// Up to eight cells sharing at least one node with a given cell, listed
/// in row-major order of the offset (dj outer, di inner).
struct Neighborhood {
  std::array<CellId, 8> cells{};
  int count = 0;

  const CellId* begin() const { return cells.data(); }
  const CellId* end() const { return cells.data() + count; }
  std::size_t size() const { return static_cast<std::size_t>(count); }
};

inline Neighborhood node_neighborhood(const Mesh& mesh, CellId c) {
  check_cell(mesh, c);
  Neighborhood n;
  for (int dj = -1; dj <= 1; ++dj) {
    for (int di = -1; di <= 1; ++di) {
      if (di == 0 && dj == 0) continue;
      const CellId o{c.i + di, c.j + dj};
      if (mesh.contains(o)) n.cells[n.count++] = o;
    }
  }
  return n;
}

enum class Side { south = 0, east = 1, north = 2, west = 3 };

struct EdgeRecord {
  Side side = Side::south;
  Vec2 a;
  Vec2 b;
  bool boundary = false;
  CellId neighbor;  // meaningful only when !boundary
  double length = 0.0;
};

/// Edges of a cell in the order south, east, north, west, each traversed
/// counter-clockwise.
inline std::array<EdgeRecord, 4> edge_neighbors(const Mesh& mesh, CellId c) {
  check_cell(mesh, c);
  const auto q = mesh.corners(c);
  constexpr std::array<std::array<int, 2>, 4> offsets{{{0, -1}, {1, 0}, {0, 1}, {-1, 0}}};
  std::array<EdgeRecord, 4> out;
  for (int k = 0; k < 4; ++k) {
    EdgeRecord& e = out[k];
    e.side = static_cast<Side>(k);
    e.a = q[k];
    e.b = q[(k + 1) % 4];
    e.length = norm(e.b - e.a);
    e.neighbor = {c.i + offsets[k][0], c.j + offsets[k][1]};
    e.boundary = !mesh.contains(e.neighbor);
  }
  return out;
}

struct MeshDiagnostics {
  bool ok = true;
  double min_area = std::numeric_limits<double>::infinity();
  double min_turn = std::numeric_limits<double>::infinity();  // smallest corner cross product
  std::vector<CellId> bad_cells;
};

/// Checks that every cell has positive area and is convex up to
/// 1e-14 * (longest edge)^2 per corner turn.
inline MeshDiagnostics validate(const Mesh& mesh) {
  MeshDiagnostics d;
  for (int j = 0; j < mesh.cells_y(); ++j) {
    for (int i = 0; i < mesh.cells_x(); ++i) {
      const CellId c{i, j};
      const auto q = mesh.corners(c);
      const Polygon p{q[0], q[1], q[2], q[3]};
      const double area = polygon_area(p);
      double longest = 0.0;
      double turn = HUGE_VAL;
      for (int k = 0; k < 4; ++k) {
        longest = std::max(longest, norm(q[(k + 1) % 4] - q[k]));
        turn = std::min(turn, cross(q[(k + 1) % 4] - q[k], q[(k + 2) % 4] - q[(k + 1) % 4]));
      }
      d.min_area = std::min(d.min_area, area);
      d.min_turn = std::min(d.min_turn, turn);
      const double tol = 1e-14 * longest * longest;
      if (!(area > 0.0) || turn < -tol) {
        d.ok = false;
        d.bad_cells.push_back(c);
      }
    }
  }
  return d;
}

/// Per-cell volumes and centroids, computed once per mesh.
struct MeshGeometry {
  std::vector<double> volume;
  std::vector<Vec2> centroid;
};

inline MeshGeometry compute_geometry(const Mesh& mesh) {
  MeshGeometry g;
  g.volume.resize(mesh.cell_count());
  g.centroid.resize(mesh.cell_count());
  for (std::size_t k = 0; k < mesh.cell_count(); ++k) {
    const auto vc = cell_volume_centroid(mesh, mesh.cell(k));
    g.volume[k] = vc.volume;
    g.centroid[k] = vc.centroid;
  }
  return g;
}

}  // namespace sasremap

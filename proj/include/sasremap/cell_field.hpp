#pragma once

#include <cmath>
#include <vector>

#include "sasremap/error.hpp"
#include "sasremap/mesh.hpp"

namespace sasremap {

/// Cell means aligned to a mesh's cells (row-major, i fastest).
struct CellField {
  int cells_x = 0;
  int cells_y = 0;
  std::vector<double> values;

  CellField() = default;
  CellField(int cx, int cy, std::vector<double> v) : cells_x(cx), cells_y(cy), values(std::move(v)) {}
  explicit CellField(const Mesh& mesh, double fill = 0.0)
      : cells_x(mesh.cells_x()), cells_y(mesh.cells_y()), values(mesh.cell_count(), fill) {}

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t k) const { return values[k]; }
  double& operator[](std::size_t k) { return values[k]; }

  bool matches(const Mesh& mesh) const {
    return cells_x == mesh.cells_x() && cells_y == mesh.cells_y() && values.size() == mesh.cell_count();
  }
};

inline void check_aligned(const CellField& f, const Mesh& mesh, const char* who) {
  if (!f.matches(mesh)) throw MeshError(std::string(who) + ": field does not match mesh dimensions");
}

}  // namespace sasremap

#pragma once

// Conservative overlay-intersection remap between two meshes of identical
// logical structure whose nodes have moved by less than a cell.
//
// The new mean of cell c is
//
//   f~_c V~_c = f_c V_c + sum_{c' in N(c)} F(c, c')
//   F(c, c')  = int_{c~ cap c'} f_{c'} dV - int_{c~' cap c} f_c dV
//
// with N(c) the node neighborhood and f_{c'} the limited linear
// reconstruction of old cell c'. F is evaluated once per unordered pair
// and added to one cell and subtracted from the other, so the total
// content is preserved independently of clipping accuracy.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "sasremap/cell_field.hpp"
#include "sasremap/error.hpp"
#include "sasremap/geometry.hpp"
#include "sasremap/mesh.hpp"
#include "sasremap/parallel.hpp"
#include "sasremap/reconstruct.hpp"
#include "sasremap/summation.hpp"

namespace sasremap {

/// Relative coverage mismatch above which a remap step is rejected.
inline constexpr double kCoverageTolerance = 1e-10;

struct CellPair {
  std::size_t first;
  std::size_t second;
};

/// All unordered pairs of node-adjacent cells, ordered by first cell index
/// and then by neighbor offset.
inline std::vector<CellPair> neighbor_pairs(const Mesh& mesh) {
  std::vector<CellPair> pairs;
  pairs.reserve(4 * mesh.cell_count());
  constexpr int offsets[4][2] = {{1, 0}, {-1, 1}, {0, 1}, {1, 1}};
  for (std::size_t k = 0; k < mesh.cell_count(); ++k) {
    const CellId c = mesh.cell(k);
    for (const auto& o : offsets) {
      const CellId n{c.i + o[0], c.j + o[1]};
      if (mesh.contains(n)) pairs.push_back({k, mesh.index(n)});
    }
  }
  return pairs;
}

struct Exchange {
  double flux = 0.0;        // F(c, c')
  double area_into = 0.0;   // |c~ cap c'|
  double area_out = 0.0;    // |c~' cap c|
};

inline Exchange exchange_integral(const Mesh& old_mesh, const Mesh& new_mesh, const Reconstruction& recon,
                                  CellId c, CellId cp) {
  const ReconstructionEntry& rc = recon[old_mesh.index(c)];
  const ReconstructionEntry& rp = recon[old_mesh.index(cp)];
  const Polygon into = clip_convex(cell_polygon(new_mesh, c), cell_polygon(old_mesh, cp));
  const Polygon out = clip_convex(cell_polygon(new_mesh, cp), cell_polygon(old_mesh, c));
  Exchange x;
  x.area_into = polygon_area(into);
  x.area_out = polygon_area(out);
  x.flux = integrate_affine(into, rp.mean, rp.gradient, rp.centroid) -
           integrate_affine(out, rc.mean, rc.gradient, rc.centroid);
  return x;
}

struct RemapResult {
  CellField field;
  double mass_old = 0.0;
  double mass_new = 0.0;
  double max_coverage_defect = 0.0;
};

inline RemapResult remap_field(const Mesh& old_mesh, const MeshGeometry& old_geom, const Mesh& new_mesh,
                               const MeshGeometry& new_geom, const Reconstruction& recon, int threads = 1) {
  if (!old_mesh.same_shape(new_mesh)) throw MeshError("remap_field: meshes differ in logical shape");
  if (recon.size() != old_mesh.cell_count()) throw MeshError("remap_field: reconstruction size mismatch");

  const std::size_t n = old_mesh.cell_count();
  const auto pairs = neighbor_pairs(old_mesh);
  std::vector<Exchange> exchange(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      exchange[k] = exchange_integral(old_mesh, new_mesh, recon, old_mesh.cell(pairs[k].first),
                                      old_mesh.cell(pairs[k].second));
    }
  });
  std::vector<double> self_overlap(n);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const CellId c = old_mesh.cell(k);
      self_overlap[k] = polygon_area(clip_convex(cell_polygon(new_mesh, c), cell_polygon(old_mesh, c)));
    }
  });

  std::vector<double> content(n);
  std::vector<double> covered = self_overlap;
  for (std::size_t k = 0; k < n; ++k) content[k] = recon[k].mean * old_geom.volume[k];
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [a, b] = pairs[k];
    content[a] += exchange[k].flux;
    content[b] -= exchange[k].flux;
    covered[a] += exchange[k].area_into;
    covered[b] += exchange[k].area_out;
  }

  RemapResult result;
  result.field = CellField(new_mesh);
  for (std::size_t k = 0; k < n; ++k) {
    const double defect = std::abs(new_geom.volume[k] - covered[k]) / new_geom.volume[k];
    result.max_coverage_defect = std::max(result.max_coverage_defect, defect);
    if (!(defect <= kCoverageTolerance)) {
      const CellId c = new_mesh.cell(k);
      throw LocalityError("locality violated at cell (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                              "): coverage defect " + std::to_string(defect),
                          c.i, c.j, defect);
    }
    result.field[k] = content[k] / new_geom.volume[k];
  }

  std::vector<double> old_means(n);
  for (std::size_t k = 0; k < n; ++k) old_means[k] = recon[k].mean;
  result.mass_old = weighted_total(old_means, old_geom.volume);
  result.mass_new = weighted_total(result.field.values, new_geom.volume);
  return result;
}

inline RemapResult remap_field(const Mesh& old_mesh, const Mesh& new_mesh, const Reconstruction& recon,
                               int threads = 1) {
  return remap_field(old_mesh, compute_geometry(old_mesh), new_mesh, compute_geometry(new_mesh), recon, threads);
}

struct StepReport {
  int step = 0;
  double mass_before = 0.0;
  double mass_after = 0.0;
  double field_min = 0.0;
  double field_max = 0.0;
  double max_coverage_defect = 0.0;
  int rank_deficient_cells = 0;
};

struct CycleResult {
  CellField field;
  std::vector<StepReport> steps;
};

/// Called after each step with the step number (1-based), the new mesh and
/// the remapped field.
using StepObserver = std::function<void(int, const Mesh&, const CellField&)>;

/// Reconstruct, limit and remap across each consecutive pair of meshes.
inline CycleResult remap_cycle(const std::vector<Mesh>& meshes, const CellField& initial,
                               const LimiterConfig& config, int threads = 1, const StepObserver& observer = {}) {
  if (meshes.empty()) throw MeshError("remap_cycle: empty mesh sequence");
  check_aligned(initial, meshes.front(), "remap_cycle");
  config.check();

  CycleResult out;
  out.field = initial;
  MeshGeometry old_geom = compute_geometry(meshes.front());
  for (std::size_t s = 1; s < meshes.size(); ++s) {
    const Mesh& old_mesh = meshes[s - 1];
    const Mesh& new_mesh = meshes[s];
    MeshGeometry new_geom = compute_geometry(new_mesh);
    const Reconstruction recon = reconstruct(old_mesh, old_geom, out.field, config, threads);
    RemapResult r;
    try {
      r = remap_field(old_mesh, old_geom, new_mesh, new_geom, recon, threads);
    } catch (const LocalityError& e) {
      throw LocalityError("step " + std::to_string(s) + ": " + e.what(), e.cell_i(), e.cell_j(), e.defect(),
                          static_cast<int>(s));
    }
    StepReport rep;
    rep.step = static_cast<int>(s);
    rep.mass_before = r.mass_old;
    rep.mass_after = r.mass_new;
    rep.max_coverage_defect = r.max_coverage_defect;
    const auto [lo, hi] = std::minmax_element(r.field.values.begin(), r.field.values.end());
    rep.field_min = *lo;
    rep.field_max = *hi;
    rep.rank_deficient_cells = static_cast<int>(
        std::count_if(recon.cells.begin(), recon.cells.end(), [](const auto& e) { return e.rank_deficient; }));
    out.steps.push_back(rep);
    out.field = std::move(r.field);
    old_geom = std::move(new_geom);
    if (observer) observer(static_cast<int>(s), new_mesh, out.field);
  }
  return out;
}

}  // namespace sasremap

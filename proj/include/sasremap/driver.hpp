#pragma once

// Experiment orchestration: build the mesh series, initialize the field,
// run the remap cycle and summarize it. Also the file layout of a run
// directory:
//
//   config.txt           canonical form of the run configuration
//   mesh_initial.csv     mesh_final.csv
//   field_initial.csv    field_final.csv    field_reference.csv
//   report.txt           steps.csv
//   mesh_NNNNN.csv, field_NNNNN.csv       every stride-th step (stride > 0)
//   *.vtk                                  when output.vtk is set

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "sasremap/config.hpp"
#include "sasremap/fields.hpp"
#include "sasremap/io.hpp"
#include "sasremap/meshgen.hpp"
#include "sasremap/remap.hpp"

namespace sasremap {

struct Experiment {
  Mesh initial_mesh;
  Mesh final_mesh;
  CellField initial;
  CellField final_field;
  CellField reference;
  RemapReport report;
  std::vector<StepReport> steps;
};

/// Error reference: the initial field for tensor series (the deformation
/// returns to the uniform mesh at t = 1), or the exact means on the final
/// mesh for random series.
inline CellField reference_field(const RunConfig& config, const Mesh& final_mesh, const CellField& initial,
                                 int threads = 1) {
  if (config.mesh.kind == SeriesKind::tensor) return initial;
  return init_means(final_mesh, config.field, threads);
}

inline Experiment run_experiment(const RunConfig& config, int threads = 1, const StepObserver& observer = {}) {
  config.limiter.check();
  const std::vector<Mesh> meshes = mesh_series(config.mesh);
  Experiment ex;
  ex.initial_mesh = meshes.front();
  ex.final_mesh = meshes.back();
  ex.initial = init_means(ex.initial_mesh, config.field, threads);
  CycleResult cycle = remap_cycle(meshes, ex.initial, config.limiter, threads, observer);
  ex.final_field = std::move(cycle.field);
  ex.steps = std::move(cycle.steps);
  ex.reference = reference_field(config, ex.final_mesh, ex.initial, threads);
  ex.report = make_report(ex.initial_mesh, ex.initial, ex.final_mesh, ex.final_field, ex.reference,
                          config.field.kind, config.lo, config.hi);
  return ex;
}

namespace detail {

inline std::string numbered(const char* stem, int step, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%05d.%s", stem, step, ext);
  return buf;
}

}  // namespace detail

/// Runs an experiment and writes the run directory.
inline Experiment run_to_directory(const RunConfig& config, int threads = 1) {
  namespace fs = std::filesystem;
  const fs::path dir = config.output.dir;
  fs::create_directories(dir);
  {
    auto os = detail::open_out(dir / "config.txt");
    os << format_config(config);
  }
  StepObserver observer;
  if (config.output.stride > 0) {
    observer = [&](int step, const Mesh& mesh, const CellField& field) {
      if (step % config.output.stride != 0) return;
      write_mesh_csv(dir / detail::numbered("mesh", step, "csv"), mesh);
      write_field_csv(dir / detail::numbered("field", step, "csv"), mesh, field);
      if (config.output.vtk) write_vtk(dir / detail::numbered("field", step, "vtk"), mesh, field);
    };
  }
  Experiment ex = run_experiment(config, threads, observer);
  write_mesh_csv(dir / "mesh_initial.csv", ex.initial_mesh);
  write_mesh_csv(dir / "mesh_final.csv", ex.final_mesh);
  write_field_csv(dir / "field_initial.csv", ex.initial_mesh, ex.initial);
  write_field_csv(dir / "field_final.csv", ex.final_mesh, ex.final_field);
  write_field_csv(dir / "field_reference.csv", ex.final_mesh, ex.reference);
  write_report(dir / "report.txt", ex.report);
  write_steps_csv(dir / "steps.csv", ex.steps);
  if (config.output.vtk) {
    write_vtk(dir / "field_initial.vtk", ex.initial_mesh, ex.initial);
    write_vtk(dir / "field_final.vtk", ex.final_mesh, ex.final_field);
  }
  return ex;
}

/// Writes the mesh series of a configuration: every stride-th member
/// (stride 0 means first and last only).
inline std::size_t write_mesh_series(const RunConfig& config) {
  namespace fs = std::filesystem;
  const fs::path dir = config.output.dir;
  fs::create_directories(dir);
  const auto meshes = mesh_series(config.mesh);
  std::size_t written = 0;
  for (std::size_t n = 0; n < meshes.size(); ++n) {
    const bool endpoint = n == 0 || n + 1 == meshes.size();
    const bool strided = config.output.stride > 0 && n % static_cast<std::size_t>(config.output.stride) == 0;
    if (!endpoint && !strided) continue;
    write_mesh_csv(dir / detail::numbered("mesh", static_cast<int>(n), "csv"), meshes[n]);
    ++written;
  }
  return written;
}

/// Recomputes the report of a run directory from its CSV files.
inline RemapReport recompute_report(const std::filesystem::path& dir) {
  const RunConfig config = parse_config(detail::slurp(dir / "config.txt"));
  const Mesh initial_mesh = read_mesh_csv(dir / "mesh_initial.csv");
  const Mesh final_mesh = read_mesh_csv(dir / "mesh_final.csv");
  const CellField initial = read_field_csv(dir / "field_initial.csv");
  const CellField final_field = read_field_csv(dir / "field_final.csv");
  const CellField reference = read_field_csv(dir / "field_reference.csv");
  check_aligned(initial, initial_mesh, "report");
  check_aligned(final_field, final_mesh, "report");
  return make_report(initial_mesh, initial, final_mesh, final_field, reference, config.field.kind, config.lo,
                     config.hi);
}

}  // namespace sasremap

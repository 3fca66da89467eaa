#pragma once

// File formats. All real numbers are written with 17 significant digits so
// that a write/read cycle is exact; indices in files are 1-based.
//
//   mesh CSV   header "i,j,x,y"; one row per node, j outer, i inner
//   field CSV  header "ci,cj,cx,cy,value"; one row per cell, cj outer,
//              ci inner; (cx, cy) is the cell centroid
//   report     "key=value" lines (see write_report)
//   steps CSV  header "step,mass_before,mass_after,min,max,coverage_defect,
//              rank_deficient"
//   VTK        legacy ASCII STRUCTURED_GRID with one CELL_DATA scalar

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sasremap/cell_field.hpp"
#include "sasremap/config.hpp"
#include "sasremap/error.hpp"
#include "sasremap/fields.hpp"
#include "sasremap/mesh.hpp"
#include "sasremap/remap.hpp"

namespace sasremap {

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  return os;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

// Rows of a CSV with a fixed header, each parsed as numbers.
inline std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path,
                                                         const std::string& header) {
  std::istringstream is(slurp(path));
  std::string line;
  if (!std::getline(is, line)) throw IoError("'" + path.string() + "': empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw IoError("'" + path.string() + "': expected header '" + header + "'");
  const std::size_t columns = split(header, ',').size();
  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != columns) {
      throw IoError("'" + path.string() + "' line " + std::to_string(line_no) + ": wrong column count");
    }
    std::vector<double> row(columns);
    for (std::size_t k = 0; k < columns; ++k) {
      try {
        std::size_t used = 0;
        row[k] = std::stod(cells[k], &used);
        if (used != cells[k].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw IoError("'" + path.string() + "' line " + std::to_string(line_no) + ": bad number '" + cells[k] + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline void write_mesh_csv(std::ostream& os, const Mesh& mesh) {
  os << "i,j,x,y\n";
  char buf[96];
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) {
      const Vec2 p = mesh.node(i, j);
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", i + 1, j + 1, p.x, p.y);
      os << buf;
    }
  }
}

inline void write_mesh_csv(const std::filesystem::path& path, const Mesh& mesh) {
  auto os = detail::open_out(path);
  write_mesh_csv(os, mesh);
}

inline Mesh read_mesh_csv(const std::filesystem::path& path) {
  const auto rows = detail::read_numeric_csv(path, "i,j,x,y");
  if (rows.empty()) throw IoError("'" + path.string() + "': no nodes");
  int nx = 0;
  int ny = 0;
  for (const auto& r : rows) {
    nx = std::max(nx, static_cast<int>(r[0]));
    ny = std::max(ny, static_cast<int>(r[1]));
  }
  if (rows.size() != static_cast<std::size_t>(nx) * ny) {
    throw IoError("'" + path.string() + "': node count does not match index range");
  }
  std::vector<Vec2> coords(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (const auto& r : rows) {
    const int i = static_cast<int>(r[0]) - 1;
    const int j = static_cast<int>(r[1]) - 1;
    if (i < 0 || j < 0 || i >= nx || j >= ny) throw IoError("'" + path.string() + "': index out of range");
    const std::size_t k = static_cast<std::size_t>(j) * nx + i;
    if (seen[k]) throw IoError("'" + path.string() + "': duplicate node");
    seen[k] = true;
    coords[k] = {r[2], r[3]};
  }
  return Mesh(nx, ny, std::move(coords));
}

inline void write_field_csv(std::ostream& os, const Mesh& mesh, const CellField& field) {
  check_aligned(field, mesh, "write_field_csv");
  os << "ci,cj,cx,cy,value\n";
  char buf[128];
  for (std::size_t k = 0; k < mesh.cell_count(); ++k) {
    const CellId c = mesh.cell(k);
    const Vec2 r = cell_volume_centroid(mesh, c).centroid;
    std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g\n", c.i + 1, c.j + 1, r.x, r.y, field[k]);
    os << buf;
  }
}

inline void write_field_csv(const std::filesystem::path& path, const Mesh& mesh, const CellField& field) {
  auto os = detail::open_out(path);
  write_field_csv(os, mesh, field);
}

inline CellField read_field_csv(const std::filesystem::path& path) {
  const auto rows = detail::read_numeric_csv(path, "ci,cj,cx,cy,value");
  if (rows.empty()) throw IoError("'" + path.string() + "': no cells");
  int cx = 0;
  int cy = 0;
  for (const auto& r : rows) {
    cx = std::max(cx, static_cast<int>(r[0]));
    cy = std::max(cy, static_cast<int>(r[1]));
  }
  if (rows.size() != static_cast<std::size_t>(cx) * cy) {
    throw IoError("'" + path.string() + "': cell count does not match index range");
  }
  CellField f(cx, cy, std::vector<double>(rows.size()));
  for (const auto& r : rows) {
    const int i = static_cast<int>(r[0]) - 1;
    const int j = static_cast<int>(r[1]) - 1;
    if (i < 0 || j < 0 || i >= cx || j >= cy) throw IoError("'" + path.string() + "': index out of range");
    f[static_cast<std::size_t>(j) * cx + i] = r[4];
  }
  return f;
}

/// Report keys, in file order: mass_initial, mass_final, mass_relative_error,
/// l1, l2, linf, field_min, field_max, bound_min, bound_max, overshoot,
/// interface_width ("none" for fields without a transition).
inline void write_report(std::ostream& os, const RemapReport& r) {
  using detail::format_real;
  os << "mass_initial=" << format_real(r.mass_initial) << "\n"
     << "mass_final=" << format_real(r.mass_final) << "\n"
     << "mass_relative_error=" << format_real(r.relative_mass_error()) << "\n"
     << "l1=" << format_real(r.l1) << "\n"
     << "l2=" << format_real(r.l2) << "\n"
     << "linf=" << format_real(r.linf) << "\n"
     << "field_min=" << format_real(r.field_min) << "\n"
     << "field_max=" << format_real(r.field_max) << "\n"
     << "bound_min=" << format_real(r.bound_min) << "\n"
     << "bound_max=" << format_real(r.bound_max) << "\n"
     << "overshoot=" << format_real(r.overshoot) << "\n"
     << "interface_width=" << (r.interface_width ? format_real(*r.interface_width) : std::string("none")) << "\n";
}

inline void write_report(const std::filesystem::path& path, const RemapReport& r) {
  auto os = detail::open_out(path);
  write_report(os, r);
}

inline std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
  std::istringstream is(detail::slurp(path));
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw IoError("'" + path.string() + "': malformed line '" + line + "'");
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

inline void write_steps_csv(const std::filesystem::path& path, const std::vector<StepReport>& steps) {
  using detail::format_real;
  auto os = detail::open_out(path);
  os << "step,mass_before,mass_after,min,max,coverage_defect,rank_deficient\n";
  for (const auto& s : steps) {
    os << s.step << "," << format_real(s.mass_before) << "," << format_real(s.mass_after) << ","
       << format_real(s.field_min) << "," << format_real(s.field_max) << "," << format_real(s.max_coverage_defect)
       << "," << s.rank_deficient_cells << "\n";
  }
}

inline void write_vtk(std::ostream& os, const Mesh& mesh, const CellField& field, const std::string& name = "value") {
  check_aligned(field, mesh, "write_vtk");
  using detail::format_real;
  os << "# vtk DataFile Version 3.0\n"
     << "sasremap cell field\n"
     << "ASCII\n"
     << "DATASET STRUCTURED_GRID\n"
     << "DIMENSIONS " << mesh.nx() << " " << mesh.ny() << " 1\n"
     << "POINTS " << mesh.nx() * mesh.ny() << " double\n";
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) {
      const Vec2 p = mesh.node(i, j);
      os << format_real(p.x) << " " << format_real(p.y) << " 0\n";
    }
  }
  os << "CELL_DATA " << mesh.cell_count() << "\n"
     << "SCALARS " << name << " double 1\n"
     << "LOOKUP_TABLE default\n";
  for (std::size_t k = 0; k < field.size(); ++k) os << format_real(field[k]) << "\n";
}

inline void write_vtk(const std::filesystem::path& path, const Mesh& mesh, const CellField& field,
                      const std::string& name = "value") {
  auto os = detail::open_out(path);
  write_vtk(os, mesh, field, name);
}

}  // namespace sasremap

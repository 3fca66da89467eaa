#pragma once

// Mesh sequences on the unit square used to drive continuous rezone/remap
// runs. Boundary nodes stay on the boundary of [0,1]^2 in every generator.
//
// Random perturbations come from std::mt19937_64 seeded with the series
// seed. Interior nodes are visited with j outer and i inner; each node draws
// two 64-bit words, x first, and each word w maps to
// delta = 0.5 * ((w >> 11) * 2^-53) - 0.25 in [-0.25, 0.25). The engine's
// output sequence is fixed by the C++ standard, so a seed yields the same
// mesh on every platform. A re-randomized series keeps drawing from the
// same engine, mesh after mesh.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "sasremap/error.hpp"
#include "sasremap/mesh.hpp"

namespace sasremap {

enum class SeriesKind { tensor, random_smooth };

inline const char* to_string(SeriesKind k) { return k == SeriesKind::tensor ? "tensor" : "random_smooth"; }

struct MeshSeriesSpec {
  SeriesKind kind = SeriesKind::tensor;
  int imax = 33;
  int jmax = 33;
  int nmax = 160;
  double gamma = 1.0;
  std::uint64_t seed = 12345;
  bool rerandomize = false;

  void check() const {
    if (imax < 3 || jmax < 3) throw ConfigError("mesh: imax and jmax must be >= 3");
    if (nmax < 1) throw ConfigError("mesh: nmax must be >= 1");
    if (!(gamma >= 0.0)) throw ConfigError("mesh: gamma must be >= 0");
    if (!(gamma * 0.25 < 0.5)) throw ConfigError("mesh: gamma * 0.25 must be < 0.5");
  }
};

/// Deformation amplitude sin(4 pi n / nmax) / 2, with the phase reduced to
/// an exact integer fraction so that it is exactly zero at n = 0, nmax/2
/// and nmax.
inline double tensor_theta(int n, int nmax) {
  const long long r = (2LL * n) % nmax;
  return 0.5 * std::sin(2.0 * std::numbers::pi * static_cast<double>(r) / nmax);
}

inline Mesh tensor_mesh(const MeshSeriesSpec& spec, int n) {
  if (n < 0 || n > spec.nmax) throw ConfigError("tensor_mesh: step out of range");
  const double theta = tensor_theta(n, spec.nmax);
  std::vector<Vec2> coords(static_cast<std::size_t>(spec.imax) * spec.jmax);
  for (int j = 0; j < spec.jmax; ++j) {
    const double eta = static_cast<double>(j) / (spec.jmax - 1);
    const double y = (1.0 - theta) * eta + theta * eta * eta;
    for (int i = 0; i < spec.imax; ++i) {
      const double xi = static_cast<double>(i) / (spec.imax - 1);
      const double x = (1.0 - theta) * xi + theta * xi * xi * xi;
      coords[static_cast<std::size_t>(j) * spec.imax + i] = {x, y};
    }
  }
  return Mesh(spec.imax, spec.jmax, std::move(coords));
}

namespace detail {

inline double draw_delta(std::mt19937_64& rng) {
  const std::uint64_t w = rng();
  return 0.5 * (static_cast<double>(w >> 11) * 0x1.0p-53) - 0.25;
}

inline Mesh perturbed_uniform(const MeshSeriesSpec& spec, std::mt19937_64& rng) {
  Mesh base = Mesh::uniform(spec.imax, spec.jmax);
  std::vector<Vec2> coords = base.coords();
  const double hx = 1.0 / (spec.imax - 1);
  const double hy = 1.0 / (spec.jmax - 1);
  for (int j = 1; j < spec.jmax - 1; ++j) {
    for (int i = 1; i < spec.imax - 1; ++i) {
      Vec2& p = coords[static_cast<std::size_t>(j) * spec.imax + i];
      const double dx = draw_delta(rng);
      const double dy = draw_delta(rng);
      p.x += spec.gamma * dx * hx;
      p.y += spec.gamma * dy * hy;
    }
  }
  return Mesh(spec.imax, spec.jmax, std::move(coords));
}

inline void require_valid(const Mesh& mesh, const std::string& context) {
  const auto d = validate(mesh);
  if (!d.ok) {
    const CellId c = d.bad_cells.front();
    throw MeshError(context + ": invalid mesh, cell (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                    ") is inverted or non-convex");
  }
}

}  // namespace detail

/// Uniform mesh with every interior node displaced independently by
/// gamma * delta * h per coordinate.
inline Mesh random_mesh(const MeshSeriesSpec& spec) {
  spec.check();
  std::mt19937_64 rng(spec.seed);
  Mesh m = detail::perturbed_uniform(spec, rng);
  detail::require_valid(m, "random_mesh (seed " + std::to_string(spec.seed) + ")");
  return m;
}

/// One Jacobi sweep of the (1,2,1)+(1,2,1) / 8 stencil on interior nodes.
inline Mesh smooth_mesh(const Mesh& mesh) {
  const int nx = mesh.nx();
  const int ny = mesh.ny();
  std::vector<Vec2> coords = mesh.coords();
  for (int j = 1; j < ny - 1; ++j) {
    for (int i = 1; i < nx - 1; ++i) {
      const Vec2 c = mesh.node(i, j);
      const Vec2 sum = (mesh.node(i - 1, j) + 2.0 * c + mesh.node(i + 1, j)) +
                       (mesh.node(i, j - 1) + 2.0 * c + mesh.node(i, j + 1));
      coords[static_cast<std::size_t>(j) * nx + i] = 0.125 * sum;
    }
  }
  return Mesh(nx, ny, std::move(coords));
}

/// nmax + 1 meshes. Random series start from random_mesh and are smoothed
/// step by step, or redrawn each step when rerandomize is set.
inline std::vector<Mesh> mesh_series(const MeshSeriesSpec& spec) {
  spec.check();
  std::vector<Mesh> out;
  out.reserve(static_cast<std::size_t>(spec.nmax) + 1);
  if (spec.kind == SeriesKind::tensor) {
    for (int n = 0; n <= spec.nmax; ++n) out.push_back(tensor_mesh(spec, n));
  } else {
    std::mt19937_64 rng(spec.seed);
    out.push_back(detail::perturbed_uniform(spec, rng));
    for (int n = 1; n <= spec.nmax; ++n) {
      out.push_back(spec.rerandomize ? detail::perturbed_uniform(spec, rng) : smooth_mesh(out.back()));
    }
  }
  for (std::size_t n = 0; n < out.size(); ++n) {
    detail::require_valid(out[n], "mesh_series member " + std::to_string(n) +
                                      (spec.kind == SeriesKind::random_smooth
                                           ? " (seed " + std::to_string(spec.seed) + ")"
                                           : std::string()));
  }
  return out;
}

}  // namespace sasremap

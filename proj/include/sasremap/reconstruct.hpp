#pragma once

// Piecewise-linear reconstruction of cell means with monoslope limiting.
//
// Each cell gets one gradient, obtained by least squares over its node
// neighborhood and then scaled by a single factor Phi_c. Three limiters are
// available:
//
//   none             Phi_c = 1
//   barth_jespersen  Phi_c = min_n min(1, 2 phi_n)
//   sas              Phi_c = min_n (phi_n + |phi_n|) / (1/beta_c + phi_n)
//
// where phi_n = (f_max - f_c) / (2 (f_n - f_c)) (or the f_min analogue) at
// each cell node n. For the self-adjusting steepness (sas) limiter, beta_c
// blends a smooth value and a steep value through the smoothness score
//
//   eta_c = 2^E (prod IS^p)^(E-1) + eps
//           --------------------------------------
//           (2 sum_e D_e prod_{s!=e} IS_s^p)^E + eps
//
// with IS_e the squared jump of the mean across interior edge e and D_e the
// edge-length weight. eta_c is 1 on data whose jumps are all alike and tends
// to 0 when one jump dominates.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "sasremap/cell_field.hpp"
#include "sasremap/error.hpp"
#include "sasremap/mesh.hpp"
#include "sasremap/parallel.hpp"

namespace sasremap {

enum class LimiterKind { none, barth_jespersen, sas };

/// How epsilon enters the smoothness score. `absolute` evaluates the score
/// on the raw indicators, so epsilon acts as a floor below which jumps count
/// as smooth. `relative` divides the indicators by their maximum first,
/// which makes the score independent of the field's scale.
enum class EtaScaling { absolute, relative };

struct LimiterConfig {
  LimiterKind kind = LimiterKind::sas;
  double beta_smooth = 1.0;  // selected where eta -> 1
  double beta_steep = 2.9;   // selected where eta -> 0
  double p = 2.0;
  double epsilon = 1e-40;
  EtaScaling eta_scaling = EtaScaling::relative;

  void check() const {
    if (!(beta_smooth > 0.0)) throw ConfigError("limiter: beta_smooth must be positive");
    if (!(beta_steep >= beta_smooth)) throw ConfigError("limiter: beta_steep must be >= beta_smooth");
    if (!(p >= 1.0)) throw ConfigError("limiter: p must be >= 1");
    if (!(epsilon > 0.0)) throw ConfigError("limiter: epsilon must be positive");
  }
};

inline const char* to_string(LimiterKind k) {
  switch (k) {
    case LimiterKind::none: return "none";
    case LimiterKind::barth_jespersen: return "barth_jespersen";
    case LimiterKind::sas: return "sas";
  }
  return "?";
}

struct Gradient {
  Vec2 value;
  bool rank_deficient = false;
};

/// Least-squares gradient over the centroids of the node neighborhood.
/// Affine data is reproduced exactly. A singular normal system yields a
/// zero gradient with the rank_deficient flag set.
inline Gradient unlimited_gradient(const Mesh& mesh, const MeshGeometry& geom, const CellField& field,
                                   CellId c) {
  const std::size_t k = mesh.index(c);
  const Vec2 rc = geom.centroid[k];
  const double fc = field[k];
  double axx = 0.0, axy = 0.0, ayy = 0.0, bx = 0.0, by = 0.0;
  for (const CellId o : node_neighborhood(mesh, c)) {
    const std::size_t ko = mesh.index(o);
    const Vec2 d = geom.centroid[ko] - rc;
    const double df = field[ko] - fc;
    axx += d.x * d.x;
    axy += d.x * d.y;
    ayy += d.y * d.y;
    bx += d.x * df;
    by += d.y * df;
  }
  const double det = axx * ayy - axy * axy;
  const double trace = axx + ayy;
  if (!(det > 1e-12 * trace * trace)) return {{0.0, 0.0}, true};
  return {{(ayy * bx - axy * by) / det, (axx * by - axy * bx) / det}, false};
}

/// Squared jump of the cell mean across an interior edge.
inline double smoothness_indicator(const Mesh& mesh, const CellField& field, CellId c, Side side) {
  const auto edges = edge_neighbors(mesh, c);
  const EdgeRecord& e = edges[static_cast<int>(side)];
  if (e.boundary) throw MeshError("smoothness_indicator: boundary edge has no neighbor");
  const double jump = field[mesh.index(e.neighbor)] - field[mesh.index(c)];
  return jump * jump;
}

/// Edge length over perimeter, for all four edges (south, east, north, west).
inline std::array<double, 4> linear_weights(const Mesh& mesh, CellId c) {
  const auto edges = edge_neighbors(mesh, c);
  double perimeter = 0.0;
  for (const auto& e : edges) perimeter += e.length;
  std::array<double, 4> w{};
  for (int k = 0; k < 4; ++k) w[k] = edges[k].length / perimeter;
  return w;
}

/// Smoothness score from per-edge indicators and linear weights, for one
/// cell. Returns 1 for fewer than two edges or when every indicator
/// vanishes; the result is clamped to [0, 1].
///
/// The indicators are divided by their maximum m before powers are taken.
/// Both products in the score scale by m^(p E (E-1)), so the absolute score
/// equals the normalized one with epsilon replaced by
/// epsilon / m^(p E (E-1)); that substitution is evaluated in log space and
/// avoids under- and overflow of the raw products.
inline double eta_from_indicators(std::span<const double> is, std::span<const double> weights, double p,
                                  double epsilon, EtaScaling scaling = EtaScaling::relative) {
  const std::size_t n = is.size();
  if (n < 2) return 1.0;
  const double top = *std::max_element(is.begin(), is.end());
  if (!(top > 0.0)) return 1.0;

  const double edges = static_cast<double>(n);
  double eps = epsilon;
  if (scaling == EtaScaling::absolute) {
    const double log_eps = std::log(epsilon) - p * edges * (edges - 1.0) * std::log(top);
    if (log_eps > 700.0) return 1.0;
    eps = std::exp(log_eps);
  }

  std::array<double, 8> powed{};
  for (std::size_t e = 0; e < n; ++e) powed[e] = std::pow(is[e] / top, p);

  double all = 1.0;
  for (std::size_t e = 0; e < n; ++e) all *= powed[e];
  double sum = 0.0;
  for (std::size_t e = 0; e < n; ++e) {
    double others = weights[e];
    for (std::size_t s = 0; s < n; ++s) {
      if (s != e) others *= powed[s];
    }
    sum += others;
  }
  const double num = std::pow(2.0, edges) * std::pow(all, edges - 1.0) + eps;
  const double den = std::pow(2.0 * sum, edges) + eps;
  return std::clamp(num / den, 0.0, 1.0);
}

/// Interior edges of a cell with their indicators and renormalized weights.
struct EdgeStencil {
  std::array<double, 4> indicator{};
  std::array<double, 4> weight{};
  int count = 0;
};

inline EdgeStencil interior_edges(const Mesh& mesh, const CellField& field, CellId c) {
  EdgeStencil s;
  const double fc = field[mesh.index(c)];
  double perimeter = 0.0;
  for (const auto& e : edge_neighbors(mesh, c)) {
    if (e.boundary) continue;
    const double jump = field[mesh.index(e.neighbor)] - fc;
    s.indicator[s.count] = jump * jump;
    s.weight[s.count] = e.length;
    perimeter += e.length;
    ++s.count;
  }
  for (int k = 0; k < s.count; ++k) s.weight[k] /= perimeter;
  return s;
}

inline double eta(const Mesh& mesh, const CellField& field, CellId c, const LimiterConfig& config) {
  const EdgeStencil s = interior_edges(mesh, field, c);
  const auto n = static_cast<std::size_t>(s.count);
  return eta_from_indicators(std::span(s.indicator.data(), n), std::span(s.weight.data(), n), config.p,
                             config.epsilon, config.eta_scaling);
}

inline double steepness(double eta_value, const LimiterConfig& config) {
  return eta_value * config.beta_smooth + (1.0 - eta_value) * config.beta_steep;
}

/// Allowed ratio at one node: how far the unlimited node value may move
/// toward the local bound, with the factor 1/2 of the steep limiter's
/// ratio convention.
inline double node_ratio(double f_c, double f_node, double f_min, double f_max) {
  const double delta = f_node - f_c;
  if (delta > 0.0) return (f_max - f_c) / (2.0 * delta);
  if (delta < 0.0) return (f_min - f_c) / (2.0 * delta);
  return 1.0;
}

/// Harmonic limiter with adjustable steepness. Reduces to the classic
/// harmonic limiter at beta = 1 and approaches 2 as phi grows.
// Zero numerator for phi <= 0; guarded so phi = -1/beta does not give 0/0.
inline double sas_phi(double phi, double beta) {
  if (!(phi > 0.0)) return 0.0;
  return 2.0 * phi / (1.0 / beta + phi);
}

inline double barth_jespersen_phi(double phi) { return std::clamp(2.0 * phi, 0.0, 1.0); }

struct ReconstructionEntry {
  double mean = 0.0;
  Vec2 gradient;  // limited
  Vec2 centroid;
  double limiter = 1.0;  // Phi_c
  double eta = 1.0;
  double beta = 1.0;
  bool rank_deficient = false;

  double value_at(Vec2 r) const { return mean + dot(gradient, r - centroid); }
};

inline ReconstructionEntry limit_cell(const Mesh& mesh, const MeshGeometry& geom, const CellField& field,
                                      CellId c, const LimiterConfig& config) {
  const std::size_t k = mesh.index(c);
  ReconstructionEntry r;
  r.mean = field[k];
  r.centroid = geom.centroid[k];
  const Gradient g = unlimited_gradient(mesh, geom, field, c);
  r.rank_deficient = g.rank_deficient;

  if (config.kind == LimiterKind::sas) {
    r.eta = eta(mesh, field, c, config);
    r.beta = steepness(r.eta, config);
  }
  if (config.kind == LimiterKind::none) {
    r.gradient = g.value;
    return r;
  }

  double f_min = r.mean;
  double f_max = r.mean;
  for (const CellId o : node_neighborhood(mesh, c)) {
    const double v = field[mesh.index(o)];
    f_min = std::min(f_min, v);
    f_max = std::max(f_max, v);
  }
  double limiter = HUGE_VAL;
  for (const Vec2& node : mesh.corners(c)) {
    const double f_node = r.mean + dot(g.value, node - r.centroid);
    const double phi = node_ratio(r.mean, f_node, f_min, f_max);
    const double bound =
        config.kind == LimiterKind::barth_jespersen ? barth_jespersen_phi(phi) : sas_phi(phi, r.beta);
    limiter = std::min(limiter, bound);
  }
  r.limiter = limiter;
  r.gradient = limiter * g.value;
  return r;
}

/// Limited linear reconstruction of a whole field.
struct Reconstruction {
  std::vector<ReconstructionEntry> cells;

  const ReconstructionEntry& operator[](std::size_t k) const { return cells[k]; }
  std::size_t size() const { return cells.size(); }
};

inline Reconstruction reconstruct(const Mesh& mesh, const MeshGeometry& geom, const CellField& field,
                                  const LimiterConfig& config, int threads = 1) {
  check_aligned(field, mesh, "reconstruct");
  Reconstruction out;
  out.cells.resize(mesh.cell_count());
  parallel_for(mesh.cell_count(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) out.cells[k] = limit_cell(mesh, geom, field, mesh.cell(k), config);
  });
  return out;
}

}  // namespace sasremap

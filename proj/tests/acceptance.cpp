// Acceptance runner: one PASS/FAIL line per criterion, tolerances pinned
// below. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sasremap/sasremap.hpp"

using namespace sasremap;

namespace {

constexpr double kMassTol = 1e-11;         // relative
constexpr double kRuntimeLimit = 120.0;    // seconds per run
constexpr double kAffineTol = 1e-10;       // L-infinity
constexpr double kOrderMin = 1.6;
constexpr double kSasOverBjMax = 1.5;
constexpr double kWidthGap = 0.5;          // cells
constexpr double kOvershootTol = 1e-12;
constexpr double kEtaSteepMax = 0.1;
constexpr double kEtaSmoothMin = 0.9;
constexpr int kFarDistance = 3;            // cells
// means within this of 0 or 1 come from lines through a grid node
constexpr double kStraddleMargin = 1e-12;
constexpr double kEtaScaleTol = 1e-12;
constexpr int kQuadPairs = 1000;
constexpr int kMcSamples = 200000;
constexpr double kMcSigmas = 3.0;
constexpr double kAffineIntegralTol = 1e-12;
constexpr double kOracleTol = 1e-9;

struct Limiter {
  const char* name;
  LimiterKind kind;
  double beta_smooth;
  double beta_steep;
};

const Limiter kBJ{"BJ", LimiterKind::barth_jespersen, 1.0, 2.9};
const Limiter kSas29{"SAS2.9", LimiterKind::sas, 1.0, 2.9};
const Limiter kSas42{"SAS4.2", LimiterKind::sas, 1.0, 4.2};
const Limiter kSasHarmonic{"SAS1", LimiterKind::sas, 1.0, 1.0};

struct Run {
  RemapReport report;
  double seconds = 0.0;
};

RunConfig make_config(SeriesKind mesh, int nodes, int nmax, const Limiter& lim, FieldKind field) {
  RunConfig c;
  c.mesh.kind = mesh;
  c.mesh.imax = c.mesh.jmax = nodes;
  c.mesh.nmax = nmax;
  c.limiter.kind = lim.kind;
  c.limiter.beta_smooth = lim.beta_smooth;
  c.limiter.beta_steep = lim.beta_steep;
  c.field.kind = field;
  if (field == FieldKind::affine) {
    c.field.a = 0.3;
    c.field.b = 0.7;
    c.field.c = -0.2;
  }
  return c;
}

std::string label(const RunConfig& c, const Limiter& lim) {
  std::ostringstream os;
  os << (c.mesh.kind == SeriesKind::tensor ? "tensor" : "random_smooth") << " " << c.mesh.imax << "^2/"
     << c.mesh.nmax << " " << to_string(c.field.kind) << " " << lim.name;
  return os.str();
}

std::map<std::string, Run> g_cache;

const Run& run(SeriesKind mesh, int nodes, int nmax, const Limiter& lim, FieldKind field) {
  const RunConfig c = make_config(mesh, nodes, nmax, lim, field);
  const std::string key = label(c, lim);
  auto it = g_cache.find(key);
  if (it != g_cache.end()) return it->second;
  const auto t0 = std::chrono::steady_clock::now();
  Run r;
  r.report = run_experiment(c).report;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("  run %-40s %6.1fs  L1 %.4g  mass %.2e  overshoot %.2e", key.c_str(), r.seconds, r.report.l1,
              r.report.relative_mass_error(), r.report.overshoot);
  if (r.report.interface_width) std::printf("  width %.4g", *r.report.interface_width);
  std::printf("\n");
  std::fflush(stdout);
  return g_cache.emplace(key, r).first->second;
}

int g_failures = 0;

void verdict(int id, bool ok, const std::string& detail) {
  std::printf("CRITERION %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void conservation() {
  bool ok = true;
  double worst_mass = 0.0, slowest = 0.0;
  for (SeriesKind mesh : {SeriesKind::tensor, SeriesKind::random_smooth}) {
    for (const Limiter* lim : {&kBJ, &kSas29, &kSas42}) {
      for (FieldKind field : {FieldKind::sine, FieldKind::shock}) {
        const Run& r = run(mesh, 65, 320, *lim, field);
        const double m = std::abs(r.report.relative_mass_error());
        worst_mass = std::max(worst_mass, m);
        slowest = std::max(slowest, r.seconds);
        if (!(m <= kMassTol) || !(r.seconds <= kRuntimeLimit)) ok = false;
      }
    }
  }
  verdict(1, ok, "max relative mass error " + fmt("%.3e", worst_mass) + " (tol 1e-11), slowest run " +
                     fmt("%.1f", slowest) + "s (limit 120s)");
}

void affine_exactness() {
  const Limiter none{"none", LimiterKind::none, 1.0, 2.9};
  const Run& r = run(SeriesKind::random_smooth, 17, 20, none, FieldKind::affine);
  verdict(2, r.report.linf <= kAffineTol, "Linf " + fmt("%.3e", r.report.linf) + " (tol 1e-10)");
}

void convergence() {
  bool ok = true;
  std::string detail;
  std::map<std::string, double> fine;
  for (const Limiter* lim : {&kBJ, &kSas29, &kSas42}) {
    std::vector<double> l1;
    for (auto [nodes, nmax] : {std::pair{17, 80}, {33, 160}, {65, 320}}) {
      l1.push_back(run(SeriesKind::tensor, nodes, nmax, *lim, FieldKind::sine).report.l1);
    }
    detail += std::string(lim->name) + " orders";
    for (std::size_t k = 1; k < l1.size(); ++k) {
      const double order = std::log2(l1[k - 1] / l1[k]);
      detail += fmt(" %.2f", order);
      if (!(order >= kOrderMin)) ok = false;
    }
    detail += "; ";
    fine[lim->name] = l1.back();
  }
  for (const Limiter* lim : {&kSas29, &kSas42}) {
    const double ratio = fine[lim->name] / fine[kBJ.name];
    detail += std::string(lim->name) + "/BJ L1 at 65^2 " + fmt("%.2f", ratio) + "; ";
    if (!(ratio <= kSasOverBjMax)) ok = false;
  }
  verdict(3, ok, detail + "(need orders >= 1.6, ratio <= 1.5)");
}

void anti_diffusion() {
  auto width = [](SeriesKind mesh, const Limiter& lim) {
    const auto& r = run(mesh, 65, 320, lim, FieldKind::shock).report;
    return r.interface_width ? *r.interface_width : NAN;
  };
  const double tb = width(SeriesKind::tensor, kBJ);
  const double t29 = width(SeriesKind::tensor, kSas29);
  const double t42 = width(SeriesKind::tensor, kSas42);
  const double rb = width(SeriesKind::random_smooth, kBJ);
  const double r29 = width(SeriesKind::random_smooth, kSas29);
  const double r42 = width(SeriesKind::random_smooth, kSas42);
  const bool tensor_ok = tb - t29 >= kWidthGap && t29 - t42 >= kWidthGap;
  const bool random_ok = rb > r29 && r29 > r42;
  std::ostringstream os;
  os.precision(4);
  os << "tensor BJ " << tb << " > SAS2.9 " << t29 << " > SAS4.2 " << t42 << " (gaps >= 0.5); random_smooth BJ " << rb
     << " > SAS2.9 " << r29 << " > SAS4.2 " << r42;
  verdict(4, tensor_ok && random_ok, os.str());
}

void bound_preservation() {
  bool ok = true;
  double worst = 0.0;
  for (SeriesKind mesh : {SeriesKind::tensor, SeriesKind::random_smooth}) {
    for (const Limiter* lim : {&kBJ, &kSasHarmonic}) {
      for (FieldKind field : {FieldKind::sine, FieldKind::shock}) {
        const double o = run(mesh, 65, 320, *lim, field).report.overshoot;
        worst = std::max(worst, o);
        if (!(o <= kOvershootTol)) ok = false;
      }
    }
  }
  verdict(5, ok, "max overshoot " + fmt("%.3e", worst) + " (tol 1e-12)");
}

void eta_behavior() {
  const Mesh m = Mesh::uniform(65, 65);
  FieldSpec shock;
  shock.kind = FieldKind::shock;
  const CellField f = init_means(m, shock);
  const LimiterConfig cfg;

  std::vector<CellId> straddling;
  for (std::size_t k = 0; k < m.cell_count(); ++k) {
    if (f[k] > kStraddleMargin && f[k] < 1.0 - kStraddleMargin) straddling.push_back(m.cell(k));
  }
  int steep_bad = 0, smooth_bad = 0, far = 0;
  double steep_max = 0.0, smooth_min = 1.0;
  for (const CellId c : straddling) {
    const double e = eta(m, f, c, cfg);
    steep_max = std::max(steep_max, e);
    if (!(e < kEtaSteepMax)) ++steep_bad;
  }
  for (std::size_t k = 0; k < m.cell_count(); ++k) {
    const CellId c = m.cell(k);
    int dist = 1 << 30;
    for (const CellId s : straddling) dist = std::min(dist, std::max(std::abs(s.i - c.i), std::abs(s.j - c.j)));
    if (dist < kFarDistance) continue;
    ++far;
    const double e = eta(m, f, c, cfg);
    smooth_min = std::min(smooth_min, e);
    if (!(e > kEtaSmoothMin)) ++smooth_bad;
  }

  // scale invariance on the shock field and on random fields
  double scale_dev = 0.0;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<CellField> fields{f};
  for (int t = 0; t < 5; ++t) {
    CellField g(m);
    for (double& v : g.values) v = u(rng);
    fields.push_back(std::move(g));
  }
  for (const CellField& g : fields) {
    for (double lambda : {1e-3, 1.0, 1e3}) {
      CellField s = g;
      for (double& v : s.values) v *= lambda;
      for (std::size_t k = 0; k < m.cell_count(); ++k) {
        scale_dev = std::max(scale_dev, std::abs(eta(m, s, m.cell(k), cfg) - eta(m, g, m.cell(k), cfg)));
      }
    }
  }

  const bool ok = steep_bad == 0 && smooth_bad == 0 && scale_dev <= kEtaScaleTol;
  std::ostringstream os;
  os << steep_bad << "/" << straddling.size() << " straddling cells with eta >= 0.1 (max "
     << fmt("%.3f", steep_max) << "); " << smooth_bad << "/" << far << " far cells with eta <= 0.9 (min "
     << fmt("%.3f", smooth_min) << "); scale deviation " << fmt("%.2e", scale_dev) << " (tol 1e-12)";
  verdict(6, ok, os.str());
}

void geometry_oracle() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int area_bad = 0, integral_bad = 0;
  double worst_z = 0.0, worst_integral = 0.0;
  for (int t = 0; t < kQuadPairs; ++t) {
    const auto a = oracle::random_convex_quad(rng);
    const auto b = oracle::random_convex_quad(rng);
    const Polygon piece = clip_convex(Polygon(a), Polygon(b));
    const double area = polygon_area(piece);

    // Monte Carlo over the bounding box of the first quad
    double x0 = HUGE_VAL, x1 = -HUGE_VAL, y0 = HUGE_VAL, y1 = -HUGE_VAL;
    for (const Vec2& p : a) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    const double box = (x1 - x0) * (y1 - y0);
    int hits = 0;
    for (int s = 0; s < kMcSamples; ++s) {
      const Vec2 p{x0 + (x1 - x0) * u(rng), y0 + (y1 - y0) * u(rng)};
      if (oracle::inside_convex(a, p) && oracle::inside_convex(b, p)) ++hits;
    }
    const double frac = static_cast<double>(hits) / kMcSamples;
    // floor the variance at one hit so empty or full overlaps keep a sigma
    const double var = std::max(frac * (1.0 - frac), 1.0 / kMcSamples);
    const double sigma = box * std::sqrt(var / kMcSamples);
    const double z = std::abs(area - box * frac) / sigma;
    worst_z = std::max(worst_z, z);
    if (!(z <= kMcSigmas)) ++area_bad;

    const double m0 = 2.0 * u(rng) - 1.0;
    const Vec2 g{2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0};
    const Vec2 c{u(rng), u(rng)};
    if (piece.size() >= 3) {
      const std::vector<Vec2> v(piece.vertices().begin(), piece.vertices().end());
      const double exact = integrate_affine(piece, m0, g, c);
      const double quad = oracle::integrate_polygon(v, [&](Vec2 p) { return m0 + dot(g, p - c); }, 4);
      const double err = std::abs(exact - quad);
      worst_integral = std::max(worst_integral, err);
      if (!(err <= kAffineIntegralTol)) ++integral_bad;
    }
  }
  std::ostringstream os;
  os << area_bad << "/" << kQuadPairs << " pairs outside 3 sigma (max z " << fmt("%.2f", worst_z)
     << "); integrate_affine max error " << fmt("%.2e", worst_integral) << " (tol 1e-12)";
  verdict(7, area_bad == 0 && integral_bad == 0, os.str());
}

void oracle_equivalence() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    auto jitter = [&] {
      std::vector<Vec2> coords = Mesh::uniform(4, 4).coords();
      for (int j = 1; j < 3; ++j) {
        for (int i = 1; i < 3; ++i) coords[j * 4 + i] = coords[j * 4 + i] + Vec2{0.08 * u(rng), 0.08 * u(rng)};
      }
      return Mesh(4, 4, coords);
    };
    const Mesh old_mesh = jitter();
    const Mesh new_mesh = jitter();
    CellField f(old_mesh);
    for (double& v : f.values) v = 1.0 + u(rng);
    for (const Limiter* lim : {&kBJ, &kSas29, &kSas42}) {
      LimiterConfig cfg;
      cfg.kind = lim->kind;
      cfg.beta_steep = lim->beta_steep;
      const auto geom = compute_geometry(old_mesh);
      const auto recon = reconstruct(old_mesh, geom, f, cfg);
      const auto got = remap_field(old_mesh, new_mesh, recon).field;
      const auto want = oracle::remap(old_mesh, new_mesh, recon);
      for (std::size_t k = 0; k < want.size(); ++k) worst = std::max(worst, std::abs(got[k] - want[k]));
    }
  }
  verdict(8, worst <= kOracleTol, "max per-cell deviation " + fmt("%.2e", worst) + " over 20 meshes x 3 limiters (tol 1e-9)");
}

void determinism() {
  bool ok = true;
  for (FieldKind field : {FieldKind::sine, FieldKind::shock}) {
    for (SeriesKind mesh : {SeriesKind::tensor, SeriesKind::random_smooth}) {
      const RunConfig c = make_config(mesh, 33, 160, kSas29, field);
      std::ostringstream a, b;
      write_report(a, run_experiment(c, 1).report);
      write_report(b, run_experiment(c, 8).report);
      if (a.str() != b.str()) ok = false;
    }
  }
  verdict(9, ok, "report bytes for threads 1 and 8 on 4 runs (33^2/160)");
}

void informational() {
  // absolute eta scaling, for comparison only
  std::printf("  info: absolute eta scaling, tensor 65^2/320\n");
  for (const Limiter* lim : {&kSas29, &kSas42}) {
    RunConfig c = make_config(SeriesKind::tensor, 65, 320, *lim, FieldKind::shock);
    c.limiter.eta_scaling = EtaScaling::absolute;
    const auto shock = run_experiment(c).report;
    c.field.kind = FieldKind::sine;
    const auto sine = run_experiment(c).report;
    std::printf("  info: %s shock width %.4g, sine L1 %.4g\n", lim->name, shock.interface_width.value_or(NAN),
                sine.l1);
  }
}

}  // namespace

int main() {
  std::vector<std::pair<int, void (*)()>> criteria{{1, conservation},     {2, affine_exactness},
                                                   {3, convergence},      {4, anti_diffusion},
                                                   {5, bound_preservation}, {6, eta_behavior},
                                                   {7, geometry_oracle},  {8, oracle_equivalence},
                                                   {9, determinism}};
  for (const auto& [id, check] : criteria) {
    try {
      check();
    } catch (const std::exception& e) {
      verdict(id, false, std::string("exception: ") + e.what());
    }
  }
  informational();
  std::printf("%d of %zu criteria failed\n", g_failures, criteria.size());
  return g_failures == 0 ? 0 : 1;
}

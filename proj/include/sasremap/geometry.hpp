#pragma once

// Planar computational geometry on convex polygons: signed area, centroid,
// half-plane and convex-convex clipping, and exact integration of affine
// functions. Polygons are counter-clockwise vertex lists; an empty vertex
// list encodes the empty polygon.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <span>
#include <vector>

#include "sasremap/error.hpp"

namespace sasremap {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

class Polygon {
 public:
  Polygon() = default;
  Polygon(std::initializer_list<Vec2> v) : vertices_(v) {}
  explicit Polygon(std::vector<Vec2> v) : vertices_(std::move(v)) {}

  std::span<const Vec2> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  const Vec2& operator[](std::size_t k) const { return vertices_[k]; }

 private:
  std::vector<Vec2> vertices_;
};

namespace detail {

struct Box {
  Vec2 lo;
  Vec2 hi;
  double diagonal() const { return norm(hi - lo); }
  double area() const { return (hi.x - lo.x) * (hi.y - lo.y); }
};

inline Box bounding_box(std::span<const Vec2> a, std::span<const Vec2> b = {}) {
  Box box{{HUGE_VAL, HUGE_VAL}, {-HUGE_VAL, -HUGE_VAL}};
  auto grow = [&box](std::span<const Vec2> pts) {
    for (const Vec2& p : pts) {
      box.lo.x = std::min(box.lo.x, p.x);
      box.lo.y = std::min(box.lo.y, p.y);
      box.hi.x = std::max(box.hi.x, p.x);
      box.hi.y = std::max(box.hi.y, p.y);
    }
  };
  grow(a);
  grow(b);
  return box;
}

// Zeroth and first moments of a polygon, accumulated relative to its first
// vertex to limit cancellation for polygons far from the origin.
struct Moments {
  double area = 0.0;
  double mx = 0.0;  // integral of (x - origin.x)
  double my = 0.0;  // integral of (y - origin.y)
  Vec2 origin;
};

inline Moments moments(std::span<const Vec2> v) {
  Moments m;
  if (v.size() < 3) return m;
  m.origin = v[0];
  for (std::size_t k = 1; k + 1 < v.size(); ++k) {
    const Vec2 a = v[k] - m.origin;
    const Vec2 b = v[k + 1] - m.origin;
    const double c = cross(a, b);
    m.area += c;
    m.mx += c * (a.x + b.x);
    m.my += c * (a.y + b.y);
  }
  m.area *= 0.5;
  m.mx /= 6.0;
  m.my /= 6.0;
  return m;
}

// Relative tolerances for clip results: vertices closer than kPointEps times
// the bounding-box diagonal are merged, and results with area below
// kSliverEps times the bounding-box area are empty. The sliver threshold
// sits at the roundoff level of the shoelace sum; dropping larger slivers
// biases the remapped means of constant states.
inline constexpr double kPointEps = 1e-12;
inline constexpr double kSliverEps = 1e-16;

// Clips against the half-plane on the left of the directed line a->b.
inline void clip_left_of(std::vector<Vec2>& in, std::vector<Vec2>& out, Vec2 a, Vec2 b) {
  out.clear();
  const std::size_t n = in.size();
  if (n == 0) return;
  const Vec2 dir = b - a;
  Vec2 prev = in[n - 1];
  double dp = cross(dir, prev - a);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 cur = in[k];
    const double dc = cross(dir, cur - a);
    if (dc >= 0.0) {
      if (dp < 0.0) out.push_back(prev + (dp / (dp - dc)) * (cur - prev));
      out.push_back(cur);
    } else if (dp > 0.0) {
      out.push_back(prev + (dp / (dp - dc)) * (cur - prev));
    }
    prev = cur;
    dp = dc;
  }
  in.swap(out);
}

// Removes consecutive near-duplicate vertices, then drops the polygon
// entirely if it has collapsed to a sliver.
inline Polygon finalize(std::vector<Vec2> v, double point_eps, double area_eps) {
  std::vector<Vec2> kept;
  kept.reserve(v.size());
  for (const Vec2& p : v) {
    if (kept.empty() || norm(p - kept.back()) > point_eps) kept.push_back(p);
  }
  while (kept.size() > 1 && norm(kept.front() - kept.back()) <= point_eps) kept.pop_back();
  if (kept.size() < 3) return {};
  if (std::abs(moments(kept).area) <= area_eps) return {};
  return Polygon(std::move(kept));
}

}  // namespace detail

/// Shoelace signed area; positive for counter-clockwise polygons.
inline double polygon_area(const Polygon& p) { return detail::moments(p.vertices()).area; }

/// Area-weighted centroid. Throws GeometryError for degenerate input.
inline Vec2 polygon_centroid(const Polygon& p) {
  if (p.size() < 3) throw GeometryError("polygon_centroid: fewer than three vertices");
  const auto box = detail::bounding_box(p.vertices());
  const auto m = detail::moments(p.vertices());
  const double area_eps = 1e-14 * box.area();
  if (!(std::abs(m.area) > area_eps)) throw GeometryError("polygon_centroid: degenerate polygon");
  return {m.origin.x + m.mx / m.area, m.origin.y + m.my / m.area};
}

/// True when every turn is counter-clockwise up to a tolerance scaled by
/// the squared longest edge. Polygons with fewer than three vertices are
/// accepted (they clip to nothing).
inline bool is_convex_ccw(const Polygon& p, double rel_tol = 1e-14) {
  const std::size_t n = p.size();
  if (n < 3) return true;
  double longest = 0.0;
  for (std::size_t k = 0; k < n; ++k) longest = std::max(longest, norm(p[(k + 1) % n] - p[k]));
  const double tol = rel_tol * longest * longest;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 e0 = p[(k + 1) % n] - p[k];
    const Vec2 e1 = p[(k + 2) % n] - p[(k + 1) % n];
    if (cross(e0, e1) < -tol) return false;
  }
  return polygon_area(p) > 0.0;
}

/// Part of p with a*x + b*y + c >= 0.
inline Polygon clip_half_plane(const Polygon& p, double a, double b, double c) {
  if (p.empty()) return {};
  // Two points on the boundary line, oriented so the kept side is on the left.
  const double len2 = a * a + b * b;
  if (len2 == 0.0) throw GeometryError("clip_half_plane: zero normal");
  const Vec2 foot{-a * c / len2, -b * c / len2};
  const Vec2 along{b, -a};
  std::vector<Vec2> cur(p.vertices().begin(), p.vertices().end());
  std::vector<Vec2> scratch;
  scratch.reserve(cur.size() + 1);
  detail::clip_left_of(cur, scratch, foot, foot + along);
  const auto box = detail::bounding_box(p.vertices());
  return detail::finalize(std::move(cur), detail::kPointEps * box.diagonal(), detail::kSliverEps * box.area());
}

/// Intersection of two convex counter-clockwise polygons by successive
/// half-plane clipping of `subject` against the edges of `clip`.
inline Polygon clip_convex(const Polygon& subject, const Polygon& clip) {
  if (subject.empty() || clip.empty()) return {};
  if (!is_convex_ccw(subject) || !is_convex_ccw(clip)) {
    throw GeometryError("clip_convex: input polygon is not convex and counter-clockwise");
  }
  std::vector<Vec2> cur(subject.vertices().begin(), subject.vertices().end());
  std::vector<Vec2> scratch;
  cur.reserve(subject.size() + clip.size());
  scratch.reserve(subject.size() + clip.size());
  const std::size_t m = clip.size();
  for (std::size_t k = 0; k < m && !cur.empty(); ++k) {
    detail::clip_left_of(cur, scratch, clip[k], clip[(k + 1) % m]);
  }
  const auto box = detail::bounding_box(subject.vertices(), clip.vertices());
  return detail::finalize(std::move(cur), detail::kPointEps * box.diagonal(), detail::kSliverEps * box.area());
}

/// Exact integral over p of f(r) = mean + grad . (r - center).
inline double integrate_affine(const Polygon& p, double mean, Vec2 grad, Vec2 center) {
  if (p.size() < 3) return 0.0;
  const auto m = detail::moments(p.vertices());
  const Vec2 shift = m.origin - center;
  return mean * m.area + grad.x * (m.mx + shift.x * m.area) + grad.y * (m.my + shift.y * m.area);
}

}  // namespace sasremap

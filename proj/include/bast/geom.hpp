#pragma once

// Planar primitives for bounded-angle (2pi/3) spanning tree construction:
// the four-region partition induced by an ordered segment, the three basic
// transmission cones of a vertex with respect to its matching partner, and
// the angular feasibility predicates built on top of them.
//
// Conventions used throughout:
//   * all region and cone containment tests are closed;
//   * cone queries apply one global angular tolerance (angular_tol);
//   * region R1 of the ordered pair (u, v) is the closed wedge with apex u,
//     half-angle pi/3, whose axis extends the segment backwards beyond u;
//     R3 is the mirror wedge beyond v; R2 is the remainder strictly to the
//     left of the directed line u->v (plus the open segment uv); R4 is the
//     remainder strictly to the right.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "bast/error.hpp"

namespace bast {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Transmission cones span 2pi/3, so their half-angle equals pi/3. The side
// wedges of the partition share the same half-angle; that is what makes the
// basic cone containing a full side region unique.
inline constexpr double cone_half_angle = std::numbers::pi / 3.0;

// Global angular tolerance, in radians, for cone containment and coverage.
inline constexpr double angular_tol = 1e-9;

// Distance below which two points of an instance count as duplicates.
inline constexpr double duplicate_tolerance(double diameter) { return 1e-12 * diameter; }

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, const Point& p) { return {s * p.x, s * p.y}; }
inline double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point& p) { return std::hypot(p.x, p.y); }
inline double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline bool finite_point(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline double normalize_angle(double t) {
  t = std::fmod(t, two_pi);
  if (t < 0.0) t += two_pi;
  if (t >= two_pi) t = 0.0;
  return t;
}

// A bearing in the plane, kept normalized to [0, 2pi).
struct Direction {
  double theta = 0.0;

  static Direction from_radians(double t) { return Direction{normalize_angle(t)}; }
  Direction rotated(double delta) const { return from_radians(theta + delta); }
  Point unit() const { return {std::cos(theta), std::sin(theta)}; }
  friend bool operator==(const Direction&, const Direction&) = default;
};

// Smallest absolute angle between two bearings, in [0, pi]. Inputs need not
// be normalized.
inline double angular_distance(double a, double b) {
  return std::fabs(std::remainder(a - b, two_pi));
}

inline double angular_distance(Direction a, Direction b) {
  return angular_distance(a.theta, b.theta);
}

inline Direction direction(const Point& from, const Point& to, double min_separation = 0.0) {
  const double d = distance(from, to);
  if (d == 0.0 || d <= min_separation)
    throw Error(ErrorCode::CoincidentPoints, "direction of a degenerate segment");
  return Direction{normalize_angle(std::atan2(to.y - from.y, to.x - from.x))};
}

enum class RegionId { R1, R2, R3, R4 };

inline bool is_side_region(RegionId r) { return r == RegionId::R1 || r == RegionId::R3; }
inline bool is_center_region(RegionId r) { return r == RegionId::R2 || r == RegionId::R4; }

// Region id of q under (u, v) maps to its id under (v, u) by R1<->R3, R2<->R4.
inline RegionId relabeled(RegionId r) {
  switch (r) {
    case RegionId::R1: return RegionId::R3;
    case RegionId::R2: return RegionId::R4;
    case RegionId::R3: return RegionId::R1;
    case RegionId::R4: return RegionId::R2;
  }
  return RegionId::R2;
}

inline const char* region_name(RegionId r) {
  switch (r) {
    case RegionId::R1: return "R1";
    case RegionId::R2: return "R2";
    case RegionId::R3: return "R3";
    case RegionId::R4: return "R4";
  }
  return "?";
}

// Closed wedge with the given apex and axis bearing, half-angle pi/3. The
// apex itself belongs to the wedge.
inline bool wedge_contains(const Point& apex, double axis, const Point& q) {
  if (q == apex) return true;
  return angular_distance(direction(apex, q).theta, axis) <= cone_half_angle;
}

// The side region owned by `apex` in the pair {apex, other}: the closed wedge
// whose axis extends the segment onward beyond `apex`, away from `other`.
inline bool side_region_contains(const Point& apex, const Point& other, const Point& q) {
  return wedge_contains(apex, direction(apex, other).theta + pi, q);
}

inline RegionId classify_region(const Point& u, const Point& v, const Point& q) {
  if (u == v) throw Error(ErrorCode::DegenerateSegment, "partition of a degenerate segment");
  if (q == u || q == v) throw Error(ErrorCode::DuplicatePoint, "query point equals a partition endpoint");
  const double th = direction(u, v).theta;
  if (wedge_contains(u, th + pi, q)) return RegionId::R1;
  if (wedge_contains(v, th, q)) return RegionId::R3;
  const double cr = cross(v - u, q - u);
  if (cr > 0.0) return RegionId::R2;
  if (cr < 0.0) return RegionId::R4;
  return RegionId::R2;  // on the open segment uv, assigned to R2 by convention
}

// Up and Down are the two basic orientations whose cone boundary passes
// through the partner; Center points straight at it.
enum class ConeKind { Up, Down, Center };

// Bisector offset of each basic cone from the bearing toward the partner.
inline constexpr double kind_offset(ConeKind k) {
  switch (k) {
    case ConeKind::Up: return cone_half_angle;
    case ConeKind::Down: return -cone_half_angle;
    case ConeKind::Center: return 0.0;
  }
  return 0.0;
}

inline const char* cone_kind_name(ConeKind k) {
  switch (k) {
    case ConeKind::Up: return "up";
    case ConeKind::Down: return "down";
    case ConeKind::Center: return "center";
  }
  return "?";
}

// A transmission cone: apex plus bisector bearing, total opening 2pi/3.
struct Cone {
  Point apex;
  Direction bisector;
  friend bool operator==(const Cone&, const Cone&) = default;
};

// The basic cone of u with respect to v. Center's bisector points at v and
// the cone contains all of region R3 of (u, v); Up is rotated +pi/3 and
// contains all of R2; Down is rotated -pi/3 and contains all of R4. Each of
// the three contains v itself.
inline Cone basic_cone(const Point& u, const Point& v, ConeKind kind) {
  return {u, Direction::from_radians(direction(u, v).theta + kind_offset(kind))};
}

inline bool cone_contains(const Cone& c, const Point& q) {
  if (q == c.apex) throw Error(ErrorCode::ApexQuery, "containment query at the cone apex");
  return angular_distance(direction(c.apex, q).theta, c.bisector.theta) <= cone_half_angle + angular_tol;
}

// Whether some basic cone of `a` (with respect to `partner`) contains q.
// The union of the three basic cones misses exactly the open wedge opposite
// the partner, i.e. the strict interior of region R1 of (a, partner).
inline bool can_cover(const Point& a, const Point& partner, const Point& q) {
  if (a == partner) throw Error(ErrorCode::DegenerateSegment, "coverage for a degenerate pair");
  if (q == a) throw Error(ErrorCode::ApexQuery, "coverage query at the vertex itself");
  if (q == partner) return true;
  const double away = direction(a, partner).theta + pi;
  return angular_distance(direction(a, q).theta, away) >= cone_half_angle - angular_tol;
}

inline bool mutual_edge_possible(const Point& a, const Point& partner_a,
                                 const Point& b, const Point& partner_b) {
  return can_cover(a, partner_a, b) && can_cover(b, partner_b, a);
}

// Smallest angle of a cone (of any opening) containing all given bearings:
// 2pi minus the largest circular gap between consecutive sorted bearings.
inline double angular_span(std::vector<double> dirs) {
  if (dirs.empty()) throw Error(ErrorCode::EmptyInput, "angular span of an empty set");
  if (dirs.size() == 1) return 0.0;
  for (double& t : dirs) t = normalize_angle(t);
  std::sort(dirs.begin(), dirs.end());
  double max_gap = dirs.front() + two_pi - dirs.back();
  for (std::size_t i = 1; i < dirs.size(); ++i) max_gap = std::max(max_gap, dirs[i] - dirs[i - 1]);
  return two_pi - max_gap;
}

inline double angular_span(const std::vector<Direction>& dirs) {
  std::vector<double> raw;
  raw.reserve(dirs.size());
  for (const Direction& d : dirs) raw.push_back(d.theta);
  return angular_span(std::move(raw));
}

}  // namespace bast

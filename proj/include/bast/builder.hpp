#pragma once

// Construction of a bounded-angle spanning tree from a path: pick the
// lighter alternating matching, patch odd endpoints with virtual twins,
// orient every vertex through three phases, extract the matching edges plus
// one connector per consecutive pair, and finally strip the virtual twins.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bast/geom.hpp"
#include "bast/orientation.hpp"

namespace bast {

enum class MatchingForce { Auto, First, Second };
enum class Phase2Mode { TwoRound, Reference };
enum class ConnectorPolicy { Shortest, First };

// Which alternating matching of the path was selected: the one starting at
// the first path edge (odd positions) or at the second (even positions).
enum class MatchingChoice { OddStart, EvenStart };

struct BuildOptions {
  MatchingForce force = MatchingForce::Auto;
  Phase2Mode phase2_mode = Phase2Mode::TwoRound;
  ConnectorPolicy connector_policy = ConnectorPolicy::Shortest;
};

// A polygonal path given by its vertices in order.
struct PathInstance {
  std::vector<Point> points;
};

inline double path_weight(const std::vector<Point>& pts) {
  double w = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) w += distance(pts[i - 1], pts[i]);
  return w;
}

inline double instance_diameter(const std::vector<Point>& pts) {
  double lo_x = pts.front().x, hi_x = lo_x, lo_y = pts.front().y, hi_y = lo_y;
  for (const Point& p : pts) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  return std::hypot(hi_x - lo_x, hi_y - lo_y);
}

inline void validate_path(const PathInstance& path) {
  if (path.points.size() < 2)
    throw Error(ErrorCode::PathTooShort, "a path needs at least two points");
  for (const Point& p : path.points)
    if (!finite_point(p)) throw Error(ErrorCode::NonFiniteCoordinate, "path point is not finite");
  std::vector<Point> sorted = path.points;
  std::sort(sorted.begin(), sorted.end(),
            [](const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1])
      throw Error(ErrorCode::DuplicatePoint, "path contains a repeated point");
  const double tol = duplicate_tolerance(instance_diameter(path.points));
  for (std::size_t i = 1; i < path.points.size(); ++i)
    if (distance(path.points[i - 1], path.points[i]) <= tol)
      throw Error(ErrorCode::CoincidentPoints, "consecutive path points nearly coincide");
}

// The alternating matching chosen from the path, still without virtual
// patches: `edges` in path order, `unmatched` lists the path endpoints left
// uncovered (0, 1 or 2 of them).
struct MatchingSequence {
  MatchingChoice choice = MatchingChoice::OddStart;
  std::vector<MatchingEdge> edges;
  std::vector<int> unmatched;
  double weight = 0.0;
};

inline MatchingSequence select_matching(const PathInstance& path, MatchingForce force) {
  const int n = static_cast<int>(path.points.size());
  auto make = [&](MatchingChoice choice) {
    MatchingSequence m;
    m.choice = choice;
    const int start = choice == MatchingChoice::OddStart ? 0 : 1;
    if (start == 1) m.unmatched.push_back(0);
    int i = start;
    for (; i + 1 < n; i += 2) {
      m.edges.push_back({i, i + 1});
      m.weight += distance(path.points[i], path.points[i + 1]);
    }
    if (i < n) m.unmatched.push_back(i);
    return m;
  };
  MatchingSequence x = make(MatchingChoice::OddStart);
  MatchingSequence y = make(MatchingChoice::EvenStart);
  switch (force) {
    case MatchingForce::First: return x;
    case MatchingForce::Second:
      if (y.edges.empty())
        throw Error(ErrorCode::EmptyMatching, "the second alternating matching is empty");
      return y;
    case MatchingForce::Auto: break;
  }
  if (y.edges.empty()) return x;
  return y.weight < x.weight ? y : x;
}

// One virtual patch: `real_vertex` is the uncovered path endpoint,
// `virtual_vertex` its freshly added twin, and `matching_edge` the index (in
// the final sequence) of the edge {real, virtual}.
struct VirtualEntry {
  int real_vertex = -1;
  int virtual_vertex = -1;
  int matching_edge = -1;
  double epsilon = 0.0;
};

struct AugmentedInstance {
  std::vector<Point> points;  // path points first, virtual twins appended
  int real_count = 0;
  std::vector<MatchingEdge> edges;  // full sequence including virtual edges
  MatchingChoice choice = MatchingChoice::OddStart;
  std::vector<VirtualEntry> virtuals;
};

namespace detail {

// Nudge bearing that keeps a point strictly inside its current region of
// the adjacent matching edge (u, v): along the wedge axis inside a side
// region, perpendicular to the segment inside a center region.
inline double stabilizing_bearing(RegionId r, double theta_uv) {
  switch (r) {
    case RegionId::R1: return theta_uv + pi;
    case RegionId::R3: return theta_uv;
    case RegionId::R2: return theta_uv + pi / 2.0;
    case RegionId::R4: return theta_uv - pi / 2.0;
  }
  return theta_uv;
}

inline Point virtual_twin(const Point& p, const Point& u, const Point& v) {
  const double eps0 = 1e-9 * std::min({distance(p, u), distance(p, v), distance(u, v)});
  const RegionId home = classify_region(u, v, p);
  const double bearing = stabilizing_bearing(home, direction(u, v).theta);
  const Point step = Direction::from_radians(bearing).unit();
  for (double eps : {eps0, eps0 / 1000.0}) {
    const Point q = p + eps * step;
    if (q != p && classify_region(u, v, q) == home) return q;
  }
  throw Error(ErrorCode::AugmentationFailed, "virtual twin left its home region");
}

}  // namespace detail

inline AugmentedInstance augment_virtual(const PathInstance& path, const MatchingSequence& matching) {
  AugmentedInstance out;
  out.points = path.points;
  out.real_count = static_cast<int>(path.points.size());
  out.choice = matching.choice;
  out.edges = matching.edges;
  if (out.edges.empty()) throw Error(ErrorCode::EmptyMatching, "matching has no edges");
  for (int p : matching.unmatched) {
    const bool at_start = p == 0;
    const MatchingEdge adj = at_start ? matching.edges.front() : matching.edges.back();
    const Point& u = path.points[adj.first];
    const Point& v = path.points[adj.second];
    if (path.points[p] == u || path.points[p] == v)
      throw Error(ErrorCode::AugmentationFailed, "unmatched endpoint coincides with the adjacent edge");
    const Point twin = detail::virtual_twin(path.points[p], u, v);
    const int tid = static_cast<int>(out.points.size());
    out.points.push_back(twin);
    VirtualEntry entry{p, tid, -1, distance(path.points[p], twin)};
    if (at_start) {
      out.edges.insert(out.edges.begin(), MatchingEdge{tid, p});
      entry.matching_edge = 0;
      for (VirtualEntry& prev : out.virtuals) prev.matching_edge += 1;
    } else {
      out.edges.push_back(MatchingEdge{p, tid});
      entry.matching_edge = static_cast<int>(out.edges.size()) - 1;
    }
    out.virtuals.push_back(entry);
  }
  return out;
}

// ---------------------------------------------------------------------------
// First phase: orient a vertex toward its partner whenever an adjacent
// matching edge already sits inside its partner's side region in one of the
// two recognized configurations.

namespace detail {

// Trigger test for endpoint `a` (partner `b`) of one matching edge against
// the two endpoints {x, y} of an adjacent one. Returns which condition
// fires, preferring the first.
inline std::optional<TriggerCondition> phase1_trigger(const Point& a, const Point& b,
                                                      const Point& x, const Point& y) {
  // b's side region in the pair {a, b} is the wedge at b pointing onward
  // along a->b, so its axis is the bearing from a to b.
  const double th_ab = direction(a, b).theta;
  const bool x_side = wedge_contains(b, th_ab, x);
  const bool y_side = wedge_contains(b, th_ab, y);
  if (x_side || y_side) {
    const double th_xy = direction(x, y).theta;
    if ((x_side && wedge_contains(y, th_xy, a)) || (y_side && wedge_contains(x, th_xy + pi, a)))
      return TriggerCondition::First;
  }
  if (x_side && y_side) return TriggerCondition::Second;
  return std::nullopt;
}

}  // namespace detail

// Examine edge `e_idx` against the adjacent edge `f_idx`; orients at most
// one endpoint of e (center, toward its partner).
inline void phase1_examine(OrientationState& s, int e_idx, int f_idx) {
  const MatchingEdge& e = s.edges()[e_idx];
  const MatchingEdge& f = s.edges()[f_idx];
  const Point& x = s.point(f.first);
  const Point& y = s.point(f.second);
  const auto hit_u = detail::phase1_trigger(s.point(e.first), s.point(e.second), x, y);
  const auto hit_v = detail::phase1_trigger(s.point(e.second), s.point(e.first), x, y);
  s.work().phase1_examinations += 1;
  if (hit_u && hit_v)
    throw Error(ErrorCode::AtMostOneViolated,
                "both endpoints of edge " + std::to_string(e_idx) + " triggered against edge " +
                    std::to_string(f_idx));
  if (hit_u) s.assign(e.first, ConeKind::Center, Phase::PhaseI, f_idx, *hit_u, false);
  if (hit_v) s.assign(e.second, ConeKind::Center, Phase::PhaseI, f_idx, *hit_v, false);
}

inline void phase1(OrientationState& s) {
  const int m = static_cast<int>(s.edges().size());
  for (int i = 0; i < m; ++i) {
    if (i > 0) phase1_examine(s, i, i - 1);
    if (i + 1 < m) phase1_examine(s, i, i + 1);
  }
}

// ---------------------------------------------------------------------------
// Second phase: drain all legal operations on consecutive pairs. An
// operation orients one vertex (single) or one vertex per edge (double) so
// that a transmission edge between the two matching edges appears.

struct Operation {
  bool is_double = false;
  int vertex_a = -1;  // on the earlier edge for doubles
  ConeKind kind_a = ConeKind::Center;
  int vertex_b = -1;  // oriented target (single) or co-assignee (double)
  ConeKind kind_b = ConeKind::Center;
  friend bool operator==(const Operation&, const Operation&) = default;
};

namespace detail {

inline constexpr std::array<ConeKind, 3> kind_order = {ConeKind::Center, ConeKind::Up,
                                                       ConeKind::Down};

// Shared enumeration of legal operations on the pair (e, f), in the fixed
// deterministic order; stops after the first hit when `first_only`.
//
// `restricted` applies the second-phase discipline: a vertex may take a
// non-center cone only when its partner is already oriented (doubles pair
// vertices of different edges, so they never relax this), and a vertex is
// blocked entirely when its partner became oriented due to the opposite
// edge.
template <typename Sink>
inline void enumerate_operations(const OrientationState& s, int e_idx, int f_idx, bool restricted,
                                 bool first_only, Sink&& sink) {
  const MatchingEdge& e = s.edges()[e_idx];
  const MatchingEdge& f = s.edges()[f_idx];
  if (connector_exists(s, e, f)) return;

  auto blocked = [&](int v, int due) {
    return restricted && s.oriented_due_to(s.partner(v), due);
  };
  auto kind_allowed = [&](int v, ConeKind k) {
    if (!restricted || k == ConeKind::Center) return true;
    return s.oriented(s.partner(v));
  };

  const std::array<int, 4> verts = {e.first, e.second, f.first, f.second};
  // Singles: orient one vertex toward an already oriented vertex across.
  for (int idx = 0; idx < 4; ++idx) {
    const int a = verts[idx];
    const bool a_on_e = idx < 2;
    const int due = a_on_e ? f_idx : e_idx;
    if (s.oriented(a) || blocked(a, due)) continue;
    const MatchingEdge& opp = a_on_e ? f : e;
    for (ConeKind k : kind_order) {
      if (!kind_allowed(a, k)) continue;
      const Cone ca = s.candidate_cone(a, k);
      for (int b : {opp.first, opp.second}) {
        if (!s.oriented(b)) continue;
        if (!cone_contains(ca, s.point(b)) || !cone_contains(s.cone(b), s.point(a))) continue;
        if (sink(Operation{false, a, k, b, s.orientation(b).kind}) || first_only) return;
      }
    }
  }
  // Doubles: orient one vertex of each edge toward the other.
  for (int a : {e.first, e.second}) {
    if (s.oriented(a) || blocked(a, f_idx)) continue;
    for (int b : {f.first, f.second}) {
      if (s.oriented(b) || blocked(b, e_idx)) continue;
      for (ConeKind ka : kind_order) {
        if (!kind_allowed(a, ka)) continue;
        const Cone ca = s.candidate_cone(a, ka);
        if (!cone_contains(ca, s.point(b))) continue;
        for (ConeKind kb : kind_order) {
          if (!kind_allowed(b, kb)) continue;
          const Cone cb = s.candidate_cone(b, kb);
          if (!cone_contains(cb, s.point(a))) continue;
          if (sink(Operation{true, a, ka, b, kb}) || first_only) return;
        }
      }
    }
  }
}

}  // namespace detail

// All legal second-phase operations on the consecutive pair (e_idx, f_idx),
// in enumeration order. Empty when a connector already exists.
inline std::vector<Operation> legal_operations(const OrientationState& s, int e_idx, int f_idx) {
  std::vector<Operation> ops;
  detail::enumerate_operations(s, e_idx, f_idx, true, false, [&](const Operation& op) {
    ops.push_back(op);
    return false;
  });
  return ops;
}

inline std::optional<Operation> first_legal_operation(const OrientationState& s, int e_idx,
                                                      int f_idx, bool restricted) {
  std::optional<Operation> found;
  detail::enumerate_operations(s, e_idx, f_idx, restricted, true, [&](const Operation& op) {
    found = op;
    return true;
  });
  return found;
}

inline void apply_operation(OrientationState& s, const Operation& op, int e_idx, int f_idx,
                            Phase phase) {
  auto due_of = [&](int v) {
    const int e = s.edge_of(v);
    if (e == e_idx) return f_idx;
    if (e == f_idx) return e_idx;
    throw Error(ErrorCode::AlgorithmInvariantViolation, "operation vertex outside its pair");
  };
  if (op.is_double) {
    s.assign(op.vertex_a, op.kind_a, phase, due_of(op.vertex_a), std::nullopt, true);
    s.assign(op.vertex_b, op.kind_b, phase, due_of(op.vertex_b), std::nullopt, true);
  } else {
    s.assign(op.vertex_a, op.kind_a, phase, due_of(op.vertex_a), std::nullopt, false);
  }
  if (!is_transmission_edge(s, op.vertex_a, op.vertex_b))
    throw Error(ErrorCode::AlgorithmInvariantViolation, "operation failed to create a connector");
}

// No consecutive pair admits a legal operation.
inline bool quiescent(const OrientationState& s) {
  const int m = static_cast<int>(s.edges().size());
  for (int i = 0; i + 1 < m; ++i)
    if (first_legal_operation(s, i, i + 1, true)) return false;
  return true;
}

inline void phase2(OrientationState& s, Phase2Mode mode) {
  const int m = static_cast<int>(s.edges().size());
  auto visit = [&](int i) {
    s.work().phase2_pair_visits += 1;
    const auto op = first_legal_operation(s, i, i + 1, true);
    if (op) apply_operation(s, *op, i, i + 1, Phase::PhaseII);
    return op.has_value();
  };
  if (mode == Phase2Mode::TwoRound) {
    for (int i = 0; i + 1 < m; ++i) visit(i);
    for (int i = m - 2; i >= 0; --i) visit(i);
  } else {
    std::size_t rounds = 0;
    for (;;) {
      bool any = false;
      for (int i = 0; i + 1 < m; ++i) any = visit(i) || any;
      if (!any) break;
      if (++rounds > s.points().size())
        throw Error(ErrorCode::NonTermination, "operation rounds exceeded the vertex count");
    }
  }
  if (!quiescent(s))
    throw Error(ErrorCode::AlgorithmInvariantViolation, "pairs still admit operations after draining");
}

// ---------------------------------------------------------------------------
// Third phase: one forward sweep that guarantees a connector for every
// consecutive pair, then a center fill for all still-unoriented vertices.

inline void phase3(OrientationState& s) {
  const int m = static_cast<int>(s.edges().size());
  for (int i = 0; i + 1 < m; ++i) {
    s.work().phase3_pair_visits += 1;
    const MatchingEdge& e = s.edges()[i];
    const MatchingEdge& f = s.edges()[i + 1];
    if (connector_exists(s, e, f)) {
      for (int v : {e.first, e.second})
        if (!s.oriented(v)) s.assign(v, ConeKind::Center, Phase::PhaseIII, std::nullopt, std::nullopt, false);
      continue;
    }
    const auto op = first_legal_operation(s, i, i + 1, false);
    if (!op)
      throw Error(ErrorCode::AlgorithmInvariantViolation,
                  "pair " + std::to_string(i) + " cannot be connected");
    apply_operation(s, *op, i, i + 1, Phase::PhaseIII);
  }
  for (int v = 0; v < static_cast<int>(s.points().size()); ++v)
    if (!s.oriented(v)) s.assign(v, ConeKind::Center, Phase::Cleanup, std::nullopt, std::nullopt, false);
  for (int i = 0; i + 1 < m; ++i)
    if (!connector_exists(s, s.edges()[i], s.edges()[i + 1]))
      throw Error(ErrorCode::AlgorithmInvariantViolation,
                  "pair " + std::to_string(i) + " lost its connector");
  for (const MatchingEdge& e : s.edges())
    if (!is_transmission_edge(s, e.first, e.second))
      throw Error(ErrorCode::AlgorithmInvariantViolation, "matching edge is not a transmission edge");
}

// ---------------------------------------------------------------------------
// Tree extraction and virtual-twin removal.

struct TreeEdge {
  int a = -1;
  int b = -1;
  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
};

inline double edge_length(const std::vector<Point>& pts, const TreeEdge& e) {
  return distance(pts[e.a], pts[e.b]);
}

struct VertexCone {
  ConeKind kind = ConeKind::Center;
  int partner = -1;
  Direction bisector;
  friend bool operator==(const VertexCone&, const VertexCone&) = default;
};

struct BastResult {
  std::vector<Point> points;
  std::vector<MatchingEdge> matching_edges;
  std::vector<TreeEdge> tree_edges;
  std::vector<TreeEdge> connectors;  // one per consecutive matching pair
  std::vector<VertexCone> cones;
  double tree_weight = 0.0;
  double path_weight = 0.0;
  std::vector<TraceRecord> trace;
  WorkCounters work;
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

inline void check_tree_shape(int n, const std::vector<TreeEdge>& edges) {
  if (static_cast<int>(edges.size()) != n - 1)
    throw Error(ErrorCode::NotATree, "edge count is not one less than the vertex count");
  UnionFind uf(n);
  for (const TreeEdge& e : edges)
    if (!uf.unite(e.a, e.b)) throw Error(ErrorCode::NotATree, "edges form a cycle");
}

}  // namespace detail

inline BastResult extract_tree(const OrientationState& s, ConnectorPolicy policy) {
  BastResult r;
  r.points = s.points();
  r.matching_edges = s.edges();
  for (const MatchingEdge& e : s.edges()) r.tree_edges.push_back({e.first, e.second});
  const int m = static_cast<int>(s.edges().size());
  for (int i = 0; i + 1 < m; ++i) {
    const MatchingEdge& e = s.edges()[i];
    const MatchingEdge& f = s.edges()[i + 1];
    std::optional<TreeEdge> best;
    for (int a : {e.first, e.second}) {
      for (int b : {f.first, f.second}) {
        if (!is_transmission_edge(s, a, b)) continue;
        const TreeEdge cand{a, b};
        if (policy == ConnectorPolicy::First) {
          best = cand;
          break;
        }
        if (!best || edge_length(r.points, cand) < edge_length(r.points, *best)) best = cand;
      }
      if (policy == ConnectorPolicy::First && best) break;
    }
    if (!best)
      throw Error(ErrorCode::AlgorithmInvariantViolation,
                  "pair " + std::to_string(i) + " has no connector to extract");
    r.connectors.push_back(*best);
    r.tree_edges.push_back(*best);
  }
  detail::check_tree_shape(static_cast<int>(r.points.size()), r.tree_edges);
  r.cones.resize(r.points.size());
  for (int v = 0; v < static_cast<int>(r.points.size()); ++v) {
    const VertexOrientation& o = s.orientation(v);
    r.cones[v] = {o.kind, o.partner, o.bisector};
  }
  for (const TreeEdge& e : r.tree_edges) r.tree_weight += edge_length(r.points, e);
  r.trace = s.trace();
  r.work = s.work();
  return r;
}

// Remove the virtual twins from an extracted tree. A connector that landed
// on a twin is re-targeted to the twin's real vertex, which is re-oriented
// straight at the connector's far endpoint; the far endpoint's cone must
// already contain the real vertex.
inline void devirtualize(BastResult& r, OrientationState& s, const AugmentedInstance& aug) {
  for (const VirtualEntry& entry : aug.virtuals) {
    const int p = entry.real_vertex;
    const int t = entry.virtual_vertex;
    std::erase(r.tree_edges, TreeEdge{t, p});
    std::erase(r.tree_edges, TreeEdge{p, t});
    std::vector<TreeEdge*> incident;
    for (TreeEdge& e : r.tree_edges)
      if (e.a == t || e.b == t) incident.push_back(&e);
    if (incident.size() > 1)
      throw Error(ErrorCode::AlgorithmInvariantViolation, "virtual twin has several connectors");
    if (!incident.empty()) {
      TreeEdge& conn = *incident.front();
      const int w = conn.a == t ? conn.b : conn.a;
      if (!cone_contains(s.cone(w), s.point(p)))
        throw Error(ErrorCode::DevirtualizeFailed,
                    "re-targeted connector escapes the far endpoint's cone");
      conn = {conn.a == t ? p : conn.a, conn.b == t ? p : conn.b};
      s.repoint(p, w);
      for (TreeEdge& c : r.connectors)
        if (c.a == t || c.b == t) c = {c.a == t ? p : c.a, c.b == t ? p : c.b};
      if (!is_transmission_edge(s, p, w))
        throw Error(ErrorCode::DevirtualizeFailed, "re-targeted connector is not a transmission edge");
    } else {
      std::erase_if(r.connectors, [&](const TreeEdge& c) { return c.a == t || c.b == t; });
    }
  }
  std::erase_if(r.matching_edges, [&](const MatchingEdge& e) {
    return e.first >= aug.real_count || e.second >= aug.real_count;
  });
  r.points.resize(aug.real_count);
  r.cones.resize(aug.real_count);
  for (const VirtualEntry& entry : aug.virtuals) {
    const VertexOrientation& o = s.orientation(entry.real_vertex);
    // A real vertex whose twin vanished without a re-target keeps its cone
    // but is no longer matched to anything.
    const int partner = o.partner < aug.real_count ? o.partner : -1;
    r.cones[entry.real_vertex] = {o.kind, partner, o.bisector};
  }
  detail::check_tree_shape(aug.real_count, r.tree_edges);
  r.tree_weight = 0.0;
  for (const TreeEdge& e : r.tree_edges) r.tree_weight += edge_length(r.points, e);
  r.trace = s.trace();
}

inline BastResult build_tree_from_path(const PathInstance& path, const BuildOptions& options = {}) {
  validate_path(path);
  const MatchingSequence matching = select_matching(path, options.force);
  const AugmentedInstance aug = augment_virtual(path, matching);
  OrientationState s(aug.points, aug.edges);
  phase1(s);
  phase2(s, options.phase2_mode);
  phase3(s);
  BastResult r = extract_tree(s, options.connector_policy);
  devirtualize(r, s, aug);
  r.path_weight = path_weight(path.points);
  return r;
}

}  // namespace bast

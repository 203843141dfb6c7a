#pragma once

// Orientation bookkeeping shared by the three construction phases: which
// vertices hold which basic cone, why each assignment happened, and the
// trace/work counters used by the verification suite.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bast/geom.hpp"

namespace bast {

enum class Phase { PhaseI, PhaseII, PhaseIII, Cleanup, Devirtualize };

inline const char* phase_name(Phase p) {
  switch (p) {
    case Phase::PhaseI: return "phase1";
    case Phase::PhaseII: return "phase2";
    case Phase::PhaseIII: return "phase3";
    case Phase::Cleanup: return "cleanup";
    case Phase::Devirtualize: return "devirtualize";
  }
  return "?";
}

// Which of the two first-phase trigger conditions fired.
enum class TriggerCondition { First, Second };

inline const char* trigger_name(TriggerCondition c) {
  return c == TriggerCondition::First ? "first" : "second";
}

// Why a vertex was oriented. `due_edge` is the index (into the matching
// sequence) of the opposite edge whose examination caused the assignment;
// it is absent for cleanup fills and devirtualization rewrites.
struct Provenance {
  Phase phase = Phase::PhaseI;
  std::optional<int> due_edge;
  std::optional<TriggerCondition> condition;
  bool simultaneous = false;  // part of a double operation
};

struct TraceRecord {
  Phase phase = Phase::PhaseI;
  int vertex = -1;
  ConeKind kind = ConeKind::Center;
  int partner = -1;
  std::optional<int> due_edge;
  std::optional<TriggerCondition> condition;
  bool simultaneous = false;
};

struct VertexOrientation {
  ConeKind kind = ConeKind::Center;
  int partner = -1;
  Direction bisector;  // cached at assignment time
  std::vector<Provenance> history;
};

// An edge of the matching sequence; `first` precedes `second` along the path.
struct MatchingEdge {
  int first = -1;
  int second = -1;
  friend bool operator==(const MatchingEdge&, const MatchingEdge&) = default;
};

struct WorkCounters {
  std::uint64_t phase1_examinations = 0;
  std::uint64_t phase2_pair_visits = 0;
  std::uint64_t phase3_pair_visits = 0;

  std::uint64_t total() const {
    return phase1_examinations + phase2_pair_visits + phase3_pair_visits;
  }
};

// Mutable orientation state over a fixed point set and matching sequence.
// Assignments are permanent: a second assignment to the same vertex is legal
// only during the first phase and only when it repeats the same cone kind
// (the provenance list then records both triggers).
class OrientationState {
 public:
  OrientationState(std::vector<Point> points, std::vector<MatchingEdge> edges)
      : points_(std::move(points)), edges_(std::move(edges)), partner_(points_.size(), -1),
        edge_of_(points_.size(), -1), partner_theta_(points_.size(), 0.0) {
    orientation_.resize(points_.size());
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
      const MatchingEdge& e = edges_[i];
      partner_[e.first] = e.second;
      partner_[e.second] = e.first;
      edge_of_[e.first] = i;
      edge_of_[e.second] = i;
      const double th = direction(points_[e.first], points_[e.second]).theta;
      partner_theta_[e.first] = th;
      partner_theta_[e.second] = normalize_angle(th + pi);
    }
  }

  const std::vector<Point>& points() const { return points_; }
  const std::vector<MatchingEdge>& edges() const { return edges_; }
  const Point& point(int v) const { return points_[v]; }

  int partner(int v) const {
    if (partner_[v] < 0) throw Error(ErrorCode::InvalidConfig, "vertex has no matching partner");
    return partner_[v];
  }

  int edge_of(int v) const {
    if (edge_of_[v] < 0) throw Error(ErrorCode::InvalidConfig, "vertex lies on no matching edge");
    return edge_of_[v];
  }

  // Bearing from v toward its matching partner (cached).
  double partner_theta(int v) const {
    partner(v);  // partnerless vertices are a configuration error
    return partner_theta_[v];
  }

  // The basic cone v would get from `kind`, without assigning it.
  Cone candidate_cone(int v, ConeKind kind) const {
    return {points_[v], Direction::from_radians(partner_theta(v) + kind_offset(kind))};
  }

  bool oriented(int v) const { return orientation_[v].has_value(); }

  const VertexOrientation& orientation(int v) const {
    if (!orientation_[v]) throw Error(ErrorCode::UnorientedVertex, "orientation of an unoriented vertex");
    return *orientation_[v];
  }

  Cone cone(int v) const {
    const VertexOrientation& o = orientation(v);
    return {points_[v], o.bisector};
  }

  // Whether v is already oriented because of the examination of edge `e`
  // (in any phase). Used by the no-double-tapping rule.
  bool oriented_due_to(int v, int e) const {
    if (!orientation_[v]) return false;
    for (const Provenance& p : orientation_[v]->history)
      if (p.due_edge && *p.due_edge == e) return true;
    return false;
  }

  // Assign the basic cone `kind` (toward the matching partner) to vertex v.
  // Enforces the standing contracts: no re-orientation with a different
  // kind; during the first two phases a vertex may take a non-center cone
  // only if its partner is already oriented. Double operations pair vertices
  // of different matching edges, so they never waive the center rule; the
  // simultaneous flag is provenance only.
  void assign(int v, ConeKind kind, Phase phase, std::optional<int> due_edge,
              std::optional<TriggerCondition> condition, bool simultaneous) {
    const int p = partner(v);
    if (orientation_[v]) {
      const bool retrigger = phase == Phase::PhaseI && orientation_[v]->phaseI() &&
                             orientation_[v]->kind == kind;
      if (!retrigger)
        throw Error(ErrorCode::ReorientAttempt, "vertex " + std::to_string(v) + " is already oriented");
      orientation_[v]->history.push_back({phase, due_edge, condition, simultaneous});
      trace_.push_back({phase, v, kind, p, due_edge, condition, simultaneous});
      return;
    }
    if ((phase == Phase::PhaseI || phase == Phase::PhaseII) && kind != ConeKind::Center &&
        !oriented(p))
      throw Error(ErrorCode::NonCenterFirst,
                  "non-center cone at vertex " + std::to_string(v) + " before its partner");
    StoredOrientation o;
    o.kind = kind;
    o.partner = p;
    o.bisector = Direction::from_radians(partner_theta_[v] + kind_offset(kind));
    o.history.push_back({phase, due_edge, condition, simultaneous});
    orientation_[v] = std::move(o);
    trace_.push_back({phase, v, kind, p, due_edge, condition, simultaneous});
  }

  // Devirtualization rewrite: re-point a real vertex's center cone at a new
  // partner after its virtual twin is removed. Bypasses the re-orientation
  // guard on purpose; callers re-validate the resulting tree.
  void repoint(int v, int new_partner) {
    if (!orientation_[v]) throw Error(ErrorCode::UnorientedVertex, "repoint of an unoriented vertex");
    orientation_[v]->kind = ConeKind::Center;
    orientation_[v]->partner = new_partner;
    orientation_[v]->bisector = direction(points_[v], points_[new_partner]);
    orientation_[v]->history.push_back({Phase::Devirtualize, std::nullopt, std::nullopt, false});
    trace_.push_back({Phase::Devirtualize, v, ConeKind::Center, new_partner, std::nullopt,
                      std::nullopt, false});
  }

  const std::vector<TraceRecord>& trace() const { return trace_; }
  WorkCounters& work() { return work_; }
  const WorkCounters& work() const { return work_; }

 private:
  struct StoredOrientation : VertexOrientation {
    bool phaseI() const {
      return !history.empty() && history.front().phase == Phase::PhaseI;
    }
  };

  std::vector<Point> points_;
  std::vector<MatchingEdge> edges_;
  std::vector<int> partner_;
  std::vector<int> edge_of_;
  std::vector<double> partner_theta_;
  std::vector<std::optional<StoredOrientation>> orientation_;
  std::vector<TraceRecord> trace_;
  WorkCounters work_;
};

// An unordered pair {a, b} is a transmission edge when both endpoints are
// oriented and each one's cone contains the other.
inline bool is_transmission_edge(const OrientationState& s, int a, int b) {
  if (!s.oriented(a) || !s.oriented(b))
    throw Error(ErrorCode::UnorientedVertex, "transmission test with an unoriented endpoint");
  return cone_contains(s.cone(a), s.point(b)) && cone_contains(s.cone(b), s.point(a));
}

// A connector between consecutive matching edges e and f: a transmission
// edge with one endpoint on each.
inline bool connector_exists(const OrientationState& s, const MatchingEdge& e, const MatchingEdge& f) {
  for (int a : {e.first, e.second}) {
    if (!s.oriented(a)) continue;
    for (int b : {f.first, f.second}) {
      if (!s.oriented(b)) continue;
      if (is_transmission_edge(s, a, b)) return true;
    }
  }
  return false;
}

inline bool connector_exists(const OrientationState& s, int e_idx, int f_idx) {
  return connector_exists(s, s.edges()[e_idx], s.edges()[f_idx]);
}

// The full transmission graph induced by an all-oriented state. Quadratic;
// meant for verification, never for construction.
struct TransmissionGraph {
  std::vector<Point> vertices;
  std::vector<std::pair<int, int>> edges;  // a < b
  std::vector<Cone> cones;
};

inline TransmissionGraph transmission_graph(const OrientationState& s) {
  const int n = static_cast<int>(s.points().size());
  TransmissionGraph g;
  g.vertices = s.points();
  g.cones.reserve(n);
  for (int v = 0; v < n; ++v) g.cones.push_back(s.cone(v));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (cone_contains(g.cones[a], g.vertices[b]) && cone_contains(g.cones[b], g.vertices[a]))
        g.edges.emplace_back(a, b);
  return g;
}

}  // namespace bast

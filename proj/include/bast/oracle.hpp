#pragma once

// Ground truth and verification: exhaustive minimum-weight bounded-angle
// tree search on small instances (all labeled spanning trees via Pruefer
// decoding), guarantee checkers for built trees, and canonical instance
// generators for tests and benchmarks.

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bast/builder.hpp"
#include "bast/geom.hpp"

namespace bast {

struct OracleConfig {
  double alpha = 2.0 * pi / 3.0;
  int max_n = 9;
};

inline void validate(const OracleConfig& cfg) {
  if (!(cfg.alpha >= pi / 3.0 && cfg.alpha < two_pi))
    throw Error(ErrorCode::InvalidConfig, "alpha outside [pi/3, 2pi)");
  if (cfg.max_n < 2) throw Error(ErrorCode::InvalidConfig, "oracle cap below 2");
}

struct OracleResult {
  double optimal_weight = 0.0;
  std::vector<TreeEdge> edges;  // one optimal tree, normalized order
  std::uint64_t trees_examined = 0;
  std::uint64_t feasible_count = 0;
};

namespace detail {

// Classic linear Pruefer decode; the empty sequence yields the single edge
// on two vertices.
inline void prufer_decode(int n, const std::vector<int>& seq, std::vector<TreeEdge>& out) {
  out.clear();
  std::vector<int> deg(n, 1);
  for (int v : seq) deg[v] += 1;
  int ptr = 0;
  while (deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int v : seq) {
    out.push_back({leaf, v});
    if (--deg[v] == 1 && v < ptr) {
      leaf = v;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  out.push_back({leaf, n - 1});
}

}  // namespace detail

// Visit every labeled spanning tree on n vertices exactly once (n^(n-2) of
// them) in Pruefer-sequence odometer order.
template <typename Callback>
inline std::uint64_t enumerate_spanning_trees(int n, int max_n, Callback&& cb) {
  if (n < 2 || n > max_n)
    throw Error(ErrorCode::TooLarge, "tree enumeration supports 2 <= n <= " + std::to_string(max_n));
  std::vector<int> seq(n - 2, 0);
  std::vector<TreeEdge> edges;
  std::uint64_t count = 0;
  for (;;) {
    detail::prufer_decode(n, seq, edges);
    cb(edges);
    count += 1;
    int i = static_cast<int>(seq.size()) - 1;
    while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
    if (i < 0) break;
    seq[i] += 1;
  }
  return count;
}

// Whether every vertex of the tree sees its incident edges within an angle
// of at most alpha (plus the global tolerance).
inline bool tree_alpha_feasible(const std::vector<Point>& points, const std::vector<TreeEdge>& edges,
                                double alpha) {
  const int n = static_cast<int>(points.size());
  detail::check_tree_shape(n, edges);
  std::vector<std::vector<double>> incident(n);
  for (const TreeEdge& e : edges) {
    incident[e.a].push_back(direction(points[e.a], points[e.b]).theta);
    incident[e.b].push_back(direction(points[e.b], points[e.a]).theta);
  }
  for (int v = 0; v < n; ++v)
    if (angular_span(incident[v]) > alpha + angular_tol) return false;
  return true;
}

// Exhaustive minimum-weight search over all labeled spanning trees, keeping
// only those whose per-vertex span fits in alpha. Ties break toward the
// lexicographically smaller normalized edge list, so the result does not
// depend on enumeration order.
inline OracleResult alpha_mst_bruteforce(const std::vector<Point>& points,
                                         const OracleConfig& cfg = {}) {
  validate(cfg);
  const int n = static_cast<int>(points.size());
  if (n < 2 || n > cfg.max_n)
    throw Error(ErrorCode::TooLarge,
                "oracle supports 2 <= n <= " + std::to_string(cfg.max_n) + " points");
  // Precomputed bearings and lengths make the per-tree span check cheap.
  std::vector<std::vector<double>> bearing(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> length(n, std::vector<double>(n, 0.0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) {
        bearing[a][b] = direction(points[a], points[b]).theta;
        length[a][b] = distance(points[a], points[b]);
      }
  auto normalize = [](std::vector<TreeEdge> edges) {
    for (TreeEdge& e : edges)
      if (e.a > e.b) std::swap(e.a, e.b);
    std::sort(edges.begin(), edges.end(),
              [](const TreeEdge& l, const TreeEdge& r) { return l.a < r.a || (l.a == r.a && l.b < r.b); });
    return edges;
  };
  auto lex_less = [](const std::vector<TreeEdge>& l, const std::vector<TreeEdge>& r) {
    for (std::size_t i = 0; i < l.size() && i < r.size(); ++i) {
      if (l[i].a != r[i].a) return l[i].a < r[i].a;
      if (l[i].b != r[i].b) return l[i].b < r[i].b;
    }
    return l.size() < r.size();
  };
  OracleResult res;
  std::vector<std::vector<double>> incident(n);
  const std::uint64_t total = enumerate_spanning_trees(n, cfg.max_n, [&](const std::vector<TreeEdge>& edges) {
    for (auto& dirs : incident) dirs.clear();
    double w = 0.0;
    for (const TreeEdge& e : edges) {
      incident[e.a].push_back(bearing[e.a][e.b]);
      incident[e.b].push_back(bearing[e.b][e.a]);
      w += length[e.a][e.b];
    }
    for (int v = 0; v < n; ++v)
      if (angular_span(incident[v]) > cfg.alpha + angular_tol) return;
    res.feasible_count += 1;
    if (res.feasible_count == 1 || w < res.optimal_weight) {
      res.optimal_weight = w;
      res.edges = normalize(edges);
      return;
    }
    if (w == res.optimal_weight) {
      std::vector<TreeEdge> cand = normalize(edges);
      if (lex_less(cand, res.edges)) res.edges = std::move(cand);
    }
  });
  res.trees_examined = total;
  if (res.feasible_count == 0)
    throw Error(ErrorCode::InfeasibleUnexpected, "no feasible tree found (cannot happen for alpha >= pi/3)");
  return res;
}

// Breadth-first hop distance between a and b, capped at k.
inline bool hop_distance_ok(int n, const std::vector<TreeEdge>& edges, int a, int b, int k) {
  if (a == b) return true;
  std::vector<std::vector<int>> adj(n);
  for (const TreeEdge& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<int> dist(n, -1);
  std::deque<int> queue = {a};
  dist[a] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (dist[u] >= k) break;
    for (int w : adj[u]) {
      if (dist[w] >= 0) continue;
      dist[w] = dist[u] + 1;
      if (w == b) return dist[w] <= k;
      queue.push_back(w);
    }
  }
  return dist[b] >= 0 && dist[b] <= k;
}

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool pass() const {
    for (const CheckResult& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const CheckResult* find(const std::string& name) const {
    for (const CheckResult& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// Re-derive every guarantee of a built tree from scratch: shape, per-vertex
// spans, transmission edges under the recorded cones, recorded against
// recomputed weight, the weight bound against the path, the 3-hop property
// for path edges, and (when a minimum-spanning-tree weight is supplied) the
// 4x corollary chain.
inline VerificationReport verify_result(const PathInstance& path, const BastResult& r,
                                        std::optional<double> mst_weight = std::nullopt) {
  VerificationReport rep;
  auto add = [&](std::string name, bool pass, std::string detail) {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  const int n = static_cast<int>(r.points.size());

  bool same = r.points.size() == path.points.size();
  for (int i = 0; same && i < n; ++i) same = r.points[i] == path.points[i];
  add("same_points", same, same ? "" : "result points differ from the instance");
  if (!same) return rep;

  bool shape = true;
  std::string shape_detail;
  try {
    detail::check_tree_shape(n, r.tree_edges);
  } catch (const Error& e) {
    shape = false;
    shape_detail = e.what();
  }
  add("tree_shape", shape, shape_detail);
  if (!shape) return rep;

  std::vector<std::vector<double>> incident(n);
  for (const TreeEdge& e : r.tree_edges) {
    incident[e.a].push_back(direction(r.points[e.a], r.points[e.b]).theta);
    incident[e.b].push_back(direction(r.points[e.b], r.points[e.a]).theta);
  }
  {
    bool ok = true;
    std::string detail_msg;
    for (int v = 0; v < n && ok; ++v) {
      if (incident[v].empty()) continue;
      const double span = angular_span(incident[v]);
      if (span > 2.0 * pi / 3.0 + angular_tol) {
        ok = false;
        std::ostringstream os;
        os << "vertex " << v << " spans " << span << " rad";
        detail_msg = os.str();
      }
    }
    add("vertex_spans", ok, detail_msg);
  }
  {
    bool ok = static_cast<int>(r.cones.size()) == n;
    std::string detail_msg = ok ? "" : "cone list size mismatch";
    for (const TreeEdge& e : r.tree_edges) {
      if (!ok) break;
      const Cone ca{r.points[e.a], r.cones[e.a].bisector};
      const Cone cb{r.points[e.b], r.cones[e.b].bisector};
      if (!cone_contains(ca, r.points[e.b]) || !cone_contains(cb, r.points[e.a])) {
        ok = false;
        std::ostringstream os;
        os << "edge {" << e.a << "," << e.b << "} is not a transmission edge";
        detail_msg = os.str();
      }
    }
    add("transmission_edges", ok, detail_msg);
  }
  double recomputed = 0.0;
  for (const TreeEdge& e : r.tree_edges) recomputed += edge_length(r.points, e);
  {
    const bool ok = std::fabs(recomputed - r.tree_weight) <= 1e-9 * std::max(1.0, recomputed);
    std::ostringstream os;
    os << "recorded " << r.tree_weight << " vs recomputed " << recomputed;
    add("tree_weight_recorded", ok, ok ? "" : os.str());
  }
  const double pw = path_weight(path.points);
  {
    const bool ok = recomputed <= 2.0 * pw + 1e-9;
    std::ostringstream os;
    os << "tree " << recomputed << " vs twice path " << 2.0 * pw;
    add("weight_vs_path", ok, ok ? "" : os.str());
  }
  {
    // One shared adjacency plus a stamped visited array keeps the n-1
    // depth-capped searches linear in the explored balls.
    std::vector<std::vector<int>> adj(n);
    for (const TreeEdge& e : r.tree_edges) {
      adj[e.a].push_back(e.b);
      adj[e.b].push_back(e.a);
    }
    std::vector<int> stamp(n, -1);
    std::vector<int> cur, nxt;
    auto within_three = [&](int a, int b) {
      if (a == b) return true;
      cur.assign(1, a);
      stamp[a] = a;
      for (int depth = 0; depth < 3; ++depth) {
        nxt.clear();
        for (int u : cur)
          for (int w : adj[u]) {
            if (stamp[w] == a) continue;
            if (w == b) return true;
            stamp[w] = a;
            nxt.push_back(w);
          }
        cur.swap(nxt);
      }
      return false;
    };
    bool ok = true;
    std::string detail_msg;
    for (int i = 0; i + 1 < n && ok; ++i) {
      if (!within_three(i, i + 1)) {
        ok = false;
        std::ostringstream os;
        os << "path edge {" << i << "," << i + 1 << "} exceeds 3 hops";
        detail_msg = os.str();
      }
    }
    add("hop_spanner", ok, detail_msg);
  }
  if (mst_weight) {
    {
      const bool ok = recomputed <= 4.0 * *mst_weight + 1e-9;
      std::ostringstream os;
      os << "tree " << recomputed << " vs four times mst " << 4.0 * *mst_weight;
      add("weight_vs_mst", ok, ok ? "" : os.str());
    }
    {
      const bool ok = pw <= 2.0 * *mst_weight + 1e-9;
      std::ostringstream os;
      os << "path " << pw << " vs twice mst " << 2.0 * *mst_weight;
      add("path_vs_mst", ok, ok ? "" : os.str());
    }
  }
  return rep;
}

inline PathInstance collinear_instance(int n, double spacing = 1.0) {
  if (n < 2) throw Error(ErrorCode::PathTooShort, "collinear instance needs at least two points");
  PathInstance p;
  for (int i = 0; i < n; ++i) p.points.push_back({i * spacing, 0.0});
  return p;
}

// Deterministic uniform points in the unit square; the sequence order is
// the path order.
inline PathInstance uniform_instance(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  PathInstance p;
  for (int i = 0; i < n; ++i) p.points.push_back({unit(), unit()});
  return p;
}

}  // namespace bast

#pragma once

// End-to-end approximation pipeline: Euclidean minimum spanning tree, then a
// spanning path by first-visit depth-first order, then the bounded-angle
// tree built from that path. The path doubles the tree weight at most, and
// the builder doubles the path weight at most, giving the 4x bound against
// the unconstrained minimum spanning tree.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "bast/builder.hpp"
#include "bast/geom.hpp"

namespace bast {

struct WeightedTree {
  std::vector<TreeEdge> edges;
  std::vector<double> lengths;  // parallel to edges
  double weight = 0.0;
};

// Dense Prim construction; quadratic, intended for desk-scale inputs.
inline WeightedTree euclidean_mst(const std::vector<Point>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 1) throw Error(ErrorCode::EmptyInput, "minimum spanning tree of an empty set");
  for (const Point& p : points)
    if (!finite_point(p)) throw Error(ErrorCode::NonFiniteCoordinate, "point is not finite");
  WeightedTree t;
  if (n == 1) return t;
  const double dup = duplicate_tolerance(instance_diameter(points));
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<int> from(n, -1);
  std::vector<bool> used(n, false);
  best[0] = 0.0;
  for (int round = 0; round < n; ++round) {
    int u = -1;
    for (int i = 0; i < n; ++i)
      if (!used[i] && (u == -1 || best[i] < best[u])) u = i;
    used[u] = true;
    if (from[u] >= 0) {
      if (best[u] <= dup)
        throw Error(ErrorCode::DuplicatePoints, "two input points coincide within tolerance");
      t.edges.push_back({from[u], u});
      t.lengths.push_back(best[u]);
      t.weight += best[u];
    }
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      const double d = distance(points[u], points[i]);
      if (d < best[i]) {
        best[i] = d;
        from[i] = u;
      }
    }
  }
  return t;
}

struct SpanningPath {
  PathInstance path;
  std::vector<int> order;  // order[i] = input index of the i-th path point
};

// Depth-first first-visit order starting at `root`; children are explored
// in increasing (edge length, neighbor index) order. Shortcutting the
// traversal this way at most doubles the tree weight.
inline SpanningPath mst_to_path(const WeightedTree& tree, const std::vector<Point>& points,
                                int root = 0) {
  const int n = static_cast<int>(points.size());
  struct Arc {
    int to;
    double length;
  };
  std::vector<std::vector<Arc>> adj(n);
  for (std::size_t i = 0; i < tree.edges.size(); ++i) {
    const TreeEdge& e = tree.edges[i];
    adj[e.a].push_back({e.b, tree.lengths[i]});
    adj[e.b].push_back({e.a, tree.lengths[i]});
  }
  for (auto& arcs : adj)
    std::sort(arcs.begin(), arcs.end(), [](const Arc& l, const Arc& r) {
      return l.length < r.length || (l.length == r.length && l.to < r.to);
    });
  SpanningPath out;
  std::vector<bool> seen(n, false);
  std::vector<int> stack = {root};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    if (seen[u]) continue;
    seen[u] = true;
    out.order.push_back(u);
    out.path.points.push_back(points[u]);
    for (auto it = adj[u].rbegin(); it != adj[u].rend(); ++it)
      if (!seen[it->to]) stack.push_back(it->to);
  }
  if (static_cast<int>(out.order.size()) != n)
    throw Error(ErrorCode::NotATree, "traversal did not reach every vertex");
  return out;
}

// Built tree plus the weights it is measured against. Vertex indices inside
// `result` refer to path positions; `order` maps them back to the input.
struct ApproxResult {
  BastResult result;
  std::vector<int> order;
  double mst_weight = 0.0;
  double tree_vs_mst = 0.0;
  double tree_vs_path = 0.0;
};

inline ApproxResult approx_bast(const std::vector<Point>& points, const BuildOptions& options = {}) {
  if (points.size() < 2)
    throw Error(ErrorCode::PathTooShort, "pipeline needs at least two points");
  const WeightedTree mst = euclidean_mst(points);
  SpanningPath sp = mst_to_path(mst, points);
  ApproxResult out;
  out.result = build_tree_from_path(sp.path, options);
  out.order = std::move(sp.order);
  out.mst_weight = mst.weight;
  out.tree_vs_mst = mst.weight > 0.0 ? out.result.tree_weight / mst.weight : 1.0;
  out.tree_vs_path =
      out.result.path_weight > 0.0 ? out.result.tree_weight / out.result.path_weight : 1.0;
  return out;
}

}  // namespace bast

#pragma once

// Deterministic SVG rendering of a build document: tree edges as line
// segments (matching edges and connectors styled apart) and each vertex's
// cone as a translucent 120-degree wedge. Output is byte-stable for equal
// inputs; every coordinate goes through shortest-round-trip formatting.

#include <algorithm>
#include <string>
#include <vector>

#include "bast/geom.hpp"
#include "bast/io.hpp"

namespace bast {

namespace detail {

// Plane y grows upward, SVG y grows downward.
inline double flip_y(double y) { return -y; }

inline std::string svg_num(double v) {
  // Avoid the "-0" artifact so equal drawings serialize identically.
  if (v == 0.0) v = 0.0;
  return format_double(v);
}

}  // namespace detail

inline std::string render_svg(const OutputDocument& d) {
  const int n = static_cast<int>(d.points.size());
  if (n < 1) throw Error(ErrorCode::InvalidDocument, "document has no points");
  if (static_cast<int>(d.orientations.size()) != n)
    throw Error(ErrorCode::InvalidDocument, "orientation list does not match the point count");
  for (const TreeEdge& e : d.tree_edges)
    if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n)
      throw Error(ErrorCode::InvalidDocument, "tree edge index out of range");
  for (const Point& p : d.points)
    if (!finite_point(p)) throw Error(ErrorCode::InvalidDocument, "non-finite point");

  double lo_x = d.points.front().x, hi_x = lo_x;
  double lo_y = d.points.front().y, hi_y = lo_y;
  for (const Point& p : d.points) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  const double max_dim = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double margin = 0.05 * max_dim;

  std::vector<double> lengths;
  for (const TreeEdge& e : d.tree_edges)
    lengths.push_back(distance(d.points[e.a], d.points[e.b]));
  double radius = 0.3;
  if (!lengths.empty()) {
    std::sort(lengths.begin(), lengths.end());
    radius = 0.3 * lengths[(lengths.size() - 1) / 2];
  }
  if (radius <= 0.0) radius = 0.05 * max_dim;

  const double vx = lo_x - margin;
  const double vy = detail::flip_y(hi_y) - margin;
  const double vw = (hi_x - lo_x) + 2.0 * margin;
  const double vh = (hi_y - lo_y) + 2.0 * margin;
  const double stroke = 0.006 * max_dim;

  auto is_connector = [&](const TreeEdge& e) {
    for (const TreeEdge& c : d.connectors)
      if ((c.a == e.a && c.b == e.b) || (c.a == e.b && c.b == e.a)) return true;
    return false;
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + detail::svg_num(vx) + " " +
         detail::svg_num(vy) + " " + detail::svg_num(vw) + " " + detail::svg_num(vh) + "\">\n";
  out += "<g stroke-width=\"" + detail::svg_num(stroke) + "\" fill=\"none\">\n";
  for (int v = 0; v < n; ++v) {
    const Point& apex = d.points[v];
    const double theta = d.orientations[v].bisector.theta;
    const Point s = apex + radius * Direction::from_radians(theta - cone_half_angle).unit();
    const Point e = apex + radius * Direction::from_radians(theta + cone_half_angle).unit();
    out += "<path class=\"cone\" fill=\"#2ca02c\" fill-opacity=\"0.15\" stroke=\"none\" d=\"M " +
           detail::svg_num(apex.x) + " " + detail::svg_num(detail::flip_y(apex.y)) + " L " +
           detail::svg_num(s.x) + " " + detail::svg_num(detail::flip_y(s.y)) + " A " +
           detail::svg_num(radius) + " " + detail::svg_num(radius) + " 0 0 0 " +
           detail::svg_num(e.x) + " " + detail::svg_num(detail::flip_y(e.y)) + " Z\"/>\n";
  }
  for (const TreeEdge& e : d.tree_edges) {
    const bool conn = is_connector(e);
    out += std::string("<line class=\"") + (conn ? "connector" : "matching") + "\" stroke=\"" +
           (conn ? "#d62728" : "#1f77b4") + "\"" + (conn ? " stroke-dasharray=\"" + detail::svg_num(3.0 * stroke) + "\"" : "") +
           " x1=\"" + detail::svg_num(d.points[e.a].x) + "\" y1=\"" +
           detail::svg_num(detail::flip_y(d.points[e.a].y)) + "\" x2=\"" +
           detail::svg_num(d.points[e.b].x) + "\" y2=\"" +
           detail::svg_num(detail::flip_y(d.points[e.b].y)) + "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace bast

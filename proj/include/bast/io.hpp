#pragma once

// Point-file parsing (text and JSON), the structured output document the
// CLI emits, and lossless double formatting for text outputs.

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "bast/builder.hpp"
#include "bast/oracle.hpp"

namespace bast {

// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double_token(const std::string& tok) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw Error(ErrorCode::InvalidDocument, "malformed number '" + tok + "'");
  return v;
}

// One point per line as two whitespace-separated decimals; lines whose
// first non-space character is '#' are comments.
inline std::vector<Point> parse_points_text(const std::string& text) {
  std::vector<Point> pts;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno += 1;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ls(line);
    std::string xa, ya, extra;
    if (!(ls >> xa >> ya) || (ls >> extra))
      throw Error(ErrorCode::InvalidDocument,
                  "line " + std::to_string(lineno) + ": expected two coordinates");
    pts.push_back({parse_double_token(xa), parse_double_token(ya)});
  }
  return pts;
}

inline std::string format_points_text(const std::vector<Point>& pts) {
  std::string out;
  for (const Point& p : pts) out += format_double(p.x) + " " + format_double(p.y) + "\n";
  return out;
}

inline std::vector<Point> parse_points_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidDocument, e.what());
  }
  if (!j.is_array()) throw Error(ErrorCode::InvalidDocument, "expected a top-level array of [x,y]");
  std::vector<Point> pts;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
      throw Error(ErrorCode::InvalidDocument, "expected [x,y] pairs");
    pts.push_back({item[0].get<double>(), item[1].get<double>()});
  }
  return pts;
}

inline std::string format_points_json(const std::vector<Point>& pts) {
  nlohmann::json j = nlohmann::json::array();
  for (const Point& p : pts) j.push_back({p.x, p.y});
  return j.dump(2) + "\n";
}

// Everything a build run produces, in one serializable bundle. Vertex
// indices refer to positions in `points` (the build order); `path_order`
// maps those positions back to the original input when the two differ.
struct OutputDocument {
  std::string source = "path";
  std::vector<Point> points;
  std::vector<int> path_order;
  std::vector<MatchingEdge> matching_edges;
  std::vector<TreeEdge> tree_edges;
  std::vector<TreeEdge> connectors;
  std::vector<VertexCone> orientations;
  double weight_path = 0.0;
  double weight_tree = 0.0;
  std::optional<double> weight_mst;
  double ratio_tree_vs_path = 0.0;
  std::optional<double> ratio_tree_vs_mst;
  VerificationReport verification;
  std::optional<std::vector<TraceRecord>> trace;
};

namespace detail {

inline ConeKind cone_kind_from_name(const std::string& s) {
  if (s == "up") return ConeKind::Up;
  if (s == "down") return ConeKind::Down;
  if (s == "center") return ConeKind::Center;
  throw Error(ErrorCode::InvalidDocument, "unknown cone kind '" + s + "'");
}

inline Phase phase_from_name(const std::string& s) {
  if (s == "phase1") return Phase::PhaseI;
  if (s == "phase2") return Phase::PhaseII;
  if (s == "phase3") return Phase::PhaseIII;
  if (s == "cleanup") return Phase::Cleanup;
  if (s == "devirtualize") return Phase::Devirtualize;
  throw Error(ErrorCode::InvalidDocument, "unknown phase '" + s + "'");
}

inline TriggerCondition trigger_from_name(const std::string& s) {
  if (s == "first") return TriggerCondition::First;
  if (s == "second") return TriggerCondition::Second;
  throw Error(ErrorCode::InvalidDocument, "unknown trigger condition '" + s + "'");
}

inline nlohmann::json edges_to_json(const std::vector<TreeEdge>& edges) {
  nlohmann::json j = nlohmann::json::array();
  for (const TreeEdge& e : edges) j.push_back({e.a, e.b});
  return j;
}

inline std::vector<TreeEdge> edges_from_json(const nlohmann::json& j) {
  std::vector<TreeEdge> edges;
  for (const auto& item : j) edges.push_back({item.at(0).get<int>(), item.at(1).get<int>()});
  return edges;
}

}  // namespace detail

inline nlohmann::json document_to_json(const OutputDocument& d) {
  nlohmann::json j;
  j["source"] = d.source;
  j["points"] = nlohmann::json::array();
  for (const Point& p : d.points) j["points"].push_back({p.x, p.y});
  j["path_order"] = d.path_order;
  nlohmann::json me = nlohmann::json::array();
  for (const MatchingEdge& e : d.matching_edges) me.push_back({e.first, e.second});
  j["matching_edges"] = me;
  j["tree_edges"] = detail::edges_to_json(d.tree_edges);
  j["connectors"] = detail::edges_to_json(d.connectors);
  nlohmann::json ors = nlohmann::json::array();
  for (const VertexCone& c : d.orientations)
    ors.push_back({{"kind", cone_kind_name(c.kind)},
                   {"partner", c.partner},
                   {"bisector", c.bisector.theta}});
  j["orientations"] = ors;
  j["weights"] = {{"path", d.weight_path}, {"tree", d.weight_tree}};
  if (d.weight_mst) j["weights"]["mst"] = *d.weight_mst;
  j["ratios"] = {{"tree_vs_path", d.ratio_tree_vs_path}};
  if (d.ratio_tree_vs_mst) j["ratios"]["tree_vs_mst"] = *d.ratio_tree_vs_mst;
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : d.verification.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["verification"] = checks;
  if (d.trace) {
    nlohmann::json tr = nlohmann::json::array();
    for (const TraceRecord& t : *d.trace) {
      nlohmann::json rec = {{"phase", phase_name(t.phase)},
                            {"vertex", t.vertex},
                            {"kind", cone_kind_name(t.kind)},
                            {"partner", t.partner},
                            {"simultaneous", t.simultaneous}};
      if (t.due_edge) rec["due_edge"] = *t.due_edge;
      if (t.condition) rec["condition"] = trigger_name(*t.condition);
      tr.push_back(rec);
    }
    j["trace"] = tr;
  }
  return j;
}

inline std::string serialize_document(const OutputDocument& d) {
  return document_to_json(d).dump(2) + "\n";
}

inline OutputDocument parse_document(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidDocument, e.what());
  }
  try {
    OutputDocument d;
    d.source = j.at("source").get<std::string>();
    for (const auto& item : j.at("points"))
      d.points.push_back({item.at(0).get<double>(), item.at(1).get<double>()});
    d.path_order = j.at("path_order").get<std::vector<int>>();
    for (const auto& item : j.at("matching_edges"))
      d.matching_edges.push_back({item.at(0).get<int>(), item.at(1).get<int>()});
    d.tree_edges = detail::edges_from_json(j.at("tree_edges"));
    d.connectors = detail::edges_from_json(j.at("connectors"));
    for (const auto& item : j.at("orientations"))
      d.orientations.push_back({detail::cone_kind_from_name(item.at("kind").get<std::string>()),
                                item.at("partner").get<int>(),
                                Direction{item.at("bisector").get<double>()}});
    d.weight_path = j.at("weights").at("path").get<double>();
    d.weight_tree = j.at("weights").at("tree").get<double>();
    if (j.at("weights").contains("mst")) d.weight_mst = j.at("weights").at("mst").get<double>();
    d.ratio_tree_vs_path = j.at("ratios").at("tree_vs_path").get<double>();
    if (j.at("ratios").contains("tree_vs_mst"))
      d.ratio_tree_vs_mst = j.at("ratios").at("tree_vs_mst").get<double>();
    for (const auto& item : j.at("verification"))
      d.verification.checks.push_back({item.at("name").get<std::string>(),
                                       item.at("pass").get<bool>(),
                                       item.at("detail").get<std::string>()});
    if (j.contains("trace")) {
      std::vector<TraceRecord> tr;
      for (const auto& item : j.at("trace")) {
        TraceRecord t;
        t.phase = detail::phase_from_name(item.at("phase").get<std::string>());
        t.vertex = item.at("vertex").get<int>();
        t.kind = detail::cone_kind_from_name(item.at("kind").get<std::string>());
        t.partner = item.at("partner").get<int>();
        t.simultaneous = item.at("simultaneous").get<bool>();
        if (item.contains("due_edge")) t.due_edge = item.at("due_edge").get<int>();
        if (item.contains("condition"))
          t.condition = detail::trigger_from_name(item.at("condition").get<std::string>());
        tr.push_back(t);
      }
      d.trace = std::move(tr);
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidDocument, e.what());
  }
}

inline bool operator==(const OutputDocument& a, const OutputDocument& b) {
  return document_to_json(a) == document_to_json(b);
}

inline OutputDocument make_document(const std::string& source, const BastResult& r,
                                    const VerificationReport& report,
                                    std::optional<double> mst_weight = std::nullopt,
                                    std::vector<int> path_order = {}, bool include_trace = false) {
  OutputDocument d;
  d.source = source;
  d.points = r.points;
  if (path_order.empty())
    for (int i = 0; i < static_cast<int>(r.points.size()); ++i) d.path_order.push_back(i);
  else
    d.path_order = std::move(path_order);
  d.matching_edges = r.matching_edges;
  d.tree_edges = r.tree_edges;
  d.connectors = r.connectors;
  d.orientations = r.cones;
  d.weight_path = r.path_weight;
  d.weight_tree = r.tree_weight;
  d.weight_mst = mst_weight;
  d.ratio_tree_vs_path = r.path_weight > 0.0 ? r.tree_weight / r.path_weight : 1.0;
  if (mst_weight) d.ratio_tree_vs_mst = *mst_weight > 0.0 ? r.tree_weight / *mst_weight : 1.0;
  d.verification = report;
  if (include_trace) d.trace = r.trace;
  return d;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for writing");
  out << content;
  if (!out.good()) throw Error(ErrorCode::IoFailure, "write to '" + path + "' failed");
}

}  // namespace bast

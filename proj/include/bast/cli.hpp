#pragma once

// Command-line surface. Each cmd_* function runs one subcommand from an
// already-validated RunConfig and returns a process exit code: 0 success
// (and verification pass), 1 verification failure, 2 input or usage error.
// run() wires them to argv parsing.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bast/builder.hpp"
#include "bast/io.hpp"
#include "bast/oracle.hpp"
#include "bast/pipeline.hpp"
#include "bast/svg.hpp"

namespace bast {

struct RunConfig {
  std::string command;
  std::string input;
  std::string format = "text";         // text | json
  std::string source = "path";         // path | mst
  std::string matching = "auto";       // auto | first | second
  std::string phase2 = "two_round";    // two_round | reference
  std::string connector = "shortest";  // shortest | first
  double alpha = 2.0 * pi / 3.0;
  int max_n = 9;
  std::uint64_t seed = 1;
  int n = 16;
  double spacing = 1.0;
  std::string kind = "uniform";  // uniform | collinear
  std::string output;            // empty = stdout
  std::string compare;           // oracle: document to compare against
  std::vector<int> sizes = {1000, 10000, 100000};
  bool include_trace = false;
};

namespace detail {

inline BuildOptions build_options(const RunConfig& cfg) {
  BuildOptions opt;
  if (cfg.matching == "auto")
    opt.force = MatchingForce::Auto;
  else if (cfg.matching == "first")
    opt.force = MatchingForce::First;
  else if (cfg.matching == "second")
    opt.force = MatchingForce::Second;
  else
    throw Error(ErrorCode::InvalidConfig, "matching must be auto, first or second");
  if (cfg.phase2 == "two_round")
    opt.phase2_mode = Phase2Mode::TwoRound;
  else if (cfg.phase2 == "reference")
    opt.phase2_mode = Phase2Mode::Reference;
  else
    throw Error(ErrorCode::InvalidConfig, "phase2 must be two_round or reference");
  if (cfg.connector == "shortest")
    opt.connector_policy = ConnectorPolicy::Shortest;
  else if (cfg.connector == "first")
    opt.connector_policy = ConnectorPolicy::First;
  else
    throw Error(ErrorCode::InvalidConfig, "connector must be shortest or first");
  return opt;
}

inline std::vector<Point> load_points(const RunConfig& cfg) {
  const std::string text = read_file(cfg.input);
  if (cfg.format == "text") return parse_points_text(text);
  if (cfg.format == "json") return parse_points_json(text);
  throw Error(ErrorCode::InvalidConfig, "format must be text or json");
}

inline void emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.output.empty())
    std::cout << content;
  else
    write_file(cfg.output, content);
}

}  // namespace detail

inline int cmd_build(const RunConfig& cfg) {
  try {
    const std::vector<Point> points = detail::load_points(cfg);
    const BuildOptions opt = detail::build_options(cfg);
    OutputDocument doc;
    VerificationReport report;
    if (cfg.source == "path") {
      PathInstance path{points};
      BastResult r = build_tree_from_path(path, opt);
      report = verify_result(path, r);
      doc = make_document("path", r, report, std::nullopt, {}, cfg.include_trace);
    } else if (cfg.source == "mst") {
      ApproxResult ar = approx_bast(points, opt);
      PathInstance path{ar.result.points};
      report = verify_result(path, ar.result, ar.mst_weight);
      doc = make_document("mst", ar.result, report, ar.mst_weight, ar.order, cfg.include_trace);
    } else {
      throw Error(ErrorCode::InvalidConfig, "source must be path or mst");
    }
    detail::emit(cfg, serialize_document(doc));
    return report.pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

inline int cmd_oracle(const RunConfig& cfg) {
  try {
    const std::vector<Point> points = detail::load_points(cfg);
    OracleConfig ocfg;
    ocfg.alpha = cfg.alpha;
    ocfg.max_n = cfg.max_n;
    const OracleResult res = alpha_mst_bruteforce(points, ocfg);
    nlohmann::json j;
    j["optimal_weight"] = res.optimal_weight;
    j["edges"] = detail::edges_to_json(res.edges);
    j["trees_examined"] = res.trees_examined;
    j["feasible_count"] = res.feasible_count;
    if (!cfg.compare.empty()) {
      const OutputDocument doc = parse_document(read_file(cfg.compare));
      j["compared_tree_weight"] = doc.weight_tree;
      j["compared_ratio"] = res.optimal_weight > 0.0 ? doc.weight_tree / res.optimal_weight : 1.0;
    }
    detail::emit(cfg, j.dump(2) + "\n");
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

inline int cmd_svg(const RunConfig& cfg) {
  try {
    const OutputDocument doc = parse_document(read_file(cfg.input));
    detail::emit(cfg, render_svg(doc));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

inline int cmd_gen(const RunConfig& cfg) {
  try {
    PathInstance p;
    if (cfg.kind == "collinear")
      p = collinear_instance(cfg.n, cfg.spacing);
    else if (cfg.kind == "uniform")
      p = uniform_instance(cfg.n, cfg.seed);
    else
      throw Error(ErrorCode::InvalidConfig, "kind must be uniform or collinear");
    if (cfg.format == "json")
      detail::emit(cfg, format_points_json(p.points));
    else if (cfg.format == "text")
      detail::emit(cfg, format_points_text(p.points));
    else
      throw Error(ErrorCode::InvalidConfig, "format must be text or json");
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

inline int cmd_bench(const RunConfig& cfg) {
  try {
    const BuildOptions opt = detail::build_options(cfg);
    std::string out;
    for (const int n : cfg.sizes) {
      const PathInstance path = uniform_instance(n, cfg.seed + static_cast<std::uint64_t>(n));
      const auto t0 = std::chrono::steady_clock::now();
      const BastResult r = build_tree_from_path(path, opt);
      const auto t1 = std::chrono::steady_clock::now();
      const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      const std::uint64_t matching = r.matching_edges.size();
      const std::uint64_t work = r.work.total();
      out += "n=" + std::to_string(n) + " matching=" + std::to_string(matching) +
             " work=" + std::to_string(work) +
             " work_per_matching=" + format_double(static_cast<double>(work) / static_cast<double>(matching)) +
             " tree_weight=" + format_double(r.tree_weight) + " ms=" + format_double(ms) + "\n";
    }
    detail::emit(cfg, out);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

inline int run(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"bounded-angle spanning tree toolkit"};
  app.require_subcommand(1);

  auto add_io = [&](CLI::App* sub, bool needs_input) {
    if (needs_input) sub->add_option("input", cfg.input, "input file")->required();
    sub->add_option("-o,--output", cfg.output, "output file (default: stdout)");
    sub->add_option("--format", cfg.format, "point file format: text or json");
  };

  CLI::App* build = app.add_subcommand("build", "build a bounded-angle tree");
  add_io(build, true);
  build->add_option("--source", cfg.source, "path (input order) or mst (spanning path of the MST)");
  build->add_option("--matching", cfg.matching, "auto, first or second");
  build->add_option("--phase2", cfg.phase2, "two_round or reference");
  build->add_option("--connector", cfg.connector, "shortest or first");
  build->add_flag("--trace", cfg.include_trace, "include the assignment trace");

  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive minimum bounded-angle tree");
  add_io(oracle, true);
  oracle->add_option("--alpha", cfg.alpha, "angle bound in radians");
  oracle->add_option("--max-n", cfg.max_n, "enumeration cap");
  oracle->add_option("--compare", cfg.compare, "build document to compare against");

  CLI::App* svg = app.add_subcommand("svg", "render a build document as SVG");
  add_io(svg, true);

  CLI::App* gen = app.add_subcommand("gen", "generate an instance");
  add_io(gen, false);
  gen->add_option("--kind", cfg.kind, "uniform or collinear");
  gen->add_option("-n", cfg.n, "point count");
  gen->add_option("--seed", cfg.seed, "random seed");
  gen->add_option("--spacing", cfg.spacing, "collinear spacing");

  CLI::App* bench = app.add_subcommand("bench", "time builds and report work counters");
  add_io(bench, false);
  bench->add_option("--sizes", cfg.sizes, "instance sizes");
  bench->add_option("--seed", cfg.seed, "random seed");
  bench->add_option("--matching", cfg.matching, "auto, first or second");
  bench->add_option("--phase2", cfg.phase2, "two_round or reference");
  bench->add_option("--connector", cfg.connector, "shortest or first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (build->parsed()) return cmd_build(cfg);
  if (oracle->parsed()) return cmd_oracle(cfg);
  if (svg->parsed()) return cmd_svg(cfg);
  if (gen->parsed()) return cmd_gen(cfg);
  if (bench->parsed()) return cmd_bench(cfg);
  return 2;
}

}  // namespace bast

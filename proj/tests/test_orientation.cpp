#include <catch2/catch_amalgamated.hpp>

#include "bast/orientation.hpp"
#include "support/fixtures.hpp"

using namespace bast;
using fixtures::c4_points;
using fixtures::make_state;
using Catch::Matchers::WithinAbs;

namespace {

template <typename Fn>
ErrorCode thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::EmptyInput;
}

const std::vector<MatchingEdge> c4_edges = {{0, 1}, {2, 3}};

OrientationState c4_all_center() {
  OrientationState s = make_state(c4_points(), c4_edges);
  for (int v : {0, 1, 2, 3})
    s.assign(v, ConeKind::Center, Phase::Cleanup, std::nullopt, std::nullopt, false);
  return s;
}

}  // namespace

TEST_CASE("state exposes partners, edges, and cached bearings", "[orientation]") {
  OrientationState s = make_state(c4_points(), c4_edges);
  CHECK(s.partner(0) == 1);
  CHECK(s.partner(1) == 0);
  CHECK(s.partner(3) == 2);
  CHECK(s.edge_of(2) == 1);
  CHECK_THAT(s.partner_theta(0), WithinAbs(0.0, 0.0));
  CHECK_THAT(s.partner_theta(1), WithinAbs(pi, 1e-15));
  CHECK_FALSE(s.oriented(0));
  CHECK(thrown_code([&] { s.orientation(0); }) == ErrorCode::UnorientedVertex);

  OrientationState lone = make_state({{0, 0}, {1, 0}, {2, 0}}, {{0, 1}});
  CHECK(thrown_code([&] { lone.partner(2); }) == ErrorCode::InvalidConfig);
  CHECK(thrown_code([&] { lone.edge_of(2); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("candidate cones mirror the basic cone construction", "[orientation]") {
  OrientationState s = make_state(c4_points(), c4_edges);
  for (ConeKind k : {ConeKind::Center, ConeKind::Up, ConeKind::Down}) {
    const Cone want = basic_cone(s.point(2), s.point(3), k);
    const Cone got = s.candidate_cone(2, k);
    CHECK_THAT(got.bisector.theta, WithinAbs(want.bisector.theta, 1e-12));
  }
}

TEST_CASE("assign orients, caches the bisector, and records the trace", "[orientation]") {
  OrientationState s = make_state(c4_points(), c4_edges);
  s.assign(0, ConeKind::Center, Phase::PhaseI, 1, TriggerCondition::First, false);
  REQUIRE(s.oriented(0));
  const VertexOrientation& o = s.orientation(0);
  CHECK(o.kind == ConeKind::Center);
  CHECK(o.partner == 1);
  CHECK_THAT(o.bisector.theta, WithinAbs(0.0, 0.0));
  REQUIRE(o.history.size() == 1);
  CHECK(o.history[0].phase == Phase::PhaseI);
  CHECK(o.history[0].due_edge == 1);
  CHECK(o.history[0].condition == TriggerCondition::First);
  REQUIRE(s.trace().size() == 1);
  CHECK(s.trace()[0].vertex == 0);
  CHECK(s.trace()[0].kind == ConeKind::Center);
  CHECK(s.oriented_due_to(0, 1));
  CHECK_FALSE(s.oriented_due_to(0, 0));
  CHECK_FALSE(s.oriented_due_to(1, 1));
}

TEST_CASE("reassignment is rejected outside first-phase retriggers", "[orientation]") {
  OrientationState s = make_state(c4_points(), c4_edges);
  s.assign(0, ConeKind::Center, Phase::PhaseI, 1, TriggerCondition::First, false);
  // Same kind, still first phase: provenance accumulates.
  s.assign(0, ConeKind::Center, Phase::PhaseI, 0, TriggerCondition::Second, false);
  CHECK(s.orientation(0).history.size() == 2);
  CHECK(s.oriented_due_to(0, 0));
  CHECK(s.oriented_due_to(0, 1));
  CHECK(thrown_code([&] {
          s.assign(0, ConeKind::Center, Phase::PhaseII, std::nullopt, std::nullopt, false);
        }) == ErrorCode::ReorientAttempt);
  s.assign(3, ConeKind::Up, Phase::PhaseIII, std::nullopt, std::nullopt, false);
  CHECK(thrown_code([&] {
          s.assign(3, ConeKind::Down, Phase::PhaseIII, std::nullopt, std::nullopt, false);
        }) == ErrorCode::ReorientAttempt);
}

TEST_CASE("non-center kinds need an oriented partner in the first two phases", "[orientation]") {
  OrientationState s = make_state(c4_points(), c4_edges);
  CHECK(thrown_code([&] {
          s.assign(0, ConeKind::Up, Phase::PhaseII, std::nullopt, std::nullopt, false);
        }) == ErrorCode::NonCenterFirst);
  // Double operations pair vertices of different edges, so the flag does not
  // waive the rule.
  CHECK(thrown_code([&] {
          s.assign(0, ConeKind::Up, Phase::PhaseII, std::nullopt, std::nullopt, true);
        }) == ErrorCode::NonCenterFirst);
  // Center is always available; afterwards the partner may pick any kind.
  s.assign(1, ConeKind::Center, Phase::PhaseII, 1, std::nullopt, false);
  s.assign(0, ConeKind::Down, Phase::PhaseII, 1, std::nullopt, false);
  CHECK(s.orientation(0).kind == ConeKind::Down);
  // The third phase is exempt.
  s.assign(2, ConeKind::Up, Phase::PhaseIII, std::nullopt, std::nullopt, false);
  CHECK(s.orientation(2).kind == ConeKind::Up);
}

TEST_CASE("transmission edges on the fully centered collinear fixture", "[orientation]") {
  OrientationState s = c4_all_center();
  CHECK(is_transmission_edge(s, 0, 1));
  CHECK(is_transmission_edge(s, 0, 3));
  CHECK_FALSE(is_transmission_edge(s, 1, 2));

  OrientationState partial = make_state(c4_points(), c4_edges);
  partial.assign(0, ConeKind::Center, Phase::Cleanup, std::nullopt, std::nullopt, false);
  CHECK(thrown_code([&] { is_transmission_edge(partial, 0, 1); }) == ErrorCode::UnorientedVertex);
}

TEST_CASE("transmission graph enumeration", "[orientation]") {
  OrientationState s = c4_all_center();
  const TransmissionGraph g = transmission_graph(s);
  auto has = [&](int a, int b) {
    for (const auto& e : g.edges)
      if ((e.first == a && e.second == b) || (e.first == b && e.second == a)) return true;
    return false;
  };
  CHECK(has(0, 1));
  CHECK(has(2, 3));
  CHECK(has(0, 3));
  CHECK_FALSE(has(1, 2));

  OrientationState two = make_state({{0, 0}, {2, 0}}, {{0, 1}});
  two.assign(0, ConeKind::Center, Phase::Cleanup, std::nullopt, std::nullopt, false);
  two.assign(1, ConeKind::Center, Phase::Cleanup, std::nullopt, std::nullopt, false);
  CHECK(transmission_graph(two).edges.size() == 1);

  OrientationState partial = make_state(c4_points(), c4_edges);
  partial.assign(0, ConeKind::Center, Phase::Cleanup, std::nullopt, std::nullopt, false);
  CHECK(thrown_code([&] { transmission_graph(partial); }) == ErrorCode::UnorientedVertex);
}

TEST_CASE("every matching edge becomes a transmission edge once all centered", "[orientation]") {
  fixtures::Rng rng(97);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = rng.pick(1, 5);
    std::vector<Point> pts;
    std::vector<MatchingEdge> edges;
    for (int i = 0; i < 2 * m; ++i) pts.push_back(fixtures::random_point(rng));
    bool degenerate = false;
    for (int i = 0; i + 1 < 2 * m; i += 2) {
      if (distance(pts[i], pts[i + 1]) < 1e-6) degenerate = true;
      edges.push_back({i, i + 1});
    }
    if (degenerate) continue;
    OrientationState s = make_state(pts, edges);
    for (int v = 0; v < 2 * m; ++v)
      s.assign(v, ConeKind::Center, Phase::Cleanup, std::nullopt, std::nullopt, false);
    for (const MatchingEdge& e : edges) CHECK(is_transmission_edge(s, e.first, e.second));
  }
}

TEST_CASE("connector_exists scans the four cross pairs", "[orientation]") {
  OrientationState s = make_state(c4_points(), c4_edges);
  CHECK_FALSE(connector_exists(s, 0, 1));
  s.assign(0, ConeKind::Center, Phase::PhaseI, 1, TriggerCondition::First, false);
  CHECK_FALSE(connector_exists(s, 0, 1));  // one cone cannot make an edge
  s.assign(3, ConeKind::Center, Phase::PhaseI, 0, TriggerCondition::First, false);
  CHECK(connector_exists(s, 0, 1));  // via {0, 3}
  CHECK(connector_exists(s, s.edges()[0], s.edges()[1]));
}

TEST_CASE("repoint rewrites the cone toward a new partner", "[orientation]") {
  OrientationState s = make_state(c4_points(), c4_edges);
  s.assign(3, ConeKind::Up, Phase::PhaseIII, std::nullopt, std::nullopt, false);
  s.repoint(3, 1);
  const VertexOrientation& o = s.orientation(3);
  CHECK(o.kind == ConeKind::Center);
  CHECK(o.partner == 1);
  CHECK_THAT(o.bisector.theta, WithinAbs(pi, 1e-15));
  CHECK(o.history.back().phase == Phase::Devirtualize);
}

TEST_CASE("name tables for phases, triggers, kinds, regions", "[orientation]") {
  CHECK(std::string(phase_name(Phase::PhaseI)) == "phase1");
  CHECK(std::string(phase_name(Phase::Cleanup)) == "cleanup");
  CHECK(std::string(phase_name(Phase::Devirtualize)) == "devirtualize");
  CHECK(std::string(trigger_name(TriggerCondition::First)) == "first");
  CHECK(std::string(trigger_name(TriggerCondition::Second)) == "second");
  CHECK(std::string(cone_kind_name(ConeKind::Center)) == "center");
  CHECK(std::string(cone_kind_name(ConeKind::Up)) == "up");
  CHECK(std::string(cone_kind_name(ConeKind::Down)) == "down");
  CHECK(std::string(region_name(RegionId::R2)) == "R2");
}

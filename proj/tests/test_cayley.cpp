#include <set>

#include "autostack/catalog.hpp"
#include "autostack/cayley.hpp"
#include "autostack/error.hpp"
#include "doctest.h"

using namespace autostack;

namespace {

  StackingStructure from_rules(CatalogEntry const& e) {
    return cprs_to_stacking(process(lift_srs(e.rules)).system);
  }

  // phi(y, a) = a A a on the edges where it was B a b: the path runs over
  // its own edge, so descent has a loop.
  StackingStructure looping_z2(CatalogEntry const& e) {
    auto S = from_rules(e);
    auto C = S.components();
    for (auto& c : C) {
      if (c.value == e.alphabet.parse("Bab")) {
        c.value = e.alphabet.parse("aAa");
      }
    }
    return StackingStructure(e.alphabet, S.normal_forms(), C, {}, S.bound());
  }

}  // namespace

TEST_CASE("free group ball of radius 2") {
  auto e    = load_entry("free2");
  auto ball = build_ball(from_rules(e), 2);
  CHECK(ball.vertices().size() == 17);
  CHECK(ball.edges().size() == 17 * 4);
  CHECK(ball.tree_spans());
  for (auto const& edge : ball.edges()) {
    CHECK(edge.kind == EdgeClass::degenerate);
  }
  CHECK(fellow_traveler(ball).k == 1);
}

TEST_CASE("ball edges agree with the oracle") {
  for (auto const& name : builtin_entries()) {
    INFO(name);
    auto e    = load_entry(name);
    auto S    = from_rules(e);
    auto ball = build_ball(S, 4);
    CHECK(ball.tree_spans());

    // Vertices are distinct elements.
    for (std::size_t i = 0; i < ball.vertices().size(); ++i) {
      for (std::size_t j = i + 1; j < ball.vertices().size(); ++j) {
        CHECK_FALSE(e.oracle->equal(ball.vertices()[i], ball.vertices()[j]));
      }
    }
    for (auto const& edge : ball.edges()) {
      Word ya = concat(ball.vertices()[edge.source], edge.letter);
      if (edge.target) {
        CHECK(e.oracle->equal(ya, ball.vertices()[*edge.target]));
      }
      if (auto r = ball.reverse(ball.edge_id(edge.source, edge.letter))) {
        CHECK(ball.edges()[*r].target == edge.source);
      }
    }

    // Same ball from the rewriting system.
    auto Q     = process(lift_srs(e.rules)).system;
    auto other = build_ball(Q, 4);
    CHECK(other.vertices() == ball.vertices());
    for (std::size_t i = 0; i < ball.edges().size(); ++i) {
      CHECK(other.edges()[i].target == ball.edges()[i].target);
    }
  }
}

TEST_CASE("Z^2 sphere sizes") {
  auto e    = load_entry("z2");
  auto ball = build_ball(from_rules(e), 5);
  std::vector<std::size_t> sphere(6, 0);
  for (auto const& v : ball.vertices()) {
    ++sphere[v.size()];
  }
  // 1, 4, 8, 12, ... : 4r elements at word length r.
  CHECK(sphere[0] == 1);
  for (std::size_t r = 1; r <= 5; ++r) {
    CHECK(sphere[r] == 4 * r);
  }
  auto dist = ball.distances_from(0);
  for (VertexId v = 0; v < ball.vertices().size(); ++v) {
    CHECK(dist[v] == ball.vertices()[v].size());
  }
}

TEST_CASE("flow of a recursive edge in Z^2") {
  auto e    = load_entry("z2");
  auto S    = from_rules(e);
  auto ball = build_ball(S, 3);
  auto flow = flow_from_stacking(S, ball);
  auto b    = *ball.find(e.alphabet.parse("b"));
  auto id   = ball.edge_id(b, 0);
  auto const& path = flow.paths[id];
  REQUIRE(path.verified);
  std::vector<Word> visited;
  for (auto v : path.vertices) {
    visited.push_back(ball.vertices()[v]);
  }
  CHECK(visited
        == std::vector<Word>{e.alphabet.parse("b"), {}, e.alphabet.parse("a"),
                             e.alphabet.parse("ab")});
  CHECK(ball.edges()[id].kind == EdgeClass::recursive);

  auto dot = ball_dot(ball, &flow);
  CHECK(dot.find("style=dashed, label=\"a / Bab\"") != std::string::npos);
}

TEST_CASE("descent is acyclic for structures from rewriting systems") {
  for (auto const& name : builtin_entries()) {
    INFO(name);
    auto e      = load_entry(name);
    auto S      = from_rules(e);
    auto ball   = build_ball(S, 5);
    auto report = check_wellfounded(flow_from_stacking(S, ball), ball);
    CHECK(report.acyclic);
    CHECK(report.cycle.empty());
    if (name == "free2") {
      CHECK(report.recursive_edges == 0);
    } else {
      CHECK(report.recursive_edges > 0);
    }
    auto json = descent_json(report, ball);
    CHECK(json.find("\"acyclic\": true") != std::string::npos);
  }
}

TEST_CASE("descent decreases prefix-rewriting length") {
  for (auto const& name : builtin_entries()) {
    INFO(name);
    auto e      = load_entry(name);
    auto Q      = process(lift_srs(e.rules)).system;
    auto S      = cprs_to_stacking(Q);
    auto ball   = build_ball(S, 4);
    auto report = check_wellfounded(flow_from_stacking(S, ball), ball);
    CHECK(report.acyclic);
    CHECK(prl_violations(report, ball, Q).empty());
    // s3 paths use tree edges only; z2 paths nest.
    if (name == "z2") {
      CHECK(report.descent_arcs > 0);
    }
  }
}

TEST_CASE("descent finds a loop") {
  auto e = load_entry("z2");
  auto S = looping_z2(e);
  CHECK(verify_stacking(S, e.oracle.get(), 3).ok());
  auto ball   = build_ball(from_rules(e), 3);
  auto report = check_wellfounded(flow_from_stacking(S, ball), ball);
  CHECK_FALSE(report.acyclic);
  REQUIRE_FALSE(report.cycle.empty());
  for (auto id : report.cycle) {
    CHECK(ball.edges()[id].kind == EdgeClass::recursive);
  }
  CHECK(descent_json(report, ball).find("\"acyclic\": false") != std::string::npos);
}

TEST_CASE("a flow path ending elsewhere is rejected") {
  auto e = load_entry("z2");
  auto S = from_rules(e);
  auto C = S.components();
  for (auto& c : C) {
    if (c.value == e.alphabet.parse("Bab")) {
      c.value = e.alphabet.parse("BAb");
    }
  }
  StackingStructure bad(e.alphabet, S.normal_forms(), C, {}, S.bound());
  auto ball = build_ball(S, 3);
  CHECK_THROWS_AS(flow_from_stacking(bad, ball), Error);
}

TEST_CASE("fellow travelling in Z^2") {
  auto e      = load_entry("z2");
  auto ball   = build_ball(from_rules(e), 4);
  auto report = fellow_traveler(ball);
  CHECK(report.pairs > 0);
  CHECK(report.k == 2);
  CHECK(fellow_traveler(ball, 1).capped);
}

#include <algorithm>
#include <random>

#include "autostack/catalog.hpp"
#include "autostack/error.hpp"
#include "autostack/vankampen.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace autostack;
using autostack::testing::random_identity_word;

namespace {

  StackingStructure from_rules(CatalogEntry const& e) {
    return cprs_to_stacking(process(lift_srs(e.rules)).system);
  }

  long long euler(VanKampenDiagram const& d) {
    return static_cast<long long>(d.vertex_count) - static_cast<long long>(d.edge_count())
           + static_cast<long long>(d.faces.size());
  }

  bool same_cyclic_word(Alphabet const& A, Word const& w, Word const& r) {
    for (Word const& base : {r, formal_inverse(A, r)}) {
      for (std::size_t i = 0; i < base.size(); ++i) {
        Word rot(base.begin() + i, base.end());
        rot.insert(rot.end(), base.begin(), base.begin() + i);
        if (rot == w) {
          return true;
        }
      }
    }
    return false;
  }

}  // namespace

TEST_CASE("single vertex and paths") {
  auto e = load_entry("free2");
  auto P = stacking_presentation(from_rules(e));
  auto v = VanKampenDiagram::single_vertex(e.alphabet);
  CHECK(validate_diagram(v, P).ok());
  CHECK(v.boundary.empty());

  auto p = VanKampenDiagram::path(e.alphabet, e.alphabet.parse("abA"));
  CHECK(validate_diagram(p, P).ok());
  CHECK(p.boundary == e.alphabet.parse("abAaBA"));
  CHECK(p.edge_count() == 3);
}

TEST_CASE("seashell of two mirror edges") {
  auto e = load_entry("free2");
  auto S = from_rules(e);
  auto d1 = build_edge_diagram(S, {}, 0);
  auto d2 = build_edge_diagram(S, e.alphabet.parse("a"), 1);
  CHECK(seashell_glue({d1}) == d1);
  auto glued = seashell_glue({d1, d2});
  CHECK(glued.vertex_count == 2);
  CHECK(glued.edge_count() == 1);
  CHECK(glued.faces.empty());
  CHECK(glued.boundary == e.alphabet.parse("aA"));
  CHECK(euler(glued) == 1);
  CHECK(build_diagram(S, e.alphabet.parse("aA")) == glued);

  // The shared path has to match.
  auto d3 = build_edge_diagram(S, e.alphabet.parse("b"), 1);
  CHECK_THROWS_AS(seashell_glue({d1, d3}), Error);
}

TEST_CASE("Z^2 commutator is one square") {
  auto e = load_entry("z2");
  auto S = from_rules(e);
  auto P = stacking_presentation(S);
  auto d = build_diagram(S, e.alphabet.parse("baBA"));
  CHECK(d.vertex_count == 4);
  CHECK(d.edge_count() == 4);
  REQUIRE(d.faces.size() == 1);
  CHECK(same_cyclic_word(e.alphabet, d.face_word(0), e.alphabet.parse("BabA")));
  CHECK(validate_diagram(d, P).ok());

  auto edge = build_edge_diagram(S, e.alphabet.parse("b"), 0);
  CHECK(edge.boundary == e.alphabet.parse("baBA"));
  CHECK(edge.faces.size() == 1);
  CHECK(euler(edge) == 1);

  auto two = build_diagram(S, e.alphabet.parse("bbaBBA"));
  CHECK(two.faces.size() == 2);
  CHECK(euler(two) == 1);
  CHECK(validate_diagram(two, P).ok());
}

TEST_CASE("degenerate edges never make faces") {
  for (auto const& name : builtin_entries()) {
    INFO(name);
    auto e = load_entry(name);
    auto S = from_rules(e);
    for (auto const& y : enumerate_language(S.normal_forms(), 3)) {
      for (Letter a = 0; a < e.alphabet.size(); ++a) {
        if (S.edge_class(y, a) == EdgeClass::degenerate) {
          CHECK(build_edge_diagram(S, y, a).faces.empty());
        }
      }
    }
  }
}

TEST_CASE("random edge diagrams are valid") {
  std::mt19937 rng(11);
  for (auto const& name : builtin_entries()) {
    INFO(name);
    auto e     = load_entry(name);
    auto S     = from_rules(e);
    auto P     = stacking_presentation(S);
    auto words = enumerate_language(S.normal_forms(), 6);
    for (int i = 0; i < 200; ++i) {
      Word const& y = words[std::uniform_int_distribution<std::size_t>(0, words.size() - 1)(rng)];
      Letter      a = static_cast<Letter>(rng() % e.alphabet.size());
      auto        d = build_edge_diagram(S, y, a);
      Word        z = stacking_normal_form(S, concat(y, a), 100000);
      CHECK(d.boundary == concat(concat(y, a), formal_inverse(e.alphabet, z)));
      auto report = validate_diagram(d, P);
      CHECK(report.ok());
      CHECK(euler(d) == 1);
    }
  }
}

TEST_CASE("random identity words give valid diagrams") {
  std::mt19937 rng(5);
  for (auto const& name : builtin_entries()) {
    INFO(name);
    auto e = load_entry(name);
    auto S = from_rules(e);
    auto P = stacking_presentation(S);
    for (int i = 0; i < 100; ++i) {
      Word w = random_identity_word(rng, e.alphabet, e.relators(), 12);
      INFO(e.alphabet.format(w));
      REQUIRE(e.oracle->is_identity(w));
      auto d = build_diagram(S, w);
      CHECK(d.boundary == w);
      auto report = validate_diagram(d, P);
      CHECK(report.ok());
      std::size_t steps = 0;
      stacking_normal_form(S, w, 1000000, &steps);
      CHECK(d.faces.size() <= steps);
      CHECK(build_diagram(S, w) == d);
    }
  }
}

TEST_CASE("validation reports witnesses") {
  auto e = load_entry("z2");
  auto S = from_rules(e);
  auto P = stacking_presentation(S);
  auto d = build_diagram(S, e.alphabet.parse("bbaBBA"));

  // Relabel one edge of the second face.
  auto        bad = d;
  DartId      x   = bad.faces[1].front();
  Letter      old = bad.darts[x].letter;
  Letter      now = old < 2 ? 2 : 0;
  bad.darts[x].letter     = now;
  bad.darts[x ^ 1].letter = e.alphabet.inverse(now);
  auto report             = validate_diagram(bad, P);
  CHECK_FALSE(report.ok());
  CHECK(report.bad_face.has_value());

  VanKampenDiagram apart = VanKampenDiagram::single_vertex(e.alphabet);
  apart.vertex_count     = 2;
  report                 = validate_diagram(apart, P);
  CHECK_FALSE(report.ok());
  CHECK(std::any_of(report.problems.begin(), report.problems.end(),
                    [](std::string const& s) { return s.find("connected") != std::string::npos; }));

  auto wrong_boundary = d;
  wrong_boundary.boundary.pop_back();
  CHECK_FALSE(validate_diagram(wrong_boundary, P).ok());

  auto lost_face = d;
  lost_face.faces.pop_back();
  CHECK_FALSE(validate_diagram(lost_face, P).ok());
}

TEST_CASE("diagram errors") {
  auto e = load_entry("z2");
  auto S = from_rules(e);
  CHECK_THROWS_AS(build_diagram(S, e.alphabet.parse("ab")), Error);
  CHECK_THROWS_AS(build_edge_diagram(S, e.alphabet.parse("ba"), 0), Error);
  try {
    build_edge_diagram(S, e.alphabet.parse("bb"), 0, {1, 1000});
    FAIL("expected a budget error");
  } catch (Error const& err) {
    CHECK(err.kind() == ErrorKind::budget);
  }
  CHECK_NOTHROW(build_edge_diagram(S, e.alphabet.parse("bb"), 0, {2, 1000}));
}

TEST_CASE("JSON round trip") {
  auto e = load_entry("klein");
  auto S = from_rules(e);
  auto d = build_diagram(S, e.alphabet.parse("abaB"));
  CHECK(validate_diagram(d, stacking_presentation(S)).ok());
  auto text = diagram_json(d);
  CHECK(parse_diagram_json(text) == d);
  CHECK(diagram_json(parse_diagram_json(text)) == text);
  CHECK(diagram_dot(d).find("digraph diagram") == 0);

  auto empty = VanKampenDiagram::single_vertex(e.alphabet);
  CHECK(parse_diagram_json(diagram_json(empty)) == empty);

  try {
    parse_diagram_json("{\"letters\": [");
    FAIL("expected a parse error");
  } catch (Error const& err) {
    CHECK(err.kind() == ErrorKind::parse);
  }
  auto broken = text;
  broken.replace(broken.find("\"origin\": 0"), 11, "\"origin\": 99");
  CHECK_THROWS_AS(parse_diagram_json(broken), Error);
}

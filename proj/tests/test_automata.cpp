#include <functional>
#include <random>
#include <set>

#include "autostack/async.hpp"
#include "autostack/automata.hpp"
#include "autostack/error.hpp"
#include "autostack/sync.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace autostack;
using autostack::testing::all_words;
using autostack::testing::random_word;

namespace {

  Dfa random_dfa(std::mt19937& rng, std::size_t alphabet_size, std::size_t states) {
    Dfa                                        d(alphabet_size, states);
    std::uniform_int_distribution<State>       target(0, states - 1);
    std::bernoulli_distribution                coin(0.4);
    for (State s = 0; s < states; ++s) {
      d.set_accepting(s, coin(rng));
      for (Symbol x = 0; x < alphabet_size; ++x) {
        d.set_next(s, x, target(rng));
      }
    }
    return d;
  }

  // Brute-force membership by splitting.
  bool in_concat(Dfa const& L1, Dfa const& L2, Word const& w) {
    for (std::size_t i = 0; i <= w.size(); ++i) {
      if (L1.accepts(Word(w.begin(), w.begin() + i))
          && L2.accepts(Word(w.begin() + i, w.end()))) {
        return true;
      }
    }
    return false;
  }

  bool in_star(Dfa const& L, Word const& w) {
    std::vector<bool> ok(w.size() + 1, false);
    ok[0] = true;
    for (std::size_t j = 1; j <= w.size(); ++j) {
      for (std::size_t i = 0; i < j && !ok[j]; ++i) {
        ok[j] = ok[i] && L.accepts(Word(w.begin() + i, w.begin() + j));
      }
    }
    return ok[w.size()];
  }

  Word image_of(std::vector<Word> const& h, Word const& w) {
    Word out;
    for (Letter x : w) {
      out.insert(out.end(), h[x].begin(), h[x].end());
    }
    return out;
  }

  // {w : w contains aa} over {a, b}.
  Dfa contains_aa() {
    Dfa d(2, 3);
    d.set_next(0, 0, 1);
    d.set_next(0, 1, 0);
    d.set_next(1, 0, 2);
    d.set_next(1, 1, 0);
    d.set_next(2, 0, 2);
    d.set_next(2, 1, 2);
    d.set_accepting(2);
    return d;
  }

  // a* b over {a, b}.
  Dfa a_star_b() {
    return concatenation(star(Dfa::single_word(2, {0})), Dfa::single_word(2, {1}));
  }

  struct AsyncBuilder {
    std::size_t             base;
    std::vector<StateKind>  kinds;
    std::vector<std::tuple<State, Symbol, State>> moves;

    State add(StateKind k) {
      kinds.push_back(k);
      return static_cast<State>(kinds.size() - 1);
    }

    AsyncAutomaton build(State start) const {
      Dfa   d(base + 1, kinds.size());
      State fail_state = 0;
      for (State q = 0; q < kinds.size(); ++q) {
        if (kinds[q] == StateKind::fail) {
          fail_state = q;
        }
      }
      for (State q = 0; q < kinds.size(); ++q) {
        for (Symbol x = 0; x <= base; ++x) {
          d.set_next(q, x, fail_state);
        }
      }
      for (auto [q, x, t] : moves) {
        d.set_next(q, x, t);
      }
      d.set_start(start);
      return AsyncAutomaton(base, d, kinds);
    }
  };

  // {(a^n, b^n)} reading the tapes alternately.
  AsyncAutomaton anbn() {
    AsyncBuilder b{2, {}, {}};
    State        q0 = b.add(StateKind::read_first);
    State        q1 = b.add(StateKind::read_second);
    State        q2 = b.add(StateKind::read_second_done);
    State        qf = b.add(StateKind::accept);
    b.add(StateKind::fail);
    b.moves = {{q0, 0, q1}, {q1, 1, q0}, {q0, 2, q2}, {q2, 2, qf}};
    return b.build(q0);
  }

  // {(w, w) : w in a*} over the one-letter alphabet.
  AsyncAutomaton diagonal_a() {
    AsyncBuilder b{1, {}, {}};
    State        q0 = b.add(StateKind::read_first);
    State        q1 = b.add(StateKind::read_second);
    State        q2 = b.add(StateKind::read_second_done);
    State        qf = b.add(StateKind::accept);
    b.add(StateKind::fail);
    b.moves = {{q0, 0, q1}, {q1, 0, q0}, {q0, 1, q2}, {q2, 1, qf}};
    return b.build(q0);
  }

}  // namespace

TEST_CASE("finite languages and basic membership") {
  auto L = Dfa::finite_language(2, {{0}, {1}});
  CHECK(L.accepts({0}));
  CHECK(L.accepts({1}));
  CHECK_FALSE(L.accepts({}));
  CHECK_FALSE(L.accepts({0, 1}));
  auto U = union_of(Dfa::single_word(2, {0}), Dfa::single_word(2, {1}));
  CHECK(equivalent(U, L));
  CHECK(enumerate_language(U, 4) == std::vector<Word>{{0}, {1}});
  CHECK(Dfa::empty_language(2).is_empty());
  CHECK_FALSE(Dfa::universal(2).is_empty());
}

TEST_CASE("complement is an involution") {
  auto ab_star = star(Dfa::single_word(2, {0, 1}));
  CHECK(equivalent(complement(complement(ab_star)), ab_star));
}

TEST_CASE("intersection with a complement against brute force") {
  auto L = intersection(Dfa::universal(2), complement(contains_aa()));
  for (auto const& w : all_words(2, 7)) {
    bool has_aa = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      has_aa = has_aa || (w[i] == 0 && w[i + 1] == 0);
    }
    CHECK(L.accepts(w) == !has_aa);
  }
}

TEST_CASE("binary operations agree with brute force on random automata") {
  std::mt19937 rng(2024);
  auto const   words = all_words(2, 7);
  for (int trial = 0; trial < 25; ++trial) {
    Dfa  L1 = random_dfa(rng, 2, 1 + trial % 5);
    Dfa  L2 = random_dfa(rng, 2, 1 + (trial * 3) % 4);
    auto I  = intersection(L1, L2);
    auto U  = union_of(L1, L2);
    auto D  = difference(L1, L2);
    auto C  = concatenation(L1, L2);
    auto S  = star(L1);
    auto M  = minimize(L1);
    for (auto const& w : words) {
      bool a = L1.accepts(w), b = L2.accepts(w);
      REQUIRE(I.accepts(w) == (a && b));
      REQUIRE(U.accepts(w) == (a || b));
      REQUIRE(D.accepts(w) == (a && !b));
      REQUIRE(C.accepts(w) == in_concat(L1, L2, w));
      REQUIRE(S.accepts(w) == in_star(L1, w));
      REQUIRE(M.accepts(w) == a);
    }
    // De Morgan up to equivalence.
    CHECK(equivalent(complement(U), intersection(complement(L1), complement(L2))));
    CHECK(minimize(M) == M);
    CHECK(M.num_states() <= L1.num_states());
  }
}

TEST_CASE("minimization is canonical") {
  // Two different automata for "even number of a".
  Dfa d1(2, 2);
  d1.set_accepting(0);
  d1.set_next(0, 0, 1);
  d1.set_next(1, 0, 0);
  d1.set_next(0, 1, 0);
  d1.set_next(1, 1, 1);
  Dfa d2(2, 4);
  d2.set_start(2);
  d2.set_accepting(2);
  d2.set_accepting(0);
  for (State s = 0; s < 4; ++s) {
    d2.set_next(s, 1, s);
  }
  d2.set_next(2, 0, 1);
  d2.set_next(1, 0, 0);
  d2.set_next(0, 0, 3);
  d2.set_next(3, 0, 2);
  CHECK(minimize(d1) == minimize(d2));
  CHECK(minimize(d2).num_states() == 2);
}

TEST_CASE("homomorphic preimage and image") {
  std::mt19937 rng(99);
  auto const   words = all_words(2, 6);
  for (int trial = 0; trial < 15; ++trial) {
    Dfa L = random_dfa(rng, 2, 2 + trial % 4);
    // Identity image.
    CHECK(equivalent(hom_image(L, {{0}, {1}}, 2), L));
    // A non-erasing image, checked against images of words no longer than
    // the target.
    std::vector<Word> h = {random_word(rng, 2, 2), random_word(rng, 2, 2)};
    for (auto& img : h) {
      if (img.empty()) {
        img = {1};
      }
    }
    auto           image = hom_image(L, h, 2);
    std::set<Word> seen;
    for (auto const& x : words) {
      if (L.accepts(x)) {
        seen.insert(image_of(h, x));
      }
    }
    for (auto const& y : words) {
      REQUIRE(image.accepts(y) == (seen.count(y) > 0));
    }
    auto pre = hom_preimage(L, h);
    for (auto const& x : words) {
      REQUIRE(pre.accepts(x) == L.accepts(image_of(h, x)));
    }
  }
}

TEST_CASE("erasing image") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Dfa  L     = random_dfa(rng, 2, 3);
    auto image = hom_image(L, {{}, {}}, 2);
    if (L.is_empty()) {
      CHECK(image.is_empty());
    } else {
      CHECK(equivalent(image, Dfa::single_word(2, {})));
    }
  }
}

TEST_CASE("quotient by a word") {
  auto L = Dfa::finite_language(2, {{0, 1}, {1}});
  CHECK(equivalent(quotient_by_word(L, {1}), Dfa::finite_language(2, {{0}, {}})));
  CHECK(equivalent(quotient_by_word(L, {}), L));
  auto ab_star = star(Dfa::single_word(2, {0, 1}));
  auto q       = quotient_by_word(ab_star, {0, 1});
  for (auto const& x : all_words(2, 8)) {
    CHECK(q.accepts(x) == ab_star.accepts(concat(x, Word{0, 1})));
  }
  CHECK(equivalent(q, ab_star));

  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    Dfa  R = random_dfa(rng, 2, 4);
    Word w = random_word(rng, 2, 3);
    auto Q = quotient_by_word(R, w);
    for (auto const& x : all_words(2, 7)) {
      REQUIRE(Q.accepts(x) == R.accepts(concat(x, w)));
    }
  }
}

TEST_CASE("enumeration order") {
  CHECK(enumerate_language(Dfa::empty_language(2), 5).empty());
  CHECK(enumerate_language(Dfa::single_word(2, {}), 3) == std::vector<Word>{{}});
  CHECK(enumerate_language(a_star_b(), 3)
        == std::vector<Word>{{1}, {0, 1}, {0, 0, 1}});
  Word w;
  CHECK(shortest_word(a_star_b(), w));
  CHECK(w == Word{1});
  CHECK_FALSE(shortest_word(Dfa::empty_language(2), w));
}

TEST_CASE("prefix closure") {
  CHECK(is_prefix_closed(complement(contains_aa())));
  CHECK_FALSE(is_prefix_closed(a_star_b()));
  CHECK(is_prefix_closed(Dfa::universal(3)));
}

TEST_CASE("ending_with") {
  auto E = ending_with(2, {0, 1});
  for (auto const& w : all_words(2, 6)) {
    CHECK(E.accepts(w) == is_suffix({0, 1}, w));
  }
}

TEST_CASE("dot export lists every transition") {
  auto text = to_dot(a_star_b(), [](Symbol x) { return std::string(1, "ab"[x]); });
  CHECK(text.find("digraph") == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') > 4);
}

TEST_CASE("padding") {
  PaddedAlphabet P(2, 2);
  CHECK(P.size() == 8);
  CHECK(P.decode(P.encode({0, 2})) == std::vector<Letter>{0, 2});
  auto padded = pad_tuple(P, {{0, 1}, {1}});
  CHECK(padded == Word{P.encode({0, 1}), P.encode({1, 2})});
  CHECK(pad_tuple(P, {{}, {}}).empty());
  CHECK(unpad(P, padded) == std::vector<Word>{{0, 1}, {1}});
  // "$" then a letter in the second coordinate.
  CHECK_THROWS_AS(unpad(P, {P.encode({0, 2}), P.encode({0, 1})}), Error);
  CHECK_THROWS_AS(P.encode({2, 2}), Error);
  CHECK_THROWS_AS(unpad(P, {8}), Error);

  PaddedAlphabet P3(3, 3);
  std::mt19937   rng(500);
  for (int i = 0; i < 500; ++i) {
    std::vector<Word> t = {random_word(rng, 3, 10), random_word(rng, 3, 10),
                           random_word(rng, 3, 10)};
    REQUIRE(unpad(P3, pad_tuple(P3, t)) == t);
  }
}

TEST_CASE("every relation constructor rejects malformed padded words") {
  std::mt19937 rng(3);
  auto         L1 = star(Dfa::single_word(2, {0}));
  auto         L2 = star(Dfa::single_word(2, {1}));
  std::vector<SyncRelation> relations = {
      diagonal(L1),
      diagonal(Dfa::universal(2)),
      cartesian_product({L1, L2}),
      cartesian_product({Dfa::universal(2), Dfa::universal(2)}),
      SyncRelation::finite(PaddedAlphabet(2, 2), {{{0}, {1, 1}}, {{}, {0}}}),
      diagonal_then(Dfa::universal(2), {{0, 1}, {}}),
      SyncRelation(PaddedAlphabet(2, 2), Dfa::universal(8)),
  };
  relations.push_back(union_of(relations[0], relations[2]));
  for (auto const& R : relations) {
    for (auto const& w : all_words(R.padded().size(), 4)) {
      bool malformed = false;
      try {
        unpad(R.padded(), w);
      } catch (Error const&) {
        malformed = true;
      }
      if (malformed) {
        REQUIRE_FALSE(R.dfa().accepts(w));
      }
    }
  }
}

TEST_CASE("diagonal") {
  auto D = diagonal(Dfa::single_word(2, {0}));
  CHECK(enumerate_relation(D, 3) == std::vector<std::vector<Word>>{{{0}, {0}}});
  CHECK(diagonal(Dfa::empty_language(2)).is_empty());
  auto Dab = diagonal(concatenation(star(Dfa::single_word(2, {0})),
                                    Dfa::single_word(2, {1})));
  CHECK(Dab.accepts({{0, 0, 1}, {0, 0, 1}}));
  CHECK_FALSE(Dab.accepts({{0, 0, 1}, {0, 1, 1}}));
  CHECK_FALSE(Dab.accepts({{0, 1}, {0, 0, 1}}));
}

TEST_CASE("cartesian product") {
  auto R = cartesian_product({Dfa::single_word(2, {0}), Dfa::single_word(2, {1, 1})});
  CHECK(enumerate_relation(R, 4) == std::vector<std::vector<Word>>{{{0}, {1, 1}}});
  CHECK(R.dfa().accepts({R.padded().encode({0, 1}), R.padded().encode({2, 1})}));
  CHECK(cartesian_product({Dfa::single_word(2, {0}), Dfa::empty_language(2)}).is_empty());

  auto L1 = star(Dfa::single_word(2, {0}));
  auto L2 = star(Dfa::single_word(2, {1}));
  auto P  = cartesian_product({L1, L2});
  for (auto const& u : all_words(2, 6)) {
    for (auto const& v : all_words(2, 6)) {
      REQUIRE(P.accepts({u, v}) == (L1.accepts(u) && L2.accepts(v)));
    }
  }
  // Enumeration matches brute-force pairing.
  std::set<std::vector<Word>> expected;
  for (auto const& u : all_words(2, 6)) {
    for (auto const& v : all_words(2, 6)) {
      if (L1.accepts(u) && L2.accepts(v)) {
        expected.insert({u, v});
      }
    }
  }
  auto listed = enumerate_relation(P, 6);
  CHECK(std::set<std::vector<Word>>(listed.begin(), listed.end()) == expected);
}

TEST_CASE("first projection of padded pairs") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    Dfa  L1  = random_dfa(rng, 2, 3);
    Dfa  L2  = random_dfa(rng, 2, 3);
    auto R   = intersection(cartesian_product({L1, L2}),
                          diagonal_then(Dfa::universal(2), {{}, {0}}));
    auto img = project(R, 0);
    std::set<Word> firsts;
    for (auto const& t : enumerate_relation(R, 7)) {
      firsts.insert(t[0]);
    }
    for (auto const& u : all_words(2, 6)) {
      REQUIRE(img.accepts(u) == (firsts.count(u) > 0));
    }
  }
}

TEST_CASE("asynchronous runs") {
  auto M   = anbn();
  auto run = async_run(M, {0, 0}, {1, 1});
  CHECK(run.accepted);
  CHECK(run.shuffle.size() == 6);
  std::vector<std::uint8_t> tapes;
  for (auto const& c : run.shuffle) {
    tapes.push_back(c.tape);
  }
  CHECK(tapes == std::vector<std::uint8_t>{1, 2, 1, 2, 1, 2});
  auto bad = async_run(M, {0, 0}, {1});
  CHECK_FALSE(bad.accepted);
  CHECK(bad.shuffle.back().is_fail());
  CHECK(async_run(M, {0, 0}, {1, 1}).shuffle == run.shuffle);
  CHECK_FALSE(async_accepts(M, {1}, {}));

  for (auto const& u : all_words(2, 5)) {
    for (auto const& v : all_words(2, 5)) {
      bool expected = u.size() == v.size()
                      && std::count(u.begin(), u.end(), 0) == long(u.size())
                      && std::count(v.begin(), v.end(), 1) == long(v.size());
      REQUIRE(async_accepts(M, u, v) == expected);
    }
  }
}

TEST_CASE("typing rules are enforced") {
  AsyncBuilder b{1, {}, {}};
  State        q0 = b.add(StateKind::read_first);
  State        qf = b.add(StateKind::accept);
  b.add(StateKind::fail);
  b.moves = {{q0, 1, qf}};  // Q1 on # must go to Q2#
  CHECK_THROWS_AS(b.build(q0), Error);
}

TEST_CASE("first projection of asynchronous automata") {
  // Search bound for v: 6 * C with C = 2 for these alternating machines.
  std::size_t const bound = 12;
  for (auto const& M : {anbn(), diagonal_a()}) {
    auto P = async_project_first(M);
    for (auto const& u : all_words(M.base_size(), 6)) {
      bool found = false;
      for (auto const& v : all_words(M.base_size(), std::min<std::size_t>(bound, 8))) {
        if (async_accepts(M, u, v)) {
          found = true;
          break;
        }
      }
      REQUIRE(P.accepts(u) == found);
    }
  }
  CHECK(equivalent(async_project_first(anbn()), star(Dfa::single_word(2, {0}))));

  // Empty language: the start state fails on everything.
  AsyncBuilder b{1, {}, {}};
  State        q0 = b.add(StateKind::read_first);
  b.add(StateKind::accept);
  b.add(StateKind::fail);
  CHECK(async_project_first(b.build(q0)).is_empty());
}

TEST_CASE("partner search and good states") {
  auto M = anbn();
  Word v;
  CHECK(async_partner(M, {0, 0, 0}, 10, v));
  CHECK(v == Word{1, 1, 1});
  CHECK_FALSE(async_partner(M, {0, 1}, 10, v));
  auto good = async_good_states(M);
  CHECK(good[0]);
  CHECK(good[1]);
  CHECK_FALSE(good[2]);  // Q2# is not an open state
  auto reach = async_reach_projection(M, 0);
  CHECK(equivalent(reach, star(Dfa::single_word(2, {0}))));
}

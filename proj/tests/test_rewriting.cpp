#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "autostack/error.hpp"
#include "autostack/rewriting.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace autostack;
using autostack::testing::all_words;
using autostack::testing::random_word;

namespace {

  Alphabet free2() {
    return Alphabet::paired({"a", "A", "b", "B"});
  }

  std::vector<Rule> free_rules(Alphabet const& A) {
    std::vector<Rule> rules;
    for (Letter x = 0; x < A.size(); ++x) {
      rules.push_back({{x, A.inverse(x)}, {}});
    }
    return rules;
  }

  std::vector<Rule> z2_rules(Alphabet const& A) {
    auto rules = free_rules(A);
    for (char const* r : {"ba ab", "bA Ab", "Ba aB", "BA AB"}) {
      std::string s(r);
      rules.push_back({A.parse(s.substr(0, 2)), A.parse(s.substr(3))});
    }
    return rules;
  }

  // Rewrites the rightmost occurrence of any lhs.
  Word rightmost_normal_form(std::vector<Rule> const& rules, Word w) {
    for (;;) {
      std::size_t best_pos  = 0;
      Rule const* best_rule = nullptr;
      for (auto const& r : rules) {
        if (r.lhs.size() > w.size()) {
          continue;
        }
        for (std::size_t i = w.size() - r.lhs.size() + 1; i-- > 0;) {
          if (std::equal(r.lhs.begin(), r.lhs.end(), w.begin() + i)) {
            if (best_rule == nullptr || i > best_pos) {
              best_pos  = i;
              best_rule = &r;
            }
            break;
          }
        }
      }
      if (best_rule == nullptr) {
        return w;
      }
      Word next(w.begin(), w.begin() + best_pos);
      next.insert(next.end(), best_rule->rhs.begin(), best_rule->rhs.end());
      next.insert(next.end(), w.begin() + best_pos + best_rule->lhs.size(), w.end());
      w = std::move(next);
    }
  }

  // No prefix of w is a left side.
  bool brute_irreducible(std::set<Word> const& lhs, Word const& w) {
    for (std::size_t i = 0; i <= w.size(); ++i) {
      if (lhs.count(Word(w.begin(), w.begin() + i))) {
        return false;
      }
    }
    return true;
  }

  // The three processed conditions checked on the enumerated rules.
  void brute_certify(PrefixRewritingSystem const& Q, std::size_t max_lhs) {
    auto const                 rules = Q.rules_up_to(max_lhs);
    std::map<Word, std::size_t> rhs_count;
    std::set<Word>             lhs;
    for (auto const& r : rules) {
      ++rhs_count[r.lhs];
      lhs.insert(r.lhs);
    }
    for (auto const& [w, count] : rhs_count) {
      INFO(Q.alphabet().format(w));
      CHECK(count == 1);
      for (std::size_t i = 0; i < w.size(); ++i) {
        CHECK(lhs.count(Word(w.begin(), w.begin() + i)) == 0);
      }
    }
    Alphabet const& A = Q.alphabet();
    for (Letter a = 0; a < A.size(); ++a) {
      CHECK(normal_form(Q, {a, A.inverse(a)}, 1000).empty());
    }
  }

}  // namespace

TEST_CASE("families are normalized to a unique split") {
  auto A = free2();
  PrefixRewritingSystem R(A, {{Dfa::universal(4), A.parse("aab"), A.parse("aB")}});
  REQUIRE(R.families().size() == 1);
  CHECK(R.families()[0].lhs_suffix == A.parse("ab"));
  CHECK(R.families()[0].rhs_suffix == A.parse("B"));
  CHECK(R.contains({A.parse("Baab"), A.parse("BaB")}));
  CHECK_FALSE(R.contains({A.parse("ab"), A.parse("B")}));
  CHECK_THROWS_AS(PrefixRewritingSystem(A, {{Dfa::universal(4), A.parse("a"), A.parse("a")}}),
                  Error);
  CHECK_THROWS_AS(PrefixRewritingSystem(A, {{Dfa::universal(3), A.parse("a"), {}}}), Error);
  CHECK_THROWS_AS(
      PrefixRewritingSystem(A, {{Dfa::universal(4), A.parse("aaa"), {}}}, 2), Error);
}

TEST_CASE("finite systems list their rules") {
  auto A = free2();
  auto R = PrefixRewritingSystem::finite(A, {{A.parse("ab"), A.parse("b")}, {A.parse("B"), {}}});
  CHECK(R.is_finite());
  auto rules = R.rules_up_to(5);
  REQUIRE(rules.size() == 2);
  CHECK(rules[0].lhs == A.parse("B"));
  CHECK(rules[1].lhs == A.parse("ab"));
  CHECK(boundedness(R) == 2);
  CHECK_FALSE(lift_srs(StringRewritingSystem(A, free_rules(A))).is_finite());
}

TEST_CASE("redex choice and reduction traces") {
  auto A = free2();
  auto R = PrefixRewritingSystem::finite(
      A, {{A.parse("ab"), A.parse("b")}, {A.parse("a"), A.parse("B")}, {A.parse("ab"), A.parse("A")}});
  auto redex = find_redex(R, A.parse("abb"));
  REQUIRE(redex);
  CHECK(redex->rule.lhs == A.parse("a"));
  CHECK_FALSE(find_redex(R, A.parse("ba")));

  auto R2 = PrefixRewritingSystem::finite(
      A, {{A.parse("ab"), A.parse("b")}, {A.parse("ab"), A.parse("A")}});
  redex = find_redex(R2, A.parse("abB"));
  REQUIRE(redex);
  CHECK(redex->rule.rhs == A.parse("A"));

  auto lift  = lift_srs(StringRewritingSystem(A, free_rules(A)));
  auto trace = reduce(lift, A.parse("abBAb"), 100);
  CHECK(trace.complete);
  CHECK(trace.final == A.parse("b"));
  CHECK(trace.steps.size() == 2);
  CHECK(trace.steps[0].rule.lhs == A.parse("abB"));
  CHECK(trace.steps[0].suffix == A.parse("Ab"));
  CHECK(prl(lift, A.parse("abBAb"), 100) == 2);

  auto loop = PrefixRewritingSystem::finite(A, {{A.parse("a"), A.parse("b")}, {A.parse("b"), A.parse("a")}});
  CHECK_FALSE(reduce(loop, A.parse("a"), 10).complete);
  CHECK_THROWS_AS(normal_form(loop, A.parse("a"), 10), Error);
}

TEST_CASE("lifted systems agree with an independent rewriting order") {
  auto A = free2();
  std::mt19937 rng(11);
  for (auto const& rules : {free_rules(A), z2_rules(A)}) {
    StringRewritingSystem S(A, rules);
    auto                  lift = lift_srs(S);
    CHECK(lift.bound() == 2);
    for (int i = 0; i < 300; ++i) {
      Word w = random_word(rng, 4, 14);
      CHECK(normal_form(lift, w, 100000) == rightmost_normal_form(rules, w));
      CHECK(srs_normal_form(S, w, 100000) == rightmost_normal_form(rules, w));
    }
  }
}

TEST_CASE("irreducible language matches enumeration") {
  auto A = free2();
  for (auto const& rules : {free_rules(A), z2_rules(A)}) {
    auto R   = lift_srs(StringRewritingSystem(A, rules));
    auto irr = irreducible_language(R);
    CHECK(equivalent(irr, irreducible_language_from_padding(R)));
    std::set<Word> lhs;
    for (auto const& r : R.rules_up_to(6)) {
      lhs.insert(r.lhs);
    }
    for (auto const& w : all_words(4, 6)) {
      CHECK(irr.accepts(w) == brute_irreducible(lhs, w));
    }
  }
}

TEST_CASE("local confluence") {
  auto A = free2();
  CHECK(check_local_confluence(StringRewritingSystem(A, free_rules(A))).ok());
  CHECK(check_local_confluence(StringRewritingSystem(A, z2_rules(A))).ok());

  Alphabet s3({"a", "b"}, {{"a", "a"}, {"b", "b"}});
  StringRewritingSystem good(
      s3, {{s3.parse("aa"), {}}, {s3.parse("bb"), {}}, {s3.parse("bab"), s3.parse("aba")}});
  auto report = check_local_confluence(good);
  CHECK(report.ok());
  CHECK(report.critical_pairs > 0);

  StringRewritingSystem growing(s3, {{s3.parse("aba"), s3.parse("bab")}});
  CHECK_FALSE(check_local_confluence(growing).ok());

  // ab = ba is missing, so baa has two normal forms.
  StringRewritingSystem split(s3, {{s3.parse("aa"), {}}, {s3.parse("ba"), s3.parse("a")}});
  CHECK_FALSE(check_local_confluence(split).ok());
}

TEST_CASE("processing the lift of a group system") {
  auto A = free2();
  for (auto const& rules : {free_rules(A), z2_rules(A)}) {
    auto R = lift_srs(StringRewritingSystem(A, rules));
    auto P = process(R);
    CHECK(P.certificate.ok());
    CHECK(P.inverse_normal_forms.empty());
    CHECK(equivalent(irreducible_language(P.system), irreducible_language(R)));
    brute_certify(P.system, 8);
  }
}

TEST_CASE("processing drops junk rules and duplicate left sides") {
  auto A     = free2();
  auto rules = free_rules(A);
  rules.push_back({A.parse("bBa"), A.parse("a")});
  rules.push_back({A.parse("aA"), A.parse("bB")});
  auto R = lift_srs(StringRewritingSystem(A, rules));
  auto P = process(R);
  CHECK(P.certificate.ok());
  CHECK_FALSE(P.system.contains({A.parse("bBa"), A.parse("a")}));
  CHECK_FALSE(P.system.contains({A.parse("aA"), A.parse("bB")}));
  CHECK(P.system.contains({A.parse("aA"), {}}));
  CHECK(P.system.contains({A.parse("baA"), A.parse("b")}));
  brute_certify(P.system, 8);

  auto bad = certify_processed(R, 1000);
  CHECK_FALSE(bad.prefixes);
  CHECK_FALSE(bad.unique_rhs);
  CHECK_FALSE(bad.witness.empty());
}

TEST_CASE("processing adds formal inverses for a monoid presentation") {
  Alphabet B({"a"}, {});
  auto     R = lift_srs(StringRewritingSystem(B, {{B.parse("aaa"), {}}}));
  auto     P = process(R);
  auto const& A = P.system.alphabet();
  REQUIRE(A.size() == 2);
  CHECK(A.name(1) == "a^");
  REQUIRE(P.inverse_normal_forms.size() == 1);
  CHECK(P.inverse_normal_forms[0].second == A.parse("aa"));

  auto rules = P.system.rules_up_to(8);
  std::vector<Rule> expected{{A.parse("aaa"), {}},
                             {A.parse("a^"), A.parse("aa")},
                             {A.parse("aa^"), {}},
                             {A.parse("aaa^"), A.parse("a")}};
  std::sort(expected.begin(), expected.end(), [](Rule const& x, Rule const& y) {
    return shortlex_less(x.lhs, y.lhs) || (x.lhs == y.lhs && shortlex_less(x.rhs, y.rhs));
  });
  CHECK(rules == expected);
  CHECK(P.system.bound() == 3);
  brute_certify(P.system, 8);

  // a^ behaves as a^2 in Z/3.
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    Word        w     = random_word(rng, 2, 12);
    std::size_t power = 0;
    for (Letter x : w) {
      power += x == 0 ? 1 : 2;
    }
    CHECK(normal_form(P.system, w, 10000) == Word(power % 3, 0));
  }
}

TEST_CASE("processing rejects a non-convergent system") {
  Alphabet B({"a"}, {});
  auto     R = PrefixRewritingSystem::finite(B, {{B.parse("aa"), {}}, {B.parse("aaa"), B.parse("a")}});
  CHECK_NOTHROW(process(R));
  auto broken = PrefixRewritingSystem::finite(B, {{B.parse("aa"), B.parse("a")}});
  CHECK_THROWS_AS(process(broken), Error);
}

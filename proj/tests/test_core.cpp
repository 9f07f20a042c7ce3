#include <random>

#include "autostack/core.hpp"
#include "autostack/error.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace autostack;
using autostack::testing::random_word;

namespace {
  Alphabet free2() {
    return Alphabet::paired({"a", "A", "b", "B"});
  }

  // Deletes a random adjacent inverse pair until none is left.
  Word random_order_reduce(Alphabet const& alphabet, Word w, std::mt19937& rng) {
    while (true) {
      std::vector<std::size_t> spots;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (alphabet.has_inverse(w[i]) && alphabet.inverse(w[i]) == w[i + 1]) {
          spots.push_back(i);
        }
      }
      if (spots.empty()) {
        return w;
      }
      std::uniform_int_distribution<std::size_t> pick(0, spots.size() - 1);
      auto                                       i = spots[pick(rng)];
      w.erase(w.begin() + i, w.begin() + i + 2);
    }
  }
}  // namespace

TEST_CASE("alphabet parsing and formatting") {
  auto A = free2();
  CHECK(A.size() == 4);
  CHECK(A.inverse(0) == 1);
  CHECK(A.inverse(3) == 2);
  CHECK(A.inverse_closed());
  CHECK(A.parse("aBbA") == Word{0, 3, 2, 1});
  CHECK(A.parse("1").empty());
  CHECK(A.parse("").empty());
  CHECK(A.format({}) == "1");
  CHECK(A.format({2, 0}) == "ba");
  CHECK_THROWS_AS(A.parse("c"), Error);

  Alphabet multi({"x1", "x2", "X1", "X2"}, {{"x1", "X1"}, {"x2", "X2"}});
  CHECK(multi.parse("x1X1 x2") == Word{0, 2, 1});
  CHECK(multi.format({0, 1}) == "x1 x2");
}

TEST_CASE("reserved symbols are rejected") {
  for (char const* bad : {"$", "#", "1", "_", "a b", "(", "x,y", "->", "a$"}) {
    CHECK_THROWS_AS(Alphabet({"a", bad}, {}), Error);
  }
  CHECK_THROWS_AS(Alphabet({"a", "a"}, {}), Error);
  CHECK_THROWS_AS(Alphabet({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}}), Error);
}

TEST_CASE("self-inverse letters") {
  Alphabet s3({"a", "b"}, {{"a", "a"}, {"b", "b"}});
  CHECK(s3.inverse(0) == 0);
  CHECK(formal_inverse(s3, {0, 1}) == Word{1, 0});
  CHECK(free_reduce(s3, {0, 1, 1, 0}).empty());
}

TEST_CASE("formal inverse") {
  auto A = free2();
  CHECK(formal_inverse(A, {}).empty());
  CHECK(formal_inverse(A, A.parse("ab")) == A.parse("BA"));
  CHECK(formal_inverse(A, formal_inverse(A, A.parse("aBa"))) == A.parse("aBa"));
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto w = random_word(rng, 4, 12);
    CHECK(formal_inverse(A, w).size() == w.size());
    CHECK(formal_inverse(A, formal_inverse(A, w)) == w);
  }
}

TEST_CASE("free reduction") {
  auto A = free2();
  CHECK(free_reduce(A, A.parse("aA")).empty());
  CHECK(free_reduce(A, A.parse("aBbA")).empty());
  CHECK(free_reduce(A, A.parse("abA")) == A.parse("abA"));
}

TEST_CASE("free reduction is idempotent and independent of deletion order") {
  auto         A = free2();
  std::mt19937 rng(11);
  for (int i = 0; i < 1000; ++i) {
    auto w = random_word(rng, 4, 12);
    auto r = free_reduce(A, w);
    CHECK(free_reduce(A, r) == r);
    CHECK(random_order_reduce(A, w, rng) == r);
  }
}

TEST_CASE("inverse completion adjoins formal inverses") {
  Alphabet monoid({"a"}, {});
  CHECK_FALSE(monoid.inverse_closed());
  auto full = monoid.inverse_completion();
  CHECK(full.size() == 2);
  CHECK(full.name(1) == "a^");
  CHECK(full.inverse(0) == 1);
  CHECK(full.inverse_closed());
}

TEST_CASE("shortlex order") {
  CHECK(shortlex_less({1}, {0, 0}));
  CHECK(shortlex_less({0, 1}, {1, 0}));
  CHECK_FALSE(shortlex_less({0}, {0}));
  CHECK(common_prefix_length({0, 1, 2}, {0, 1, 3}) == 2);
  CHECK(is_prefix({0}, {0, 1}));
  CHECK(is_suffix({1}, {0, 1}));
}

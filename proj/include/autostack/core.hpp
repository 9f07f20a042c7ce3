// Alphabets with inversion, words, free reduction and the group-oracle
// interface.
//
// Letters are interned as small integers in declaration order; that order is
// the total order used for every lexicographic tie-break in the library.

#ifndef AUTOSTACK_CORE_HPP_
#define AUTOSTACK_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace autostack {

  using Letter = std::uint16_t;
  using Word   = std::vector<Letter>;

  inline constexpr Letter kNoInverse = 0xFFFF;

  //! A finite ordered set of named letters with a (partial) involution.
  //!
  //! When every letter has an inverse the alphabet is inverse-closed, which is
  //! what groups need; rewriting systems over monoid generating sets may leave
  //! some letters without one.
  class Alphabet {
   public:
    Alphabet() = default;

    //! Throws on duplicate names, reserved symbols ("$", "#", "1", "_",
    //! anything containing whitespace, parentheses, commas or "->"), or an
    //! inverse pair that is not an involution.
    Alphabet(std::vector<std::string> const&                            names,
             std::vector<std::pair<std::string, std::string>> const& inverses);

    //! Pairs names[0] with names[1], names[2] with names[3], and so on.
    static Alphabet paired(std::vector<std::string> const& names);

    std::size_t size() const noexcept {
      return _names.size();
    }

    std::string const& name(Letter x) const {
      return _names.at(x);
    }

    std::vector<std::string> const& names() const noexcept {
      return _names;
    }

    std::optional<Letter> find(std::string_view name) const;

    bool has_inverse(Letter x) const {
      return _inv.at(x) != kNoInverse;
    }

    //! Throws if `x` has no inverse.
    Letter inverse(Letter x) const;

    bool inverse_closed() const noexcept;

    //! Parses whitespace-separated tokens, each split greedily into the
    //! longest matching letter names.  "1" (or an empty string) is the empty
    //! word.
    Word parse(std::string_view text) const;

    //! Letters are concatenated when every name is a single character and
    //! space separated otherwise; the empty word is "1".
    std::string format(Word const& w) const;

    //! Returns a copy with formal inverse letters "x^" adjoined for each
    //! letter lacking an inverse.
    Alphabet inverse_completion() const;

    bool operator==(Alphabet const& that) const = default;

   private:
    std::vector<std::string> _names;
    std::vector<Letter>      _inv;
  };

  bool is_reserved_symbol(std::string_view name);

  //! a_m^-1 ... a_1^-1
  Word formal_inverse(Alphabet const& alphabet, Word const& w);

  //! Deletes adjacent x x^-1 pairs until none remain.
  Word free_reduce(Alphabet const& alphabet, Word const& w);

  bool shortlex_less(Word const& u, Word const& v);

  Word concat(Word u, Word const& v);

  inline Word concat(Word u, Letter x) {
    u.push_back(x);
    return u;
  }

  bool is_prefix(Word const& prefix, Word const& w);
  bool is_suffix(Word const& suffix, Word const& w);
  std::size_t common_prefix_length(Word const& u, Word const& v);

  struct Presentation {
    Alphabet          alphabet;
    std::vector<Word> relators;
  };

  //! Canonical evaluation of words into a group.  Elements are opaque integer
  //! vectors; two words are equal in the group iff their images are equal.
  class GroupOracle {
   public:
    using Element = std::vector<std::int64_t>;

    virtual ~GroupOracle() = default;

    virtual Element eval(Word const& w) const = 0;

    bool is_identity(Word const& w) const {
      return eval(w) == eval(Word{});
    }

    bool equal(Word const& u, Word const& v) const {
      return eval(u) == eval(v);
    }
  };

}  // namespace autostack

#endif  // AUTOSTACK_CORE_HPP_

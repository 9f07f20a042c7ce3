// Padded tuple alphabets and synchronously regular relations.
//
// A padded symbol over a base alphabet of size m and arity n is a tuple
// (x_1, ..., x_n) with each x_i in 0 .. m, where m stands for the pad "$".
// Tuples are encoded in mixed radix with the first coordinate most
// significant, so symbol order is lexicographic order on tuples with "$"
// largest.  The all-pad tuple would be the largest code and is excluded.

#ifndef AUTOSTACK_SYNC_HPP_
#define AUTOSTACK_SYNC_HPP_

#include <cstddef>
#include <vector>

#include "autostack/automata.hpp"
#include "autostack/core.hpp"

namespace autostack {

  class PaddedAlphabet {
   public:
    PaddedAlphabet() = default;
    PaddedAlphabet(std::size_t base_size, std::size_t arity);

    std::size_t base_size() const noexcept {
      return _base;
    }

    std::size_t arity() const noexcept {
      return _arity;
    }

    //! Number of padded symbols, (m + 1)^n - 1.
    std::size_t size() const noexcept {
      return _size;
    }

    //! The coordinate value standing for "$".
    Letter pad() const noexcept {
      return static_cast<Letter>(_base);
    }

    Symbol encode(std::vector<Letter> const& tuple) const;
    std::vector<Letter> decode(Symbol x) const;
    Letter coordinate(Symbol x, std::size_t i) const;

    bool operator==(PaddedAlphabet const&) const = default;

   private:
    std::size_t _base  = 0;
    std::size_t _arity = 0;
    std::size_t _size  = 0;
  };

  //! Zips the words, padding the shorter ones with "$".
  Word pad_tuple(PaddedAlphabet const& padded, std::vector<Word> const& words);

  //! Inverse of pad_tuple.  Throws on a "$" followed by a letter in the same
  //! coordinate or an out-of-range symbol.
  std::vector<Word> unpad(PaddedAlphabet const& padded, Word const& w);

  //! Accepts exactly the padded words in which no coordinate resumes after
  //! a "$".
  Dfa well_formed(PaddedAlphabet const& padded);

  class SyncRelation {
   public:
    SyncRelation() = default;

    //! Intersects `dfa` with the well-formedness automaton and minimizes.
    SyncRelation(PaddedAlphabet const& padded, Dfa const& dfa);

    static SyncRelation empty(PaddedAlphabet const& padded);
    static SyncRelation finite(PaddedAlphabet const&          padded,
                               std::vector<std::vector<Word>> tuples);

    PaddedAlphabet const& padded() const noexcept {
      return _padded;
    }

    Dfa const& dfa() const noexcept {
      return _dfa;
    }

    std::size_t arity() const noexcept {
      return _padded.arity();
    }

    bool accepts(std::vector<Word> const& tuple) const;

    bool is_empty() const {
      return _dfa.is_empty();
    }

    bool operator==(SyncRelation const&) const = default;

   private:
    PaddedAlphabet _padded;
    Dfa            _dfa;
  };

  SyncRelation union_of(SyncRelation const& R1, SyncRelation const& R2);
  SyncRelation intersection(SyncRelation const& R1, SyncRelation const& R2);
  SyncRelation difference(SyncRelation const& R1, SyncRelation const& R2);

  //! {mu(w, ..., w) : w in L} with `arity` copies.
  SyncRelation diagonal(Dfa const& L, std::size_t arity = 2);

  //! Delta(L) . mu(suffix), the padded words mu(w s_1, ..., w s_n) for w in L.
  SyncRelation diagonal_then(Dfa const& L, std::vector<Word> const& suffix);

  //! mu(L_1 x ... x L_n), as the intersection of the coordinate preimages of
  //! L_i $*.
  SyncRelation cartesian_product(std::vector<Dfa> const& languages);

  //! The i-th coordinate language (pads dropped).
  Dfa project(SyncRelation const& R, std::size_t i);

  //! Tuples whose padded length is at most max_len, in length-then-lex order
  //! of their padded words.
  std::vector<std::vector<Word>> enumerate_relation(SyncRelation const& R,
                                                    std::size_t max_len);

}  // namespace autostack

#endif  // AUTOSTACK_SYNC_HPP_

// Deterministic finite automata over small integer alphabets and the regular
// language operations built on them.
//
// Symbols are the integers 0 .. alphabet_size() - 1.  For plain languages over
// an Alphabet these are the letters themselves; padded tuple alphabets encode
// their symbols as described in sync.hpp.

#ifndef AUTOSTACK_AUTOMATA_HPP_
#define AUTOSTACK_AUTOMATA_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "autostack/core.hpp"

namespace autostack {

  using State  = std::uint32_t;
  using Symbol = Letter;

  //! A complete DFA: every state has a transition on every symbol.
  class Dfa {
   public:
    Dfa() : Dfa(0, 1) {}

    //! `num_states` states, all transitions to state 0, nothing accepting,
    //! start state 0.
    Dfa(std::size_t alphabet_size, std::size_t num_states);

    static Dfa empty_language(std::size_t alphabet_size);
    static Dfa universal(std::size_t alphabet_size);
    static Dfa single_word(std::size_t alphabet_size, Word const& w);
    static Dfa finite_language(std::size_t              alphabet_size,
                               std::vector<Word> const& words);

    std::size_t alphabet_size() const noexcept {
      return _alphabet_size;
    }

    std::size_t num_states() const noexcept {
      return _accept.size();
    }

    State start() const noexcept {
      return _start;
    }

    void set_start(State s) {
      _start = s;
    }

    State next(State s, Symbol x) const {
      return _delta[static_cast<std::size_t>(s) * _alphabet_size + x];
    }

    void set_next(State s, Symbol x, State t) {
      _delta[static_cast<std::size_t>(s) * _alphabet_size + x] = t;
    }

    bool accepting(State s) const {
      return _accept[s];
    }

    void set_accepting(State s, bool value = true) {
      _accept[s] = value;
    }

    State add_state();

    State run(State s, Word const& w) const;

    bool accepts(Word const& w) const {
      return _accept[run(_start, w)];
    }

    bool is_empty() const;

    //! States from which some accepting state is reachable.
    std::vector<bool> live_states() const;

    bool operator==(Dfa const& that) const = default;

   private:
    std::size_t        _alphabet_size;
    State              _start = 0;
    std::vector<State> _delta;
    std::vector<bool>  _accept;
  };

  //! Nondeterministic automaton with epsilon moves, used as an intermediate
  //! for concatenation, star and homomorphic images.
  class Nfa {
   public:
    explicit Nfa(std::size_t alphabet_size) : _alphabet_size(alphabet_size) {}

    static Nfa from_dfa(Dfa const& dfa);

    std::size_t alphabet_size() const noexcept {
      return _alphabet_size;
    }

    std::size_t num_states() const noexcept {
      return _accept.size();
    }

    State add_state(bool accepting = false);
    void  add_transition(State from, Symbol x, State to);
    void  add_epsilon(State from, State to);
    void  add_start(State s);
    void  set_accepting(State s, bool value = true);

    //! Inserts a copy of `other` and returns the offset of its states.
    State embed(Nfa const& other);

    std::vector<State> const& starts() const noexcept {
      return _starts;
    }

    bool accepting(State s) const {
      return _accept[s];
    }

    //! Subset construction restricted to reachable subsets.
    Dfa determinize() const;

   private:
    std::size_t                                     _alphabet_size;
    std::vector<State>                              _starts;
    std::vector<bool>                               _accept;
    std::vector<std::vector<std::pair<Symbol, State>>> _moves;
    std::vector<std::vector<State>>                 _epsilon;
  };

  Dfa complement(Dfa const& L);
  Dfa intersection(Dfa const& L1, Dfa const& L2);
  Dfa union_of(Dfa const& L1, Dfa const& L2);
  Dfa difference(Dfa const& L1, Dfa const& L2);
  Dfa concatenation(Dfa const& L1, Dfa const& L2);
  Dfa star(Dfa const& L);

  Dfa union_of(std::vector<Dfa> const& languages, std::size_t alphabet_size);

  //! Hopcroft partition refinement followed by breadth-first renumbering from
  //! the start state in symbol order.  Two DFAs accept the same language iff
  //! their minimized forms compare equal.
  Dfa minimize(Dfa const& L);

  bool equivalent(Dfa const& L1, Dfa const& L2);

  //! h maps each source symbol (index) to a word over L's alphabet.  The
  //! result is over the source alphabet: {x : h(x) in L}.
  Dfa hom_preimage(Dfa const& L, std::vector<Word> const& h);

  //! h maps each symbol of L's alphabet to a word over an alphabet of size
  //! `target_size`.  The result is h(L).
  Dfa hom_image(Dfa const& L, std::vector<Word> const& h, std::size_t target_size);

  //! {x : x w in L}
  Dfa quotient_by_word(Dfa const& L, Word const& w);

  //! L intersected with the words ending in `w`.
  Dfa ending_with(std::size_t alphabet_size, Word const& w);

  //! All accepted words of length <= max_len, ordered by length and then
  //! lexicographically by symbol.
  std::vector<Word> enumerate_language(Dfa const& L, std::size_t max_len);

  //! Some shortest accepted word (the length-lex least), if any.
  bool shortest_word(Dfa const& L, Word& out);

  bool is_prefix_closed(Dfa const& L);

  bool is_finite_language(Dfa const& L);

  //! The same language over an alphabet of `new_size` >= alphabet_size()
  //! symbols; words using the new symbols are rejected.
  Dfa widen_alphabet(Dfa const& L, std::size_t new_size);

  //! Words of length exactly one.
  Dfa any_letter(std::size_t alphabet_size);

  //! DOT rendering, one line per transition in (state, symbol) order.
  std::string to_dot(Dfa const&                              L,
                     std::function<std::string(Symbol)> const& symbol_name);

}  // namespace autostack

#endif  // AUTOSTACK_AUTOMATA_HPP_

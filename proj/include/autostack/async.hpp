// Deterministic asynchronous two-tape automata.
//
// The underlying DFA runs over base letters 0 .. m - 1 plus the end marker
// "#" encoded as m.  Each state carries a kind saying which tape it reads.

#ifndef AUTOSTACK_ASYNC_HPP_
#define AUTOSTACK_ASYNC_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "autostack/automata.hpp"
#include "autostack/core.hpp"

namespace autostack {

  enum class StateKind : std::uint8_t {
    read_first,        // Q_1
    read_first_done,   // Q_1^#: second tape finished, reading the first
    read_second,       // Q_2
    read_second_done,  // Q_2^#: first tape finished, reading the second
    accept,            // q_f
    fail               // F
  };

  char const* to_string(StateKind kind) noexcept;

  class AsyncAutomaton {
   public:
    AsyncAutomaton() = default;

    //! `dfa` is over base_size + 1 symbols.  Throws a validation error if the
    //! transitions break the typing rules, if there is not exactly one accept
    //! and one fail state, or if the start state does not read from a tape
    //! with both tapes unfinished.
    AsyncAutomaton(std::size_t base_size, Dfa dfa, std::vector<StateKind> kinds);

    std::size_t base_size() const noexcept {
      return _base;
    }

    Symbol end_marker() const noexcept {
      return static_cast<Symbol>(_base);
    }

    Dfa const& dfa() const noexcept {
      return _dfa;
    }

    StateKind kind(State q) const {
      return _kinds.at(q);
    }

    std::vector<StateKind> const& kinds() const noexcept {
      return _kinds;
    }

    State accept_state() const noexcept {
      return _accept;
    }

    State fail_state() const noexcept {
      return _fail;
    }

    std::size_t num_states() const noexcept {
      return _kinds.size();
    }

    bool operator==(AsyncAutomaton const&) const = default;

   private:
    std::size_t            _base = 0;
    Dfa                    _dfa;
    std::vector<StateKind> _kinds;
    State                  _accept = 0;
    State                  _fail   = 0;
  };

  //! One symbol of a shuffle: the letter read (or the end marker), the tape it
  //! came from (1 or 2), or the failure symbol F (tape 0).
  struct ShuffleSymbol {
    Symbol       symbol;
    std::uint8_t tape;

    bool is_fail() const noexcept {
      return tape == 0;
    }

    bool operator==(ShuffleSymbol const&) const = default;
  };

  struct AsyncRun {
    std::vector<ShuffleSymbol> shuffle;
    //! State after each prefix of the shuffle (size shuffle.size() + 1).
    std::vector<State> states;
    bool               accepted = false;
  };

  //! sigma_{M, q}(u#, v#); the run is accepted iff it contains no F and ends
  //! in the accept state.
  AsyncRun async_run(AsyncAutomaton const& M, Word const& u, Word const& v);
  AsyncRun async_run_from(AsyncAutomaton const& M,
                          State                 q,
                          Word const&           u,
                          Word const&           v);

  bool async_accepts(AsyncAutomaton const& M, Word const& u, Word const& v);

  //! {u : (u, v) accepted for some v}.  Second-tape reads become epsilon
  //! moves of an NFA over the base letters, which is then determinized.
  Dfa async_project_first(AsyncAutomaton const& M);

  //! {u : some v takes the start state to `target` reading exactly u and v,
  //! without end markers}.  This is the first projection of the pairs whose
  //! run pauses at `target`.
  Dfa async_reach_projection(AsyncAutomaton const& M, State target);

  //! States of kind read_first or read_second that are reachable from the
  //! start and can reach the accept state.
  std::vector<bool> async_good_states(AsyncAutomaton const& M);

  //! The second tape v with (u, v) accepted, searched depth-first in letter
  //! order with l(v) <= max_len.  Returns false if there is none.
  bool async_partner(AsyncAutomaton const& M,
                     Word const&           u,
                     std::size_t           max_len,
                     Word&                 v);

  //! Same search started from state `from`, with u and v the remaining
  //! tape contents.
  bool async_partner_from(AsyncAutomaton const& M,
                          State                 from,
                          Word const&           u,
                          std::size_t           max_len,
                          Word&                 v);

  //! {u : (u, v) accepted for some v with l(u) + l(v) <= total}.
  Dfa async_project_first_bounded(AsyncAutomaton const& M, std::size_t total);

  //! Length of the longest block of consecutive reads from one tape in the
  //! run on (u#, v#), end markers included.
  std::size_t longest_block(AsyncRun const& run);

  //! Normal forms over an inverse-closed alphabet with one two-tape
  //! multiplier per letter; the multiplier for a accepts the pairs
  //! (y_g, y_ga).  `block_bound` bounds the blocks of every accepted shuffle.
  struct AsyncAutomaticStructure {
    Alphabet                    alphabet;
    Dfa                         normal_forms;
    std::vector<AsyncAutomaton> multipliers;
    std::size_t                 block_bound = 1;
  };

  //! Checks shapes, prefix closure of the normal forms, and on all normal
  //! forms of length <= max_len that each multiplier pairs y with a normal
  //! form and respects the block bound.  With an oracle, also that the
  //! partner of y for a equals y a in the group.  Throws a validation error.
  void validate_async_structure(AsyncAutomaticStructure const& S,
                                std::size_t                    max_len,
                                GroupOracle const*             oracle = nullptr);

}  // namespace autostack

#endif  // AUTOSTACK_ASYNC_HPP_

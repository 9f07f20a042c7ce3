#include "autostack/async.hpp"

#include <algorithm>

#include "autostack/error.hpp"

namespace autostack {

  char const* to_string(StateKind kind) noexcept {
    switch (kind) {
      case StateKind::read_first:
        return "Q1";
      case StateKind::read_first_done:
        return "Q1#";
      case StateKind::read_second:
        return "Q2";
      case StateKind::read_second_done:
        return "Q2#";
      case StateKind::accept:
        return "qf";
      case StateKind::fail:
        return "F";
    }
    return "?";
  }

  namespace {

    bool reads_first(StateKind k) {
      return k == StateKind::read_first || k == StateKind::read_first_done;
    }

    bool reads_second(StateKind k) {
      return k == StateKind::read_second || k == StateKind::read_second_done;
    }

    bool is_open(StateKind k) {
      return k == StateKind::read_first || k == StateKind::read_second;
    }

  }  // namespace

  AsyncAutomaton::AsyncAutomaton(std::size_t            base_size,
                                 Dfa                    dfa,
                                 std::vector<StateKind> kinds)
      : _base(base_size), _dfa(std::move(dfa)), _kinds(std::move(kinds)) {
    if (_dfa.alphabet_size() != base_size + 1) {
      fail(ErrorKind::validation,
           "asynchronous automaton must read the base letters and #");
    }
    if (_kinds.size() != _dfa.num_states()) {
      fail(ErrorKind::validation, "one state kind per state required");
    }
    std::size_t accepts = 0, fails = 0;
    for (State q = 0; q < _kinds.size(); ++q) {
      if (_kinds[q] == StateKind::accept) {
        _accept = q;
        ++accepts;
      } else if (_kinds[q] == StateKind::fail) {
        _fail = q;
        ++fails;
      }
    }
    if (accepts != 1 || fails != 1) {
      fail(ErrorKind::validation,
           "asynchronous automaton needs exactly one accept and one fail state");
    }
    for (State q = 0; q < _kinds.size(); ++q) {
      _dfa.set_accepting(q, q == _accept);
    }
    if (!is_open(_kinds[_dfa.start()])) {
      fail(ErrorKind::validation, "start state must lie in Q1 or Q2");
    }
    auto const end  = end_marker();
    auto       bad  = [&](State q, Symbol x) {
      fail(ErrorKind::validation,
           "transition from state " + std::to_string(q) + " ("
               + to_string(_kinds[q]) + ") on "
               + (x == end ? std::string("#") : std::to_string(x))
               + " breaks the typing rules");
    };
    for (State q = 0; q < _kinds.size(); ++q) {
      StateKind k = _kinds[q];
      for (Symbol x = 0; x <= end; ++x) {
        State     t  = _dfa.next(q, x);
        StateKind tk = _kinds[t];
        if (tk == StateKind::fail) {
          continue;
        }
        bool ok = true;
        switch (k) {
          case StateKind::read_first:
            ok = x == end ? tk == StateKind::read_second_done : is_open(tk);
            break;
          case StateKind::read_second:
            ok = x == end ? tk == StateKind::read_first_done : is_open(tk);
            break;
          case StateKind::read_first_done:
            ok = x == end ? tk == StateKind::accept
                          : tk == StateKind::read_first_done;
            break;
          case StateKind::read_second_done:
            ok = x == end ? tk == StateKind::accept
                          : tk == StateKind::read_second_done;
            break;
          case StateKind::fail:
            ok = false;
            break;
          case StateKind::accept:
            break;
        }
        if (!ok) {
          bad(q, x);
        }
      }
    }
  }

  AsyncRun async_run_from(AsyncAutomaton const& M,
                          State                 q,
                          Word const&           u,
                          Word const&           v) {
    Word tape1 = concat(u, M.end_marker());
    Word tape2 = concat(v, M.end_marker());
    for (Word const* t : {&u, &v}) {
      for (Letter x : *t) {
        if (x >= M.base_size()) {
          fail(ErrorKind::usage, "tape letter out of range");
        }
      }
    }
    std::size_t const total = tape1.size() + tape2.size();
    std::size_t       pos[3] = {0, 0, 0};
    AsyncRun          run;
    run.states.push_back(q);
    bool failed = false;
    while (run.shuffle.size() < total) {
      StateKind k    = M.kind(q);
      int       tape = reads_first(k) ? 1 : reads_second(k) ? 2 : 0;
      Word const* t  = tape == 1 ? &tape1 : &tape2;
      if (failed || tape == 0 || pos[tape] >= t->size()) {
        failed = true;
        run.shuffle.push_back({0, 0});
        run.states.push_back(q);
        continue;
      }
      Symbol x = (*t)[pos[tape]++];
      run.shuffle.push_back({x, static_cast<std::uint8_t>(tape)});
      q = M.dfa().next(q, x);
      run.states.push_back(q);
    }
    run.accepted = !failed && q == M.accept_state();
    return run;
  }

  AsyncRun async_run(AsyncAutomaton const& M, Word const& u, Word const& v) {
    return async_run_from(M, M.dfa().start(), u, v);
  }

  bool async_accepts(AsyncAutomaton const& M, Word const& u, Word const& v) {
    return async_run(M, u, v).accepted;
  }

  Dfa async_project_first(AsyncAutomaton const& M) {
    std::size_t const m = M.base_size();
    Nfa               nfa(m);
    for (State q = 0; q < M.num_states(); ++q) {
      nfa.add_state(q == M.accept_state());
    }
    nfa.add_start(M.dfa().start());
    for (State q = 0; q < M.num_states(); ++q) {
      StateKind k = M.kind(q);
      if (!reads_first(k) && !reads_second(k)) {
        continue;
      }
      for (Symbol x = 0; x <= m; ++x) {
        State t = M.dfa().next(q, x);
        if (t == M.fail_state()) {
          continue;
        }
        if (reads_first(k) && x < m) {
          nfa.add_transition(q, x, t);
        } else {
          nfa.add_epsilon(q, t);
        }
      }
    }
    return minimize(nfa.determinize());
  }

  Dfa async_reach_projection(AsyncAutomaton const& M, State target) {
    std::size_t const m = M.base_size();
    Nfa               nfa(m);
    for (State q = 0; q < M.num_states(); ++q) {
      nfa.add_state(q == target);
    }
    nfa.add_start(M.dfa().start());
    for (State q = 0; q < M.num_states(); ++q) {
      StateKind k = M.kind(q);
      if (!is_open(k)) {
        continue;
      }
      for (Symbol x = 0; x < m; ++x) {
        State t = M.dfa().next(q, x);
        if (!is_open(M.kind(t))) {
          continue;
        }
        if (k == StateKind::read_first) {
          nfa.add_transition(q, x, t);
        } else {
          nfa.add_epsilon(q, t);
        }
      }
    }
    return minimize(nfa.determinize());
  }

  std::vector<bool> async_good_states(AsyncAutomaton const& M) {
    Dfa d = M.dfa();
    for (State q = 0; q < d.num_states(); ++q) {
      d.set_accepting(q, q == M.accept_state());
    }
    auto               live = d.live_states();
    std::vector<bool>  reach(d.num_states(), false);
    std::vector<State> stack{d.start()};
    reach[d.start()] = true;
    while (!stack.empty()) {
      State q = stack.back();
      stack.pop_back();
      for (Symbol x = 0; x < d.alphabet_size(); ++x) {
        State t = d.next(q, x);
        if (!reach[t]) {
          reach[t] = true;
          stack.push_back(t);
        }
      }
    }
    std::vector<bool> good(d.num_states(), false);
    for (State q = 0; q < d.num_states(); ++q) {
      good[q] = reach[q] && live[q] && is_open(M.kind(q));
    }
    return good;
  }

  bool async_partner(AsyncAutomaton const& M,
                     Word const&           u,
                     std::size_t           max_len,
                     Word&                 v) {
    return async_partner_from(M, M.dfa().start(), u, max_len, v);
  }

  bool async_partner_from(AsyncAutomaton const& M,
                          State                 from,
                          Word const&           u,
                          std::size_t           max_len,
                          Word&                 v) {
    std::size_t const m     = M.base_size();
    std::size_t const n     = M.num_states();
    Word const        tape1 = concat(u, M.end_marker());
    // alive[i][q]: from q, with tape1[i..] still unread, some second tape
    // leads to acceptance.
    std::vector<std::vector<bool>> alive(tape1.size() + 1,
                                         std::vector<bool>(n, false));
    for (std::size_t i = tape1.size() + 1; i-- > 0;) {
      auto& row     = alive[i];
      bool  changed = true;
      while (changed) {
        changed = false;
        for (State q = 0; q < n; ++q) {
          if (row[q]) {
            continue;
          }
          StateKind k   = M.kind(q);
          bool      now = false;
          if (k == StateKind::accept) {
            now = i == tape1.size();
          } else if (reads_first(k)) {
            now = i < tape1.size()
                  && alive[i + 1][M.dfa().next(q, tape1[i])];
          } else if (reads_second(k)) {
            for (Symbol x = 0; x <= m && !now; ++x) {
              now = row[M.dfa().next(q, x)];
            }
          }
          if (now) {
            row[q]  = true;
            changed = true;
          }
        }
      }
    }

    // Depth-first over (state, tape1 position, second tape so far); the
    // second tape is finished once its end marker has been read.
    struct Frame {
      State       q;
      std::size_t i;
      Symbol      next;
    };
    v.clear();
    State q = from;
    if (!alive[0][q]) {
      return false;
    }
    std::size_t       i = 0;
    std::vector<Frame> stack;
    while (true) {
      StateKind k = M.kind(q);
      if (k == StateKind::accept) {
        if (!v.empty() && v.back() == M.end_marker()) {
          v.pop_back();
        }
        return true;
      }
      if (reads_first(k)) {
        q = M.dfa().next(q, tape1[i++]);
        continue;
      }
      // Choose a second-tape symbol, resuming after `start`.
      Symbol start = 0;
      bool   moved = false;
      while (true) {
        for (Symbol x = start; x <= m; ++x) {
          State t = M.dfa().next(q, x);
          if (alive[i][t] && v.size() < max_len + 1) {
            stack.push_back({q, i, x});
            v.push_back(x);
            q     = t;
            moved = true;
            break;
          }
        }
        if (moved) {
          break;
        }
        if (stack.empty()) {
          return false;
        }
        Frame f = stack.back();
        stack.pop_back();
        v.pop_back();
        q     = f.q;
        i     = f.i;
        start = static_cast<Symbol>(f.next + 1);
      }
    }
  }

  Dfa async_project_first_bounded(AsyncAutomaton const& M, std::size_t total) {
    std::size_t const m      = M.base_size();
    std::size_t const layers = total + 1;
    Nfa               nfa(m);
    auto id = [&](State q, std::size_t c) {
      return static_cast<State>(q * layers + c);
    };
    for (State q = 0; q < M.num_states(); ++q) {
      for (std::size_t c = 0; c < layers; ++c) {
        nfa.add_state(q == M.accept_state());
      }
    }
    nfa.add_start(id(M.dfa().start(), 0));
    for (State q = 0; q < M.num_states(); ++q) {
      StateKind k = M.kind(q);
      if (!reads_first(k) && !reads_second(k)) {
        continue;
      }
      for (Symbol x = 0; x <= m; ++x) {
        State t = M.dfa().next(q, x);
        if (t == M.fail_state()) {
          continue;
        }
        for (std::size_t c = 0; c < layers; ++c) {
          std::size_t d = x < m ? c + 1 : c;
          if (d >= layers) {
            continue;
          }
          if (reads_first(k) && x < m) {
            nfa.add_transition(id(q, c), x, id(t, d));
          } else {
            nfa.add_epsilon(id(q, c), id(t, d));
          }
        }
      }
    }
    return minimize(nfa.determinize());
  }

  std::size_t longest_block(AsyncRun const& run) {
    std::size_t best = 0, current = 0;
    int         tape = -1;
    for (auto const& c : run.shuffle) {
      if (c.is_fail()) {
        break;
      }
      current = c.tape == tape ? current + 1 : 1;
      tape    = c.tape;
      best    = std::max(best, current);
    }
    return best;
  }

  void validate_async_structure(AsyncAutomaticStructure const& S,
                                std::size_t                    max_len,
                                GroupOracle const*             oracle) {
    Alphabet const&   A = S.alphabet;
    std::size_t const m = A.size();
    if (!A.inverse_closed()) {
      fail(ErrorKind::validation, "asynchronous structure needs an inverse-closed alphabet");
    }
    if (S.normal_forms.alphabet_size() != m || S.multipliers.size() != m) {
      fail(ErrorKind::validation, "asynchronous structure needs one multiplier per letter");
    }
    if (!S.normal_forms.accepts({}) || !is_prefix_closed(S.normal_forms)) {
      fail(ErrorKind::validation, "normal forms must contain 1 and be prefix-closed");
    }
    auto const normal = enumerate_language(S.normal_forms, max_len);
    for (Letter a = 0; a < m; ++a) {
      auto const& M = S.multipliers[a];
      if (M.base_size() != m) {
        fail(ErrorKind::validation, "multiplier over the wrong alphabet");
      }
      Word w;
      if (shortest_word(difference(async_project_first(M), S.normal_forms), w)) {
        fail(ErrorKind::validation, "multiplier for " + A.name(a)
                                        + " accepts a non-normal first tape "
                                        + A.format(w));
      }
      for (auto const& y : normal) {
        Word v;
        if (!async_partner(M, y, S.block_bound * (y.size() + 1), v)) {
          fail(ErrorKind::validation, "multiplier for " + A.name(a)
                                          + " has no partner for " + A.format(y));
        }
        if (!S.normal_forms.accepts(v)) {
          fail(ErrorKind::validation, "multiplier for " + A.name(a) + " pairs "
                                          + A.format(y) + " with non-normal "
                                          + A.format(v));
        }
        if (oracle != nullptr && !oracle->equal(concat(y, a), v)) {
          fail(ErrorKind::validation, "multiplier for " + A.name(a) + " pairs "
                                          + A.format(y) + " with " + A.format(v)
                                          + ", which is not its product");
        }
        auto run = async_run(M, y, v);
        if (longest_block(run) > S.block_bound) {
          fail(ErrorKind::validation, "shuffle of (" + A.format(y) + ", " + A.format(v)
                                          + ") breaks the block bound");
        }
      }
    }
  }

}  // namespace autostack

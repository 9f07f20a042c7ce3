// Hand-built asynchronous multipliers for the free group of rank 2 and for
// Z^2.  In every machine the second tape leads: it reads a letter, then the
// first tape must read the same letter.

#include <functional>
#include <optional>

#include "autostack/catalog.hpp"

namespace autostack {

  namespace {

    using Allowed = std::function<bool(std::optional<Letter>, Letter)>;

    class Builder {
     public:
      explicit Builder(std::size_t base) : _base(base) {
        _fail = add(StateKind::fail);
      }

      State add(StateKind kind) {
        _kinds.push_back(kind);
        _edges.emplace_back(_base + 1, _fail);
        return static_cast<State>(_kinds.size() - 1);
      }

      void edge(State from, Symbol x, State to) {
        _edges[from][x] = to;
      }

      AsyncAutomaton build(State start) const {
        Dfa dfa(_base + 1, _kinds.size());
        for (State q = 0; q < _kinds.size(); ++q) {
          for (Symbol x = 0; x <= _base; ++x) {
            dfa.set_next(q, x, _edges[q][x]);
          }
        }
        dfa.set_start(start);
        return AsyncAutomaton(_base, std::move(dfa), _kinds);
      }

     private:
      std::size_t                     _base;
      State                           _fail = 0;
      std::vector<StateKind>          _kinds;
      std::vector<std::vector<State>> _edges;
    };

    // Words whose consecutive letters are allowed; state 0 is dead.
    Dfa sequence_language(std::size_t m, Allowed const& allowed) {
      Dfa d(m, m + 2);
      State const start = static_cast<State>(m + 1);
      d.set_start(start);
      for (State q = 1; q < m + 2; ++q) {
        d.set_accepting(q);
        std::optional<Letter> last;
        if (q != start) {
          last = static_cast<Letter>(q - 1);
        }
        for (Letter y = 0; y < m; ++y) {
          d.set_next(q, y, allowed(last, y) ? static_cast<State>(y + 1) : 0);
        }
      }
      return minimize(d);
    }

    // Right multiplication by c when c changes only the end of a normal
    // form: either y c or, when y ends in c^-1, y with that letter removed.
    AsyncAutomaton end_multiplier(Alphabet const& A, Letter c, Allowed const& allowed) {
      std::size_t const m   = A.size();
      Symbol const      end = static_cast<Symbol>(m);
      Letter const      ci  = A.inverse(c);
      Builder           b(m);
      State const       fresh = b.add(StateKind::read_second);
      std::vector<State> matched, expect;
      for (Letter x = 0; x < m; ++x) {
        matched.push_back(b.add(StateKind::read_second));
      }
      for (Letter x = 0; x < m; ++x) {
        expect.push_back(b.add(StateKind::read_first));
      }
      State const drop     = b.add(StateKind::read_first_done);
      State const close1   = b.add(StateKind::read_first_done);
      State const close2   = b.add(StateKind::read_second_done);
      State const accept   = b.add(StateKind::accept);
      auto        from_matched = [&](State g, std::optional<Letter> last) {
        for (Letter y = 0; y < m; ++y) {
          if (allowed(last, y)) {
            b.edge(g, y, expect[y]);
          }
        }
        if (allowed(last, ci)) {
          b.edge(g, end, drop);
        }
      };
      from_matched(fresh, std::nullopt);
      for (Letter x = 0; x < m; ++x) {
        from_matched(matched[x], x);
        b.edge(expect[x], x, matched[x]);
      }
      b.edge(expect[c], end, close2);
      b.edge(drop, ci, close1);
      b.edge(close1, end, accept);
      b.edge(close2, end, accept);
      return b.build(fresh);
    }

    // Right multiplication by a or A in Z^2 with normal forms a^i b^j: the
    // first letter of the partner is added or the first letter of y removed.
    AsyncAutomaton front_multiplier(Alphabet const& A, Letter c, Allowed const& allowed) {
      std::size_t const  m   = A.size();
      Symbol const       end = static_cast<Symbol>(m);
      Letter const       ci  = A.inverse(c);
      Builder            b(m);
      State const        start = b.add(StateKind::read_second);
      std::vector<State> matched, expect, strip;
      for (Letter x = 0; x < m; ++x) {
        matched.push_back(b.add(StateKind::read_second));
      }
      for (Letter x = 0; x < m; ++x) {
        expect.push_back(b.add(StateKind::read_first));
      }
      for (Letter x = 0; x < m; ++x) {
        bool used = x != c && allowed(ci, x);
        strip.push_back(used ? b.add(StateKind::read_first) : 0);
      }
      State const strip_end = b.add(StateKind::read_first_done);
      State const close1    = b.add(StateKind::read_first_done);
      State const accept    = b.add(StateKind::accept);

      b.edge(start, c, matched[c]);
      for (Letter x = 0; x < m; ++x) {
        if (x != c && allowed(ci, x)) {
          b.edge(start, x, strip[x]);
          b.edge(strip[x], ci, expect[x]);
        }
        for (Letter y = 0; y < m; ++y) {
          if (allowed(x, y)) {
            b.edge(matched[x], y, expect[y]);
          }
        }
        b.edge(matched[x], end, close1);
        b.edge(expect[x], x, matched[x]);
      }
      b.edge(start, end, strip_end);
      b.edge(strip_end, ci, close1);
      b.edge(close1, end, accept);
      return b.build(start);
    }

  }  // namespace

  AsyncAutomaticStructure free2_async_structure() {
    Alphabet A       = Alphabet::paired({"a", "A", "b", "B"});
    Allowed  allowed = [A](std::optional<Letter> last, Letter y) {
      return !last || A.inverse(*last) != y;
    };
    AsyncAutomaticStructure S;
    S.alphabet     = A;
    S.normal_forms = sequence_language(4, allowed);
    for (Letter c = 0; c < 4; ++c) {
      S.multipliers.push_back(end_multiplier(A, c, allowed));
    }
    S.block_bound = 2;
    return S;
  }

  AsyncAutomaticStructure z2_async_structure() {
    Alphabet A = Alphabet::paired({"a", "A", "b", "B"});
    // a^i or A^i, then b^j or B^j.
    Allowed allowed = [](std::optional<Letter> last, Letter y) {
      if (!last) {
        return true;
      }
      if (*last < 2) {
        return y == *last || y >= 2;
      }
      return y == *last;
    };
    AsyncAutomaticStructure S;
    S.alphabet     = A;
    S.normal_forms = sequence_language(4, allowed);
    S.multipliers.push_back(front_multiplier(A, 0, allowed));
    S.multipliers.push_back(front_multiplier(A, 1, allowed));
    S.multipliers.push_back(end_multiplier(A, 2, allowed));
    S.multipliers.push_back(end_multiplier(A, 3, allowed));
    S.block_bound = 2;
    return S;
  }

}  // namespace autostack

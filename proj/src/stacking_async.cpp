// Stacking structures from bounded asynchronously automatic structures.

#include <algorithm>
#include <deque>
#include <set>

#include "autostack/error.hpp"
#include "autostack/stacking.hpp"

namespace autostack {

  namespace {

    struct Completion {
      Word first;   // letters read from tape 1
      Word second;  // letters read from tape 2
      std::size_t length = 0;
    };

    // The length-lex least shortest path from q to the accept state, split
    // by tape.
    std::optional<Completion> completion(AsyncAutomaton const& M, State q) {
      Dfa const&         d = M.dfa();
      std::vector<State> parent(d.num_states(), q);
      std::vector<Symbol> via(d.num_states(), 0);
      std::vector<bool>  seen(d.num_states(), false);
      std::deque<State>  queue{q};
      seen[q] = true;
      while (!queue.empty() && !seen[M.accept_state()]) {
        State p = queue.front();
        queue.pop_front();
        for (Symbol x = 0; x < d.alphabet_size(); ++x) {
          State t = d.next(p, x);
          if (!seen[t] && t != M.fail_state()) {
            seen[t]   = true;
            parent[t] = p;
            via[t]    = x;
            queue.push_back(t);
          }
        }
      }
      if (!seen[M.accept_state()]) {
        return std::nullopt;
      }
      std::vector<std::pair<State, Symbol>> steps;
      for (State t = M.accept_state(); t != q; t = parent[t]) {
        steps.emplace_back(parent[t], via[t]);
      }
      std::reverse(steps.begin(), steps.end());
      Completion c;
      c.length = steps.size();
      for (auto [p, x] : steps) {
        if (x == M.end_marker()) {
          continue;
        }
        auto k = M.kind(p);
        if (k == StateKind::read_first || k == StateKind::read_first_done) {
          c.first.push_back(x);
        } else {
          c.second.push_back(x);
        }
      }
      return c;
    }

    // Words s of length exactly len with x s in L for some x in K.
    std::set<Word> suffixes_after(Dfa const& K, Dfa const& L, std::size_t len) {
      std::size_t const                   m = L.alphabet_size();
      std::set<std::pair<State, State>>   seen{{K.start(), L.start()}};
      std::vector<std::pair<State, State>> stack{{K.start(), L.start()}};
      auto const                          k_live = K.live_states();
      auto const                          l_live = L.live_states();
      std::set<State>                     starts;
      while (!stack.empty()) {
        auto [p, q] = stack.back();
        stack.pop_back();
        if (K.accepting(p)) {
          starts.insert(q);
        }
        for (Symbol x = 0; x < m; ++x) {
          std::pair<State, State> t{K.next(p, x), L.next(q, x)};
          if (k_live[t.first] && l_live[t.second] && seen.insert(t).second) {
            stack.push_back(t);
          }
        }
      }
      std::set<Word> result;
      Word           s;
      auto           walk = [&](auto&& self, State q) -> void {
        if (s.size() == len) {
          if (L.accepting(q)) {
            result.insert(s);
          }
          return;
        }
        for (Symbol x = 0; x < m; ++x) {
          State t = L.next(q, x);
          if (l_live[t]) {
            s.push_back(x);
            self(self, t);
            s.pop_back();
          }
        }
      };
      for (State q : starts) {
        walk(walk, q);
      }
      return result;
    }

  }  // namespace

  AsyncConversion stacking_from_async(AsyncAutomaticStructure const& AS) {
    Alphabet const&   A = AS.alphabet;
    std::size_t const m = A.size();
    Dfa const&        N = AS.normal_forms;
    validate_async_structure(AS, 6);

    std::size_t C = std::max<std::size_t>(AS.block_bound, 4);
    for (auto const& M : AS.multipliers) {
      C = std::max(C, M.num_states() + 1);
    }
    std::size_t const total = C * C + 3 * C;

    std::vector<PhiComponent>    components;
    std::vector<PairedComponent> paired;
    for (Letter a = 0; a < m; ++a) {
      AsyncAutomaton const& M          = AS.multipliers[a];
      Dfa const             degenerate = degenerate_domain(A, N, a);
      components.push_back({a, degenerate, {a}});
      Dfa const recursive = difference(N, degenerate);
      Dfa const small     = intersection(recursive, async_project_first_bounded(M, total));
      if (!small.is_empty()) {
        paired.push_back({a, small, M, total});
      }
      Dfa const large = difference(recursive, small);
      if (large.is_empty()) {
        continue;
      }
      auto const good = async_good_states(M);
      for (State q = 0; q < M.num_states(); ++q) {
        if (!good[q] || M.kind(q) != StateKind::read_first) {
          continue;
        }
        auto W = completion(M, q);
        if (!W || W->length >= C) {
          fail(ErrorKind::validation, "state " + std::to_string(q)
                                          + " has no accepting completion shorter than "
                                          + std::to_string(C));
        }
        Dfa const reach = async_reach_projection(M, q);
        for (auto const& s : suffixes_after(reach, large, C + 1)) {
          Word t;
          if (!async_partner_from(M, q, s, total, t)) {
            continue;
          }
          Word value = formal_inverse(A, s);
          value.insert(value.end(), W->first.begin(), W->first.end());
          value.push_back(a);
          Word back = formal_inverse(A, W->second);
          value.insert(value.end(), back.begin(), back.end());
          value.insert(value.end(), t.begin(), t.end());
          Dfa domain = intersection(concatenation(reach, Dfa::single_word(m, s)), large);
          components.push_back({a, std::move(domain), std::move(value)});
        }
      }
    }
    return {StackingStructure(A, N, std::move(components), std::move(paired), total), C};
  }

}  // namespace autostack

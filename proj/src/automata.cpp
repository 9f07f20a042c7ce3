#include "autostack/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "autostack/error.hpp"

namespace autostack {

  ////////////////////////////////////////////////////////////////////////
  // Dfa
  ////////////////////////////////////////////////////////////////////////

  Dfa::Dfa(std::size_t alphabet_size, std::size_t num_states)
      : _alphabet_size(alphabet_size),
        _delta(alphabet_size * num_states, 0),
        _accept(num_states, false) {
    if (num_states == 0) {
      fail(ErrorKind::usage, "a DFA needs at least one state");
    }
  }

  Dfa Dfa::empty_language(std::size_t alphabet_size) {
    return Dfa(alphabet_size, 1);
  }

  Dfa Dfa::universal(std::size_t alphabet_size) {
    Dfa result(alphabet_size, 1);
    result.set_accepting(0);
    return result;
  }

  Dfa Dfa::single_word(std::size_t alphabet_size, Word const& w) {
    return finite_language(alphabet_size, {w});
  }

  Dfa Dfa::finite_language(std::size_t              alphabet_size,
                           std::vector<Word> const& words) {
    // State 0 is the sink, state 1 the root of the trie.
    Dfa result(alphabet_size, 2);
    result.set_start(1);
    for (auto const& w : words) {
      State s = 1;
      for (Symbol x : w) {
        if (x >= alphabet_size) {
          fail(ErrorKind::usage, "symbol out of range in finite language");
        }
        State t = result.next(s, x);
        if (t == 0) {
          t = result.add_state();
          result.set_next(s, x, t);
        }
        s = t;
      }
      result.set_accepting(s);
    }
    return result;
  }

  State Dfa::add_state() {
    _delta.resize(_delta.size() + _alphabet_size, 0);
    _accept.push_back(false);
    return static_cast<State>(_accept.size() - 1);
  }

  State Dfa::run(State s, Word const& w) const {
    for (Symbol x : w) {
      if (x >= _alphabet_size) {
        fail(ErrorKind::usage, "symbol out of range for DFA");
      }
      s = next(s, x);
    }
    return s;
  }

  std::vector<bool> Dfa::live_states() const {
    std::size_t                     n = num_states();
    std::vector<std::vector<State>> preds(n);
    for (State s = 0; s < n; ++s) {
      for (Symbol x = 0; x < _alphabet_size; ++x) {
        preds[next(s, x)].push_back(s);
      }
    }
    std::vector<bool>  live(n, false);
    std::vector<State> stack;
    for (State s = 0; s < n; ++s) {
      if (_accept[s]) {
        live[s] = true;
        stack.push_back(s);
      }
    }
    while (!stack.empty()) {
      State t = stack.back();
      stack.pop_back();
      for (State s : preds[t]) {
        if (!live[s]) {
          live[s] = true;
          stack.push_back(s);
        }
      }
    }
    return live;
  }

  bool Dfa::is_empty() const {
    std::vector<bool>  seen(num_states(), false);
    std::vector<State> stack{_start};
    seen[_start] = true;
    while (!stack.empty()) {
      State s = stack.back();
      stack.pop_back();
      if (_accept[s]) {
        return false;
      }
      for (Symbol x = 0; x < _alphabet_size; ++x) {
        State t = next(s, x);
        if (!seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Nfa
  ////////////////////////////////////////////////////////////////////////

  Nfa Nfa::from_dfa(Dfa const& dfa) {
    Nfa result(dfa.alphabet_size());
    for (State s = 0; s < dfa.num_states(); ++s) {
      result.add_state(dfa.accepting(s));
    }
    for (State s = 0; s < dfa.num_states(); ++s) {
      for (Symbol x = 0; x < dfa.alphabet_size(); ++x) {
        result.add_transition(s, x, dfa.next(s, x));
      }
    }
    result.add_start(dfa.start());
    return result;
  }

  State Nfa::add_state(bool accepting) {
    _accept.push_back(accepting);
    _moves.emplace_back();
    _epsilon.emplace_back();
    return static_cast<State>(_accept.size() - 1);
  }

  void Nfa::add_transition(State from, Symbol x, State to) {
    _moves.at(from).emplace_back(x, to);
  }

  void Nfa::add_epsilon(State from, State to) {
    _epsilon.at(from).push_back(to);
  }

  void Nfa::add_start(State s) {
    _starts.push_back(s);
  }

  void Nfa::set_accepting(State s, bool value) {
    _accept.at(s) = value;
  }

  State Nfa::embed(Nfa const& other) {
    if (other._alphabet_size != _alphabet_size) {
      fail(ErrorKind::usage, "alphabet mismatch embedding NFA");
    }
    auto offset = static_cast<State>(num_states());
    for (State s = 0; s < other.num_states(); ++s) {
      add_state(other._accept[s]);
    }
    for (State s = 0; s < other.num_states(); ++s) {
      for (auto [x, t] : other._moves[s]) {
        add_transition(offset + s, x, offset + t);
      }
      for (State t : other._epsilon[s]) {
        add_epsilon(offset + s, offset + t);
      }
    }
    return offset;
  }

  Dfa Nfa::determinize() const {
    using Subset = std::vector<State>;
    auto closure = [this](Subset set) {
      std::vector<bool> in(num_states(), false);
      for (State s : set) {
        in[s] = true;
      }
      for (std::size_t i = 0; i < set.size(); ++i) {
        for (State t : _epsilon[set[i]]) {
          if (!in[t]) {
            in[t] = true;
            set.push_back(t);
          }
        }
      }
      std::sort(set.begin(), set.end());
      return set;
    };

    std::map<Subset, State> index;
    std::vector<Subset>     subsets;
    Dfa                     result(_alphabet_size, 1);
    auto                    lookup = [&](Subset const& set) {
      auto it = index.find(set);
      if (it != index.end()) {
        return it->second;
      }
      State id = subsets.empty() ? 0 : result.add_state();
      index.emplace(set, id);
      subsets.push_back(set);
      bool acc = std::any_of(
          set.begin(), set.end(), [this](State s) { return _accept[s]; });
      result.set_accepting(id, acc);
      return id;
    };

    lookup(closure(_starts));
    std::vector<Subset> buckets(_alphabet_size);
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      for (auto& b : buckets) {
        b.clear();
      }
      for (State s : subsets[i]) {
        for (auto [x, t] : _moves[s]) {
          buckets[x].push_back(t);
        }
      }
      for (Symbol x = 0; x < _alphabet_size; ++x) {
        auto& b = buckets[x];
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        State t = lookup(closure(b));
        result.set_next(static_cast<State>(i), x, t);
      }
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Boolean operations
  ////////////////////////////////////////////////////////////////////////

  namespace {

    void check_same_alphabet(Dfa const& a, Dfa const& b) {
      if (a.alphabet_size() != b.alphabet_size()) {
        fail(ErrorKind::usage,
             "alphabet mismatch: " + std::to_string(a.alphabet_size()) + " vs "
                 + std::to_string(b.alphabet_size()));
      }
    }

    template <typename Combine>
    Dfa product(Dfa const& a, Dfa const& b, Combine combine) {
      check_same_alphabet(a, b);
      std::size_t const                            m = a.alphabet_size();
      std::map<std::pair<State, State>, State>     index;
      std::vector<std::pair<State, State>>         pairs;
      Dfa                                          result(m, 1);
      auto lookup = [&](State p, State q) {
        auto [it, inserted] = index.try_emplace({p, q}, 0);
        if (inserted) {
          it->second = pairs.empty() ? 0 : result.add_state();
          pairs.emplace_back(p, q);
          result.set_accepting(it->second,
                               combine(a.accepting(p), b.accepting(q)));
        }
        return it->second;
      };
      lookup(a.start(), b.start());
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [p, q] = pairs[i];
        for (Symbol x = 0; x < m; ++x) {
          State t = lookup(a.next(p, x), b.next(q, x));
          result.set_next(static_cast<State>(i), x, t);
        }
      }
      return minimize(result);
    }

  }  // namespace

  Dfa complement(Dfa const& L) {
    Dfa result = L;
    for (State s = 0; s < L.num_states(); ++s) {
      result.set_accepting(s, !L.accepting(s));
    }
    return result;
  }

  Dfa intersection(Dfa const& L1, Dfa const& L2) {
    return product(L1, L2, [](bool x, bool y) { return x && y; });
  }

  Dfa union_of(Dfa const& L1, Dfa const& L2) {
    return product(L1, L2, [](bool x, bool y) { return x || y; });
  }

  Dfa difference(Dfa const& L1, Dfa const& L2) {
    return product(L1, L2, [](bool x, bool y) { return x && !y; });
  }

  Dfa union_of(std::vector<Dfa> const& languages, std::size_t alphabet_size) {
    // Pairwise reduction keeps intermediate products balanced.
    std::vector<Dfa> work = languages;
    if (work.empty()) {
      return Dfa::empty_language(alphabet_size);
    }
    while (work.size() > 1) {
      std::vector<Dfa> next;
      for (std::size_t i = 0; i + 1 < work.size(); i += 2) {
        next.push_back(union_of(work[i], work[i + 1]));
      }
      if (work.size() % 2 == 1) {
        next.push_back(std::move(work.back()));
      }
      work = std::move(next);
    }
    return minimize(work.front());
  }

  Dfa concatenation(Dfa const& L1, Dfa const& L2) {
    check_same_alphabet(L1, L2);
    Nfa   nfa    = Nfa::from_dfa(L1);
    State offset = nfa.embed(Nfa::from_dfa(L2));
    for (State s = 0; s < L1.num_states(); ++s) {
      if (L1.accepting(s)) {
        nfa.set_accepting(s, false);
        nfa.add_epsilon(s, offset + L2.start());
      }
    }
    return minimize(nfa.determinize());
  }

  Dfa star(Dfa const& L) {
    Nfa   nfa(L.alphabet_size());
    State offset = nfa.embed(Nfa::from_dfa(L));
    State fresh  = nfa.add_state(true);
    nfa.add_start(fresh);
    nfa.add_epsilon(fresh, offset + L.start());
    for (State s = 0; s < L.num_states(); ++s) {
      if (L.accepting(s)) {
        nfa.add_epsilon(offset + s, fresh);
      }
    }
    return minimize(nfa.determinize());
  }

  ////////////////////////////////////////////////////////////////////////
  // Minimization
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // Restricts to states reachable from the start, renumbered in BFS order
    // (symbols ascending).
    Dfa bfs_canonical(Dfa const& L) {
      std::size_t const  m = L.alphabet_size();
      std::vector<State> id(L.num_states(), static_cast<State>(-1));
      std::vector<State> order{L.start()};
      id[L.start()] = 0;
      for (std::size_t i = 0; i < order.size(); ++i) {
        for (Symbol x = 0; x < m; ++x) {
          State t = L.next(order[i], x);
          if (id[t] == static_cast<State>(-1)) {
            id[t] = static_cast<State>(order.size());
            order.push_back(t);
          }
        }
      }
      Dfa result(m, order.size());
      for (std::size_t i = 0; i < order.size(); ++i) {
        result.set_accepting(static_cast<State>(i), L.accepting(order[i]));
        for (Symbol x = 0; x < m; ++x) {
          result.set_next(static_cast<State>(i), x, id[L.next(order[i], x)]);
        }
      }
      return result;
    }

  }  // namespace

  Dfa minimize(Dfa const& input) {
    Dfa const         L = bfs_canonical(input);
    std::size_t const n = L.num_states();
    std::size_t const m = L.alphabet_size();

    // inverse[x][t] = sources s with delta(s, x) = t, flattened per symbol.
    std::vector<std::vector<std::uint32_t>> inv_start(
        m, std::vector<std::uint32_t>(n + 1, 0));
    std::vector<std::vector<State>> inv_list(m, std::vector<State>(n));
    for (Symbol x = 0; x < m; ++x) {
      auto& st = inv_start[x];
      for (State s = 0; s < n; ++s) {
        ++st[L.next(s, x) + 1];
      }
      for (std::size_t t = 0; t < n; ++t) {
        st[t + 1] += st[t];
      }
      std::vector<std::uint32_t> fill(st.begin(), st.end() - 1);
      for (State s = 0; s < n; ++s) {
        inv_list[x][fill[L.next(s, x)]++] = s;
      }
    }

    std::vector<std::vector<State>> blocks;
    std::vector<std::uint32_t>      block_of(n);
    {
      std::vector<State> acc, rej;
      for (State s = 0; s < n; ++s) {
        (L.accepting(s) ? acc : rej).push_back(s);
      }
      for (auto* b : {&acc, &rej}) {
        if (!b->empty()) {
          for (State s : *b) {
            block_of[s] = static_cast<std::uint32_t>(blocks.size());
          }
          blocks.push_back(std::move(*b));
        }
      }
    }

    std::deque<std::pair<std::uint32_t, Symbol>> work;
    std::set<std::pair<std::uint32_t, Symbol>>   in_work;
    for (std::uint32_t b = 0; b < blocks.size(); ++b) {
      for (Symbol x = 0; x < m; ++x) {
        work.emplace_back(b, x);
        in_work.emplace(b, x);
      }
    }

    std::vector<std::uint32_t> hits(n, 0);
    std::vector<bool>          marked(n, false);
    while (!work.empty()) {
      auto [splitter, x] = work.front();
      work.pop_front();
      in_work.erase({splitter, x});

      std::vector<State>         pre;
      std::vector<std::uint32_t> touched;
      for (State t : blocks[splitter]) {
        for (auto i = inv_start[x][t]; i < inv_start[x][t + 1]; ++i) {
          State s = inv_list[x][i];
          if (!marked[s]) {
            marked[s] = true;
            pre.push_back(s);
            auto b = block_of[s];
            if (hits[b]++ == 0) {
              touched.push_back(b);
            }
          }
        }
      }
      for (auto b : touched) {
        if (hits[b] < blocks[b].size()) {
          std::vector<State> inside, outside;
          for (State s : blocks[b]) {
            (marked[s] ? inside : outside).push_back(s);
          }
          auto nb    = static_cast<std::uint32_t>(blocks.size());
          blocks[b]  = std::move(inside);
          blocks.push_back(std::move(outside));
          for (State s : blocks[nb]) {
            block_of[s] = nb;
          }
          for (Symbol c = 0; c < m; ++c) {
            if (in_work.count({b, c})) {
              work.emplace_back(nb, c);
              in_work.emplace(nb, c);
            } else {
              auto pick = blocks[b].size() <= blocks[nb].size() ? b : nb;
              work.emplace_back(pick, c);
              in_work.emplace(pick, c);
            }
          }
        }
        hits[b] = 0;
      }
      for (State s : pre) {
        marked[s] = false;
      }
    }

    Dfa quotient(m, blocks.size());
    quotient.set_start(block_of[L.start()]);
    for (std::uint32_t b = 0; b < blocks.size(); ++b) {
      State rep = blocks[b].front();
      quotient.set_accepting(b, L.accepting(rep));
      for (Symbol x = 0; x < m; ++x) {
        quotient.set_next(b, x, block_of[L.next(rep, x)]);
      }
    }
    return bfs_canonical(quotient);
  }

  bool equivalent(Dfa const& L1, Dfa const& L2) {
    check_same_alphabet(L1, L2);
    return minimize(L1) == minimize(L2);
  }

  ////////////////////////////////////////////////////////////////////////
  // Homomorphisms and quotients
  ////////////////////////////////////////////////////////////////////////

  Dfa hom_preimage(Dfa const& L, std::vector<Word> const& h) {
    Dfa result(h.size(), L.num_states());
    result.set_start(L.start());
    for (State s = 0; s < L.num_states(); ++s) {
      result.set_accepting(s, L.accepting(s));
      for (Symbol x = 0; x < h.size(); ++x) {
        result.set_next(s, x, L.run(s, h[x]));
      }
    }
    return minimize(result);
  }

  Dfa hom_image(Dfa const& L, std::vector<Word> const& h, std::size_t target_size) {
    if (h.size() != L.alphabet_size()) {
      fail(ErrorKind::usage, "homomorphism does not cover the source alphabet");
    }
    // Only the trim part matters; dead states would just add subsets.
    auto live = L.live_states();
    Nfa  nfa(target_size);
    for (State s = 0; s < L.num_states(); ++s) {
      nfa.add_state(L.accepting(s));
    }
    nfa.add_start(L.start());
    for (State s = 0; s < L.num_states(); ++s) {
      if (!live[s]) {
        continue;
      }
      for (Symbol x = 0; x < L.alphabet_size(); ++x) {
        State t = L.next(s, x);
        if (!live[t]) {
          continue;
        }
        Word const& img = h[x];
        if (img.empty()) {
          nfa.add_epsilon(s, t);
          continue;
        }
        State from = s;
        for (std::size_t i = 0; i < img.size(); ++i) {
          if (img[i] >= target_size) {
            fail(ErrorKind::usage, "homomorphism image out of range");
          }
          State to = (i + 1 == img.size()) ? t : nfa.add_state(false);
          nfa.add_transition(from, img[i], to);
          from = to;
        }
      }
    }
    return minimize(nfa.determinize());
  }

  Dfa quotient_by_word(Dfa const& L, Word const& w) {
    Dfa result = L;
    for (State s = 0; s < L.num_states(); ++s) {
      result.set_accepting(s, L.accepting(L.run(s, w)));
    }
    return minimize(result);
  }

  Dfa ending_with(std::size_t alphabet_size, Word const& w) {
    return concatenation(Dfa::universal(alphabet_size),
                         Dfa::single_word(alphabet_size, w));
  }

  ////////////////////////////////////////////////////////////////////////
  // Enumeration
  ////////////////////////////////////////////////////////////////////////

  std::vector<Word> enumerate_language(Dfa const& L, std::size_t max_len) {
    std::vector<Word> result;
    auto              live = L.live_states();
    if (!live[L.start()]) {
      return result;
    }
    // Layer by layer keeps the length-then-lex order.
    std::vector<std::pair<Word, State>> layer{{Word{}, L.start()}};
    for (std::size_t len = 0; len <= max_len && !layer.empty(); ++len) {
      std::vector<std::pair<Word, State>> next;
      for (auto& [w, s] : layer) {
        if (L.accepting(s)) {
          result.push_back(w);
        }
        if (len == max_len) {
          continue;
        }
        for (Symbol x = 0; x < L.alphabet_size(); ++x) {
          State t = L.next(s, x);
          if (live[t]) {
            Word v = w;
            v.push_back(x);
            next.emplace_back(std::move(v), t);
          }
        }
      }
      layer = std::move(next);
    }
    return result;
  }

  bool shortest_word(Dfa const& L, Word& out) {
    std::vector<State> parent(L.num_states(), static_cast<State>(-1));
    std::vector<Symbol> via(L.num_states(), 0);
    std::vector<bool>  seen(L.num_states(), false);
    std::queue<State>  queue;
    queue.push(L.start());
    seen[L.start()] = true;
    while (!queue.empty()) {
      State s = queue.front();
      queue.pop();
      if (L.accepting(s)) {
        out.clear();
        for (State t = s; t != L.start(); t = parent[t]) {
          out.push_back(via[t]);
        }
        std::reverse(out.begin(), out.end());
        return true;
      }
      for (Symbol x = 0; x < L.alphabet_size(); ++x) {
        State t = L.next(s, x);
        if (!seen[t]) {
          seen[t]   = true;
          parent[t] = s;
          via[t]    = x;
          queue.push(t);
        }
      }
    }
    return false;
  }

  bool is_prefix_closed(Dfa const& L) {
    auto               live = L.live_states();
    std::vector<bool>  seen(L.num_states(), false);
    std::vector<State> stack{L.start()};
    seen[L.start()] = true;
    while (!stack.empty()) {
      State s = stack.back();
      stack.pop_back();
      if (live[s] && !L.accepting(s)) {
        return false;
      }
      for (Symbol x = 0; x < L.alphabet_size(); ++x) {
        State t = L.next(s, x);
        if (!seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
      }
    }
    return true;
  }

  bool is_finite_language(Dfa const& L) {
    // Finite iff no cycle through a state that is both reachable and live.
    auto              live = L.live_states();
    std::vector<char> color(L.num_states(), 0);
    std::vector<std::pair<State, Symbol>> stack{{L.start(), 0}};
    color[L.start()] = 1;
    while (!stack.empty()) {
      auto& [s, x] = stack.back();
      if (x == L.alphabet_size()) {
        color[s] = 2;
        stack.pop_back();
        continue;
      }
      State t = L.next(s, x++);
      if (!live[t]) {
        continue;
      }
      if (color[t] == 1) {
        return false;
      }
      if (color[t] == 0) {
        color[t] = 1;
        stack.emplace_back(t, 0);
      }
    }
    return true;
  }

  Dfa widen_alphabet(Dfa const& L, std::size_t new_size) {
    if (new_size < L.alphabet_size()) {
      fail(ErrorKind::usage, "cannot narrow an alphabet");
    }
    Dfa        result(new_size, L.num_states() + 1);
    auto const dead = static_cast<State>(L.num_states());
    result.set_start(L.start());
    for (State s = 0; s <= dead; ++s) {
      for (Symbol x = 0; x < new_size; ++x) {
        result.set_next(s, x, dead);
      }
    }
    for (State s = 0; s < L.num_states(); ++s) {
      result.set_accepting(s, L.accepting(s));
      for (Symbol x = 0; x < L.alphabet_size(); ++x) {
        result.set_next(s, x, L.next(s, x));
      }
    }
    return minimize(result);
  }

  Dfa any_letter(std::size_t alphabet_size) {
    Dfa result(alphabet_size, 3);
    for (Symbol x = 0; x < alphabet_size; ++x) {
      result.set_next(0, x, 1);
      result.set_next(1, x, 2);
      result.set_next(2, x, 2);
    }
    result.set_accepting(1);
    return result;
  }

  std::string to_dot(Dfa const&                                L,
                     std::function<std::string(Symbol)> const& symbol_name) {
    std::ostringstream out;
    out << "digraph dfa {\n  rankdir=LR;\n  init [shape=point];\n";
    for (State s = 0; s < L.num_states(); ++s) {
      out << "  q" << s << " [shape="
          << (L.accepting(s) ? "doublecircle" : "circle") << "];\n";
    }
    out << "  init -> q" << L.start() << ";\n";
    for (State s = 0; s < L.num_states(); ++s) {
      for (Symbol x = 0; x < L.alphabet_size(); ++x) {
        out << "  q" << s << " -> q" << L.next(s, x) << " [label=\""
            << symbol_name(x) << "\"];\n";
      }
    }
    out << "}\n";
    return out.str();
  }

}  // namespace autostack

#include "autostack/stacking.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "autostack/error.hpp"

namespace autostack {

  namespace {

    // Merges components with the same letter and value.
    std::vector<PhiComponent> group_components(std::vector<PhiComponent> components,
                                               std::size_t               alphabet_size) {
      std::map<std::pair<Letter, Word>, std::vector<Dfa>> groups;
      for (auto& c : components) {
        groups[{c.letter, c.value}].push_back(std::move(c.domain));
      }
      std::vector<PhiComponent> result;
      for (auto& [key, domains] : groups) {
        Dfa d = union_of(domains, alphabet_size);
        if (!d.is_empty()) {
          result.push_back({key.first, std::move(d), key.second});
        }
      }
      return result;
    }

    Word paired_value(PairedComponent const& p, Word const& y) {
      Word z;
      if (y.size() > p.max_total
          || !async_partner(p.multiplier, y, p.max_total - y.size(), z)) {
        fail(ErrorKind::validation, "paired component has no partner for a word of its domain");
      }
      return z;
    }

  }  // namespace

  StackingStructure::StackingStructure(Alphabet                     alphabet,
                                       Dfa                          normal_forms,
                                       std::vector<PhiComponent>    components,
                                       std::vector<PairedComponent> paired,
                                       std::size_t                  bound)
      : _alphabet(std::move(alphabet)),
        _normal_forms(minimize(normal_forms)),
        _paired(std::move(paired)),
        _bound(bound) {
    std::size_t const m = _alphabet.size();
    if (_normal_forms.alphabet_size() != m) {
      fail(ErrorKind::usage, "normal forms over the wrong alphabet");
    }
    if (!_normal_forms.accepts({}) || !is_prefix_closed(_normal_forms)) {
      fail(ErrorKind::validation, "normal forms must contain 1 and be prefix-closed");
    }
    if (bound == 0) {
      fail(ErrorKind::validation, "the bound must be positive");
    }
    for (auto const& c : components) {
      if (c.letter >= m || c.domain.alphabet_size() != m) {
        fail(ErrorKind::usage, "phi component over the wrong alphabet");
      }
      if (c.value.size() > bound) {
        fail(ErrorKind::validation, "phi value " + _alphabet.format(c.value)
                                        + " is longer than the bound "
                                        + std::to_string(bound));
      }
    }
    _components = group_components(std::move(components), m);
    for (auto& p : _paired) {
      if (p.letter >= m || p.domain.alphabet_size() != m || p.multiplier.base_size() != m) {
        fail(ErrorKind::usage, "paired component over the wrong alphabet");
      }
      if (p.max_total > bound) {
        fail(ErrorKind::validation, "paired component may exceed the bound");
      }
      if (!is_finite_language(p.domain)) {
        fail(ErrorKind::validation, "paired component with an infinite domain");
      }
      p.domain = minimize(p.domain);
    }
    for (Letter a = 0; a < m; ++a) {
      Dfa  covered = Dfa::empty_language(m);
      Word w;
      auto add     = [&](Dfa const& d) {
        if (shortest_word(intersection(covered, d), w)) {
          fail(ErrorKind::validation, "phi(" + _alphabet.format(w) + ", " + _alphabet.name(a)
                                          + ") has two values");
        }
        covered = union_of(covered, d);
      };
      for (auto const& c : _components) {
        if (c.letter == a) {
          add(c.domain);
        }
      }
      for (auto const& p : _paired) {
        if (p.letter == a) {
          add(p.domain);
        }
      }
      if (shortest_word(difference(covered, _normal_forms), w)) {
        fail(ErrorKind::validation, "phi is defined on " + _alphabet.format(w)
                                        + ", which is not a normal form");
      }
      if (shortest_word(difference(_normal_forms, covered), w)) {
        fail(ErrorKind::validation, "phi(" + _alphabet.format(w) + ", " + _alphabet.name(a)
                                        + ") is undefined");
      }
    }
  }

  Word StackingStructure::phi(Word const& y, Letter a) const {
    if (a >= _alphabet.size()) {
      fail(ErrorKind::usage, "letter out of range");
    }
    if (!_normal_forms.accepts(y)) {
      fail(ErrorKind::usage, _alphabet.format(y) + " is not a normal form");
    }
    for (auto const& c : _components) {
      if (c.letter == a && c.domain.accepts(y)) {
        return c.value;
      }
    }
    for (auto const& p : _paired) {
      if (p.letter == a && p.domain.accepts(y)) {
        return concat(formal_inverse(_alphabet, y), paired_value(p, y));
      }
    }
    fail(ErrorKind::validation, "phi is undefined");
  }

  EdgeClass StackingStructure::edge_class(Word const& y, Letter a) const {
    if (_normal_forms.accepts(concat(y, a))
        || (!y.empty() && _alphabet.has_inverse(a) && y.back() == _alphabet.inverse(a))) {
      return EdgeClass::degenerate;
    }
    return EdgeClass::recursive;
  }

  StackingStructure StackingStructure::materialized(std::size_t max_listed) const {
    if (_paired.empty()) {
      return *this;
    }
    std::vector<PhiComponent> components = _components;
    std::size_t               listed     = 0;
    for (auto const& p : _paired) {
      std::map<Word, std::vector<Word>> by_value;
      for (auto const& y : enumerate_language(p.domain, p.max_total)) {
        if (++listed > max_listed) {
          fail(ErrorKind::budget, "more than " + std::to_string(max_listed)
                                      + " paired edges to list");
        }
        by_value[concat(formal_inverse(_alphabet, y), paired_value(p, y))].push_back(y);
      }
      for (auto const& [value, ys] : by_value) {
        components.push_back(
            {p.letter, Dfa::finite_language(_alphabet.size(), ys), value});
      }
    }
    return StackingStructure(_alphabet, _normal_forms, std::move(components), {}, _bound);
  }

  Word stacking_normal_form(StackingStructure const& S,
                            Word const&              w,
                            std::size_t              step_limit,
                            std::size_t*             steps) {
    Dfa const&      N = S.normal_forms();
    Alphabet const& A = S.alphabet();
    Word            y;
    std::vector<State> states{N.start()};
    std::vector<Letter> pending(w.rbegin(), w.rend());
    std::size_t         count = 0;
    while (!pending.empty()) {
      if (++count > step_limit) {
        fail(ErrorKind::budget, "normal form needs more than " + std::to_string(step_limit)
                                    + " steps");
      }
      Letter a = pending.back();
      pending.pop_back();
      if (a >= A.size()) {
        fail(ErrorKind::usage, "letter out of range");
      }
      State next = N.next(states.back(), a);
      if (N.accepting(next)) {
        y.push_back(a);
        states.push_back(next);
      } else if (!y.empty() && A.has_inverse(a) && y.back() == A.inverse(a)) {
        y.pop_back();
        states.pop_back();
      } else {
        Word u = S.phi(y, a);
        pending.insert(pending.end(), u.rbegin(), u.rend());
      }
    }
    if (steps != nullptr) {
      *steps = count;
    }
    return y;
  }

  SyncRelation StackingStructure::phi_graph(std::size_t max_listed) const {
    StackingStructure flat = materialized(max_listed);
    std::size_t const m    = _alphabet.size();
    PaddedAlphabet    padded(m, 3);
    std::vector<Dfa>  parts;
    for (auto const& c : flat._components) {
      parts.push_back(cartesian_product(
                          {c.domain, Dfa::single_word(m, {c.letter}), Dfa::single_word(m, c.value)})
                          .dfa());
    }
    return SyncRelation(padded, union_of(parts, padded.size()));
  }

  Word phi_from_graph(SyncRelation const& graph, Word const& y, Letter a, std::size_t max_len) {
    PaddedAlphabet const& P = graph.padded();
    if (P.arity() != 3) {
      fail(ErrorKind::usage, "graph of phi must be ternary");
    }
    Dfa const&        d    = graph.dfa();
    auto const        live = d.live_states();
    Letter const      pad  = P.pad();
    std::size_t const span = std::max<std::size_t>(y.size(), 1);
    std::vector<Word> found;
    Word              u;

    auto symbol = [&](std::size_t i, Letter third) {
      return P.encode({i < y.size() ? y[i] : pad, i == 0 ? a : pad, third});
    };
    // Feeds pads on the third tape from position i to the end.
    auto finish = [&](std::size_t i, State q) {
      for (; i < span; ++i) {
        q = d.next(q, symbol(i, pad));
        if (!live[q]) {
          return;
        }
      }
      if (d.accepting(q)) {
        found.push_back(u);
      }
    };
    auto search = [&](auto&& self, std::size_t i, State q) -> void {
      finish(i, q);
      if (u.size() >= max_len || found.size() > 1) {
        return;
      }
      for (Letter x = 0; x < pad; ++x) {
        State t = d.next(q, symbol(i, x));
        if (live[t]) {
          u.push_back(x);
          self(self, i + 1, t);
          u.pop_back();
        }
      }
    };
    search(search, 0, d.start());
    if (found.size() != 1) {
      fail(ErrorKind::validation, found.empty() ? "no triple for this edge"
                                                : "more than one triple for this edge");
    }
    return found.front();
  }

  Dfa degenerate_domain(Alphabet const& A, Dfa const& normal_forms, Letter a) {
    std::size_t const m = A.size();
    Dfa               d = intersection(normal_forms, quotient_by_word(normal_forms, {a}));
    if (A.has_inverse(a)) {
      d = union_of(d, intersection(normal_forms, ending_with(m, {A.inverse(a)})));
    }
    return d;
  }

  PrefixRewritingSystem stacking_to_cprs(StackingStructure const& S, std::size_t max_listed) {
    StackingStructure       flat = S.materialized(max_listed);
    Alphabet const&         A    = flat.alphabet();
    Dfa const&              N    = flat.normal_forms();
    std::size_t const       m    = A.size();
    std::vector<RuleFamily> families;
    for (Letter a = 0; a < m; ++a) {
      if (!A.has_inverse(a)) {
        fail(ErrorKind::usage, "stacking structures need an inverse-closed alphabet");
      }
      families.push_back({intersection(N, quotient_by_word(N, {a})), {a, A.inverse(a)}, {}});
    }
    for (auto const& c : flat.components()) {
      if (c.value == Word{c.letter}) {
        continue;
      }
      Dfa recursive = difference(c.domain, degenerate_domain(A, N, c.letter));
      families.push_back({recursive, {c.letter}, c.value});
    }
    return PrefixRewritingSystem(A, std::move(families), std::max<std::size_t>(flat.bound(), 2));
  }

  StackingStructure cprs_to_stacking(PrefixRewritingSystem const& Q, std::size_t step_limit) {
    Alphabet const&   A = Q.alphabet();
    std::size_t const m = A.size();
    auto              certificate = certify_processed(Q, step_limit);
    if (!certificate.ok()) {
      fail(ErrorKind::validation, "system is not processed: " + certificate.witness);
    }
    Dfa const N = irreducible_language(Q);
    std::vector<Dfa> degenerate;
    for (Letter a = 0; a < m; ++a) {
      degenerate.push_back(degenerate_domain(A, N, a));
    }
    std::vector<PhiComponent> components;
    for (Letter a = 0; a < m; ++a) {
      components.push_back({a, degenerate[a], {a}});
    }
    for (auto const& f : Q.families()) {
      auto add = [&](Letter a, Dfa const& ys, Word value) {
        Dfa domain = difference(intersection(ys, N), degenerate[a]);
        components.push_back({a, std::move(domain), std::move(value)});
      };
      if (f.lhs_suffix.empty()) {
        for (Letter a = 0; a < m; ++a) {
          add(a, quotient_by_word(f.prefixes, {a}), concat(Word{a}, f.rhs_suffix));
        }
        continue;
      }
      Word   s(f.lhs_suffix.begin(), f.lhs_suffix.end() - 1);
      Letter a = f.lhs_suffix.back();
      add(a, concatenation(f.prefixes, Dfa::single_word(m, s)),
          concat(formal_inverse(A, s), f.rhs_suffix));
    }
    std::size_t k = Q.bound().value_or(boundedness(Q));
    return StackingStructure(A, N, std::move(components), {}, std::max<std::size_t>(2 * k, 1));
  }

  std::vector<Letter> identity_letters(Alphabet const& A, GroupOracle const& oracle) {
    std::vector<Letter> result;
    for (Letter x = 0; x < A.size(); ++x) {
      if (oracle.is_identity({x})) {
        result.push_back(x);
      }
    }
    return result;
  }

  StackingStructure strip_identity_letters(StackingStructure const&   S,
                                           std::vector<Letter> const& identity) {
    if (identity.empty()) {
      return S;
    }
    StackingStructure flat = S.materialized();
    Alphabet const&   A    = flat.alphabet();
    std::size_t const m    = A.size();
    std::set<Letter>  drop(identity.begin(), identity.end());
    std::vector<Letter> new_index(m, 0);
    std::vector<std::string> names;
    std::vector<Word>        embed;
    for (Letter x = 0; x < m; ++x) {
      if (!drop.count(x)) {
        new_index[x] = static_cast<Letter>(names.size());
        names.push_back(A.name(x));
        embed.push_back({x});
      }
    }
    std::vector<std::pair<std::string, std::string>> inverses;
    for (Letter x = 0; x < m; ++x) {
      if (drop.count(x) || !A.has_inverse(x) || A.inverse(x) < x) {
        continue;
      }
      if (drop.count(A.inverse(x))) {
        fail(ErrorKind::usage, "the inverse of a kept letter is an identity letter");
      }
      inverses.emplace_back(A.name(x), A.name(A.inverse(x)));
    }
    for (Letter e : drop) {
      Dfa uses = concatenation(Dfa::universal(m),
                               concatenation(Dfa::single_word(m, {e}), Dfa::universal(m)));
      if (!intersection(flat.normal_forms(), uses).is_empty()) {
        fail(ErrorKind::validation, "a normal form uses the identity letter " + A.name(e));
      }
    }
    Alphabet                  B(names, inverses);
    std::vector<PhiComponent> components;
    for (auto const& c : flat.components()) {
      if (drop.count(c.letter)) {
        continue;
      }
      Word value;
      for (Letter x : c.value) {
        if (!drop.count(x)) {
          value.push_back(new_index[x]);
        }
      }
      components.push_back({new_index[c.letter], hom_preimage(c.domain, embed), value});
    }
    return StackingStructure(B, hom_preimage(flat.normal_forms(), embed), std::move(components),
                             {}, flat.bound());
  }

  Presentation stacking_presentation(StackingStructure const& S, std::size_t max_listed) {
    StackingStructure flat = S.materialized(max_listed);
    Alphabet const&   A    = flat.alphabet();
    std::set<Word, bool (*)(Word const&, Word const&)> relators(shortlex_less);
    for (auto const& c : flat.components()) {
      if (c.value != Word{c.letter}) {
        relators.insert(concat(c.value, A.inverse(c.letter)));
      }
    }
    return {A, std::vector<Word>(relators.begin(), relators.end())};
  }

  StackingReport verify_stacking(StackingStructure const& S,
                                 GroupOracle const*       oracle,
                                 std::size_t              radius) {
    StackingReport    report;
    Alphabet const&   A = S.alphabet();
    std::size_t const m = A.size();
    for (Letter a = 0; a < m; ++a) {
      Dfa  degenerate = degenerate_domain(A, S.normal_forms(), a);
      Word w;
      for (auto const& c : S.components()) {
        if (c.letter == a && c.value != Word{a}
            && shortest_word(intersection(c.domain, degenerate), w)) {
          report.problems.push_back("degenerate edge (" + A.format(w) + ", " + A.name(a)
                                    + ") has phi = " + A.format(c.value));
        }
      }
      for (auto const& p : S.paired()) {
        if (p.letter == a && shortest_word(intersection(p.domain, degenerate), w)) {
          report.problems.push_back("degenerate edge (" + A.format(w) + ", " + A.name(a)
                                    + ") lies in a paired component");
        }
      }
    }
    for (auto const& y : enumerate_language(S.normal_forms(), radius)) {
      for (Letter a = 0; a < m; ++a) {
        ++report.checked_edges;
        Word u = S.phi(y, a);
        if (u.size() > S.bound()) {
          report.problems.push_back("phi(" + A.format(y) + ", " + A.name(a) + ") = "
                                    + A.format(u) + " exceeds the bound");
        }
        if (oracle != nullptr && !oracle->equal(u, {a})) {
          report.problems.push_back("phi(" + A.format(y) + ", " + A.name(a) + ") = "
                                    + A.format(u) + " does not represent "
                                    + A.name(a));
        }
        if (report.problems.size() > 20) {
          return report;
        }
      }
    }
    return report;
  }

}  // namespace autostack

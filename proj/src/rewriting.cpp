#include "autostack/rewriting.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "autostack/error.hpp"

namespace autostack {

  namespace {

    Dfa family_lhs(RuleFamily const& f) {
      return concatenation(
          f.prefixes, Dfa::single_word(f.prefixes.alphabet_size(), f.lhs_suffix));
    }

    std::string show_rule(Alphabet const& A, Rule const& r) {
      return A.format(r.lhs) + " -> " + A.format(r.rhs);
    }

  }  // namespace

  PrefixRewritingSystem::PrefixRewritingSystem(Alphabet                   alphabet,
                                               std::vector<RuleFamily>    families,
                                               std::optional<std::size_t> bound)
      : _alphabet(std::move(alphabet)), _bound(bound) {
    std::size_t const m = _alphabet.size();
    std::vector<Dfa>  lhs;
    for (auto& f : families) {
      if (f.prefixes.alphabet_size() != m) {
        fail(ErrorKind::usage, "rule family over the wrong alphabet");
      }
      for (Word const* side : {&f.lhs_suffix, &f.rhs_suffix}) {
        for (Letter x : *side) {
          if (x >= m) {
            fail(ErrorKind::usage, "rule letter out of range");
          }
        }
      }
      if (f.lhs_suffix == f.rhs_suffix) {
        fail(ErrorKind::validation, "rule family with equal sides");
      }
      auto c = common_prefix_length(f.lhs_suffix, f.rhs_suffix);
      if (c > 0) {
        Word common(f.lhs_suffix.begin(), f.lhs_suffix.begin() + c);
        f.prefixes = concatenation(f.prefixes, Dfa::single_word(m, common));
        f.lhs_suffix.erase(f.lhs_suffix.begin(), f.lhs_suffix.begin() + c);
        f.rhs_suffix.erase(f.rhs_suffix.begin(), f.rhs_suffix.begin() + c);
      } else {
        f.prefixes = minimize(f.prefixes);
      }
      if (f.prefixes.is_empty()) {
        continue;
      }
      lhs.push_back(family_lhs(f));
      _families.push_back(std::move(f));
    }
    _lhs = union_of(lhs, m);
    if (_bound) {
      auto k = boundedness(*this);
      if (k > *_bound) {
        fail(ErrorKind::validation,
             "rule suffix length " + std::to_string(k) + " exceeds bound "
                 + std::to_string(*_bound));
      }
    }
  }

  PrefixRewritingSystem PrefixRewritingSystem::finite(Alphabet                 alphabet,
                                                      std::vector<Rule> const& rules) {
    std::vector<RuleFamily> families;
    for (auto const& r : rules) {
      families.push_back(
          {Dfa::single_word(alphabet.size(), {}), r.lhs, r.rhs});
    }
    return PrefixRewritingSystem(std::move(alphabet), std::move(families));
  }

  bool PrefixRewritingSystem::contains(Rule const& r) const {
    for (auto const& f : _families) {
      if (!is_suffix(f.lhs_suffix, r.lhs) || !is_suffix(f.rhs_suffix, r.rhs)) {
        continue;
      }
      Word w(r.lhs.begin(), r.lhs.end() - f.lhs_suffix.size());
      Word w2(r.rhs.begin(), r.rhs.end() - f.rhs_suffix.size());
      if (w == w2 && f.prefixes.accepts(w)) {
        return true;
      }
    }
    return false;
  }

  std::vector<Rule> PrefixRewritingSystem::rules_up_to(std::size_t max_lhs) const {
    std::set<std::pair<Word, Word>, bool (*)(std::pair<Word, Word> const&,
                                             std::pair<Word, Word> const&)>
        seen([](auto const& x, auto const& y) {
          if (x.first != y.first) {
            return shortlex_less(x.first, y.first);
          }
          return shortlex_less(x.second, y.second);
        });
    for (auto const& f : _families) {
      if (f.lhs_suffix.size() > max_lhs) {
        continue;
      }
      for (auto const& w :
           enumerate_language(f.prefixes, max_lhs - f.lhs_suffix.size())) {
        seen.insert({concat(w, f.lhs_suffix), concat(w, f.rhs_suffix)});
      }
    }
    std::vector<Rule> result;
    for (auto const& [u, v] : seen) {
      result.push_back({u, v});
    }
    return result;
  }

  bool PrefixRewritingSystem::is_finite() const {
    return std::all_of(_families.begin(), _families.end(), [](auto const& f) {
      return is_finite_language(f.prefixes);
    });
  }

  ////////////////////////////////////////////////////////////////////////
  // Reduction
  ////////////////////////////////////////////////////////////////////////

  std::optional<Redex> find_redex(PrefixRewritingSystem const& R, Word const& w) {
    Dfa const&  lhs = R.lhs_language();
    State       s   = lhs.start();
    std::size_t len = 0;
    bool        hit = lhs.accepting(s);
    while (!hit && len < w.size()) {
      if (w[len] >= lhs.alphabet_size()) {
        fail(ErrorKind::usage, "word letter out of range");
      }
      s   = lhs.next(s, w[len++]);
      hit = lhs.accepting(s);
    }
    if (!hit) {
      return std::nullopt;
    }
    Word                 u(w.begin(), w.begin() + len);
    std::optional<Redex> best;
    auto const&          families = R.families();
    for (std::size_t i = 0; i < families.size(); ++i) {
      auto const& f = families[i];
      if (!is_suffix(f.lhs_suffix, u)) {
        continue;
      }
      Word prefix(u.begin(), u.end() - f.lhs_suffix.size());
      if (!f.prefixes.accepts(prefix)) {
        continue;
      }
      Word v = concat(prefix, f.rhs_suffix);
      if (!best || shortlex_less(v, best->rule.rhs)) {
        best = Redex{i, {u, std::move(v)}};
      }
    }
    return best;
  }

  RewriteTrace reduce(PrefixRewritingSystem const& R,
                      Word const&                  w,
                      std::size_t                  step_limit) {
    RewriteTrace trace;
    trace.final = w;
    while (true) {
      auto redex = find_redex(R, trace.final);
      if (!redex) {
        trace.complete = true;
        return trace;
      }
      if (trace.steps.size() >= step_limit) {
        return trace;
      }
      Word suffix(trace.final.begin() + redex->rule.lhs.size(), trace.final.end());
      trace.final = concat(redex->rule.rhs, suffix);
      trace.steps.push_back({redex->family, std::move(redex->rule), std::move(suffix)});
    }
  }

  Word normal_form(PrefixRewritingSystem const& R,
                   Word const&                  w,
                   std::size_t                  step_limit) {
    auto trace = reduce(R, w, step_limit);
    if (!trace.complete) {
      fail(ErrorKind::budget,
           "no irreducible word after " + std::to_string(step_limit)
               + " steps from " + R.alphabet().format(w) + " (reached "
               + R.alphabet().format(trace.final) + ")");
    }
    return trace.final;
  }

  std::size_t prl(PrefixRewritingSystem const& R,
                  Word const&                  w,
                  std::size_t                  step_limit) {
    auto trace = reduce(R, w, step_limit);
    if (!trace.complete) {
      fail(ErrorKind::budget,
           "prefix-rewriting length exceeds " + std::to_string(step_limit));
    }
    return trace.steps.size();
  }

  Dfa irreducible_language(PrefixRewritingSystem const& R) {
    std::size_t m = R.alphabet().size();
    return minimize(
        complement(concatenation(R.lhs_language(), Dfa::universal(m))));
  }

  SyncRelation padded_rules(PrefixRewritingSystem const& R) {
    PaddedAlphabet padded(R.alphabet().size(), 2);
    SyncRelation   result = SyncRelation::empty(padded);
    for (auto const& f : R.families()) {
      result = union_of(result,
                        diagonal_then(f.prefixes, {f.lhs_suffix, f.rhs_suffix}));
    }
    return result;
  }

  Dfa irreducible_language_from_padding(PrefixRewritingSystem const& R) {
    std::size_t m   = R.alphabet().size();
    Dfa         lhs = project(padded_rules(R), 0);
    return minimize(complement(concatenation(lhs, Dfa::universal(m))));
  }

  std::size_t boundedness(PrefixRewritingSystem const& R) {
    std::size_t k = 0;
    for (auto const& f : R.families()) {
      k = std::max({k, f.lhs_suffix.size(), f.rhs_suffix.size()});
    }
    return k;
  }

  PrefixRewritingSystem with_bound(PrefixRewritingSystem const& R, std::size_t k) {
    return PrefixRewritingSystem(R.alphabet(), R.families(), k);
  }

  ////////////////////////////////////////////////////////////////////////
  // Processing
  ////////////////////////////////////////////////////////////////////////

  bool suffix_pair_less(RuleFamily const& x, RuleFamily const& y) {
    if (x.lhs_suffix != y.lhs_suffix) {
      return shortlex_less(x.lhs_suffix, y.lhs_suffix);
    }
    return shortlex_less(x.rhs_suffix, y.rhs_suffix);
  }

  ProcessedCertificate certify_processed(PrefixRewritingSystem const& Q,
                                         std::size_t                  step_limit) {
    ProcessedCertificate cert;
    Alphabet const&      A = Q.alphabet();
    std::size_t const    m = A.size();

    cert.inverses = A.inverse_closed();
    if (!cert.inverses) {
      cert.witness = "alphabet is not inverse-closed";
    }
    for (Letter a = 0; cert.inverses && a < m; ++a) {
      Word aa = {a, A.inverse(a)};
      auto t  = reduce(Q, aa, step_limit);
      if (!t.complete || !t.final.empty()) {
        cert.inverses = false;
        cert.witness  = A.format(aa) + " does not reduce to 1";
      }
    }

    Dfa const& lhs    = Q.lhs_language();
    Dfa        longer = concatenation(
        lhs, concatenation(any_letter(m), Dfa::universal(m)));
    Dfa  overlap = intersection(lhs, longer);
    Word w;
    cert.prefixes = !shortest_word(overlap, w);
    if (!cert.prefixes && cert.witness.empty()) {
      cert.witness = "left side " + A.format(w) + " has a reducible proper prefix";
    }

    cert.unique_rhs    = true;
    auto const& fams   = Q.families();
    std::vector<Dfa> sides;
    for (auto const& f : fams) {
      sides.push_back(family_lhs(f));
    }
    for (std::size_t i = 0; i < fams.size() && cert.unique_rhs; ++i) {
      for (std::size_t j = i + 1; j < fams.size(); ++j) {
        if (fams[i].lhs_suffix == fams[j].lhs_suffix
            && fams[i].rhs_suffix == fams[j].rhs_suffix) {
          continue;
        }
        if (shortest_word(intersection(sides[i], sides[j]), w)) {
          cert.unique_rhs = false;
          if (cert.witness.empty()) {
            cert.witness = "left side " + A.format(w) + " has two right sides";
          }
          break;
        }
      }
    }
    return cert;
  }

  namespace {

    // Length-lex first word of L with b . w trivial.
    std::optional<Word> inverse_normal_form(Dfa const&                              irr,
                                            Letter                                  b,
                                            std::size_t                             depth,
                                            std::function<bool(Word const&)> const& is_identity) {
      auto live = irr.live_states();
      std::vector<std::pair<Word, State>> layer{{Word{}, irr.start()}};
      for (std::size_t len = 0; len <= depth && !layer.empty(); ++len) {
        std::vector<std::pair<Word, State>> next;
        for (auto& [w, s] : layer) {
          if (irr.accepting(s) && is_identity(concat(Word{b}, w))) {
            return w;
          }
          for (Symbol x = 0; x < irr.alphabet_size(); ++x) {
            State t = irr.next(s, x);
            if (live[t]) {
              next.emplace_back(concat(w, x), t);
            }
          }
        }
        layer = std::move(next);
      }
      return std::nullopt;
    }

  }  // namespace

  ProcessResult process(PrefixRewritingSystem const& R, ProcessOptions const& options) {
    Alphabet const&   B = R.alphabet();
    Alphabet const    A = B.inverse_completion();
    std::size_t const m = B.size();
    std::size_t const n = A.size();

    Dfa const irr       = irreducible_language(R);
    Dfa const irr_times = concatenation(irr, any_letter(m));

    // Rules whose lhs has every proper prefix irreducible, grouped by their
    // (s, t) split in the fixed order.
    std::vector<RuleFamily> kept;
    for (auto const& f : R.families()) {
      Dfa good = intersection(f.prefixes, quotient_by_word(irr_times, f.lhs_suffix));
      if (!good.is_empty()) {
        kept.push_back({good, f.lhs_suffix, f.rhs_suffix});
      }
    }
    std::stable_sort(kept.begin(), kept.end(), suffix_pair_less);

    std::vector<RuleFamily> families;
    Dfa                     earlier = Dfa::empty_language(m);
    for (std::size_t i = 0; i < kept.size();) {
      std::size_t j     = i;
      Dfa         group = Dfa::empty_language(m);
      while (j < kept.size() && kept[j].lhs_suffix == kept[i].lhs_suffix
             && kept[j].rhs_suffix == kept[i].rhs_suffix) {
        group = union_of(group, family_lhs(kept[j]));
        ++j;
      }
      Dfa fresh = difference(group, earlier);
      earlier   = union_of(earlier, group);
      Dfa prefixes = quotient_by_word(fresh, kept[i].lhs_suffix);
      if (!prefixes.is_empty()) {
        families.push_back(
            {widen_alphabet(prefixes, n), kept[i].lhs_suffix, kept[i].rhs_suffix});
      }
      i = j;
    }

    auto is_identity = options.is_identity;
    if (!is_identity) {
      is_identity = [&R, &options](Word const& w) {
        return normal_form(R, w, options.step_limit).empty();
      };
    }

    ProcessResult result;
    std::size_t   k = std::max<std::size_t>(R.bound().value_or(boundedness(R)), 2);
    for (Letter b = 0; b < m; ++b) {
      if (B.has_inverse(b)) {
        continue;
      }
      auto z = inverse_normal_form(irr, b, options.search_depth, is_identity);
      if (!z) {
        fail(ErrorKind::budget,
             "no normal form for the inverse of " + B.name(b) + " within length "
                 + std::to_string(options.search_depth));
      }
      Letter inv = A.inverse(b);
      k          = std::max(k, z->size());
      families.push_back({widen_alphabet(difference(irr, ending_with(m, {b})), n),
                          {inv},
                          *z});
      families.push_back(
          {widen_alphabet(quotient_by_word(irr, {b}), n), {b, inv}, {}});
      result.inverse_normal_forms.emplace_back(b, *z);
    }

    result.system      = PrefixRewritingSystem(A, std::move(families), k);
    result.certificate = certify_processed(result.system, options.step_limit);
    if (!result.certificate.ok()) {
      fail(ErrorKind::validation,
           "processed system fails certification: " + result.certificate.witness);
    }
    if (!equivalent(irreducible_language(result.system), widen_alphabet(irr, n))) {
      fail(ErrorKind::validation,
           "processed system changes the irreducible language; the input is not "
           "convergent");
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // String rewriting
  ////////////////////////////////////////////////////////////////////////

  StringRewritingSystem::StringRewritingSystem(Alphabet alphabet, std::vector<Rule> rules)
      : _alphabet(std::move(alphabet)), _rules(std::move(rules)) {
    for (auto const& r : _rules) {
      if (r.lhs == r.rhs) {
        fail(ErrorKind::validation, "rule with equal sides: " + show_rule(_alphabet, r));
      }
      if (r.lhs.empty()) {
        fail(ErrorKind::validation, "rule with empty left side");
      }
      for (Word const* side : {&r.lhs, &r.rhs}) {
        for (Letter x : *side) {
          if (x >= _alphabet.size()) {
            fail(ErrorKind::usage, "rule letter out of range");
          }
        }
      }
    }
  }

  Word srs_normal_form(StringRewritingSystem const& S, Word w, std::size_t step_limit) {
    std::vector<Rule const*> order;
    for (auto const& r : S.rules()) {
      order.push_back(&r);
    }
    std::stable_sort(order.begin(), order.end(), [](Rule const* x, Rule const* y) {
      return x->lhs.size() < y->lhs.size();
    });
    for (std::size_t steps = 0;; ++steps) {
      bool rewrote = false;
      for (std::size_t i = 0; i < w.size() && !rewrote; ++i) {
        for (Rule const* r : order) {
          if (i + r->lhs.size() <= w.size()
              && std::equal(r->lhs.begin(), r->lhs.end(), w.begin() + i)) {
            if (steps >= step_limit) {
              fail(ErrorKind::budget, "string rewriting exceeded its step limit");
            }
            w.erase(w.begin() + i, w.begin() + i + r->lhs.size());
            w.insert(w.begin() + i, r->rhs.begin(), r->rhs.end());
            rewrote = true;
            break;
          }
        }
      }
      if (!rewrote) {
        return w;
      }
    }
  }

  PrefixRewritingSystem lift_srs(StringRewritingSystem const& S) {
    std::size_t const       m = S.alphabet().size();
    std::vector<RuleFamily> families;
    std::size_t             k = 0;
    for (auto const& r : S.rules()) {
      families.push_back({Dfa::universal(m), r.lhs, r.rhs});
      k = std::max({k, r.lhs.size(), r.rhs.size()});
    }
    return PrefixRewritingSystem(S.alphabet(), std::move(families), k);
  }

  ConfluenceReport check_local_confluence(StringRewritingSystem const& S,
                                          std::size_t                  step_limit) {
    ConfluenceReport report;
    Alphabet const&  A     = S.alphabet();
    auto const&      rules = S.rules();
    for (auto const& r : rules) {
      if (!shortlex_less(r.rhs, r.lhs)) {
        report.problems.push_back("rule " + show_rule(A, r)
                                  + " is not shortlex reducing");
      }
    }
    if (!report.ok()) {
      return report;
    }
    auto join = [&](Word const& source, Word const& x, Word const& y) {
      ++report.critical_pairs;
      Word nx = srs_normal_form(S, x, step_limit);
      Word ny = srs_normal_form(S, y, step_limit);
      if (nx != ny) {
        report.problems.push_back("critical pair from " + A.format(source) + ": "
                                  + A.format(nx) + " vs " + A.format(ny));
      }
    };
    for (std::size_t i = 0; i < rules.size(); ++i) {
      for (std::size_t j = 0; j < rules.size(); ++j) {
        Word const& u1 = rules[i].lhs;
        Word const& u2 = rules[j].lhs;
        // Proper overlaps: a nonempty proper suffix of u1 is a prefix of u2.
        for (std::size_t k = 1; k < u1.size() && k < u2.size(); ++k) {
          if (std::equal(u1.end() - k, u1.end(), u2.begin())) {
            Word tail(u2.begin() + k, u2.end());
            Word head(u1.begin(), u1.end() - k);
            join(concat(u1, tail), concat(rules[i].rhs, tail),
                 concat(head, rules[j].rhs));
          }
        }
        // u2 inside u1.
        if (i != j && u2.size() <= u1.size()) {
          for (std::size_t p = 0; p + u2.size() <= u1.size(); ++p) {
            if (std::equal(u2.begin(), u2.end(), u1.begin() + p)) {
              Word other(u1.begin(), u1.begin() + p);
              other.insert(other.end(), rules[j].rhs.begin(), rules[j].rhs.end());
              other.insert(other.end(), u1.begin() + p + u2.size(), u1.end());
              join(u1, rules[i].rhs, other);
            }
          }
        }
      }
    }
    return report;
  }

}  // namespace autostack

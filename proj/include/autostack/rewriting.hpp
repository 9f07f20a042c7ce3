// Prefix-rewriting systems presented by regular rule families, the reduction
// engine, irreducible languages, processing into the unique-redex form, and
// finite string rewriting systems with their prefix lift.

#ifndef AUTOSTACK_REWRITING_HPP_
#define AUTOSTACK_REWRITING_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "autostack/automata.hpp"
#include "autostack/core.hpp"
#include "autostack/sync.hpp"

namespace autostack {

  struct Rule {
    Word lhs;
    Word rhs;

    bool operator==(Rule const&) const = default;
  };

  //! The rules (w s, w t) for every w accepted by `prefixes`.  Families are
  //! stored with s and t starting with different letters (any common prefix
  //! is moved into the prefix language), so (s, t) is the unique split of
  //! each of the family's rules.
  struct RuleFamily {
    Dfa  prefixes;
    Word lhs_suffix;
    Word rhs_suffix;

    bool operator==(RuleFamily const&) const = default;
  };

  class PrefixRewritingSystem {
   public:
    PrefixRewritingSystem() = default;

    //! Throws if some family has equal suffixes, or a family's automaton is
    //! over the wrong alphabet.
    PrefixRewritingSystem(Alphabet                alphabet,
                          std::vector<RuleFamily> families,
                          std::optional<std::size_t> bound = std::nullopt);

    //! One singleton family per rule.
    static PrefixRewritingSystem finite(Alphabet                 alphabet,
                                        std::vector<Rule> const& rules);

    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }

    std::vector<RuleFamily> const& families() const noexcept {
      return _families;
    }

    std::optional<std::size_t> bound() const noexcept {
      return _bound;
    }

    //! The language of left-hand sides, the union of prefixes . lhs_suffix.
    Dfa const& lhs_language() const noexcept {
      return _lhs;
    }

    bool contains(Rule const& r) const;

    //! All rules whose left side has length <= max_lhs, sorted.
    std::vector<Rule> rules_up_to(std::size_t max_lhs) const;

    //! Whether every family is finite (its rules can be listed).
    bool is_finite() const;

   private:
    Alphabet                   _alphabet;
    std::vector<RuleFamily>    _families;
    std::optional<std::size_t> _bound;
    Dfa                        _lhs;
  };

  struct Redex {
    std::size_t family;  // index into families()
    Rule        rule;    // rule.lhs is a prefix of the word
  };

  //! The rule whose left side is the shortest reducible prefix of w; among
  //! rules with that left side, the shortlex least right side.
  std::optional<Redex> find_redex(PrefixRewritingSystem const& R, Word const& w);

  struct RewriteStep {
    std::size_t family;
    Rule        rule;
    Word        suffix;  // the word was rule.lhs . suffix
  };

  struct RewriteTrace {
    std::vector<RewriteStep> steps;
    Word                     final;
    //! False if the step limit was hit before reaching an irreducible word.
    bool complete = false;
  };

  RewriteTrace reduce(PrefixRewritingSystem const& R,
                      Word const&                  w,
                      std::size_t                  step_limit);

  //! The irreducible descendant of w; throws a budget error on exhaustion.
  Word normal_form(PrefixRewritingSystem const& R,
                   Word const&                  w,
                   std::size_t                  step_limit);

  //! Number of rewriting steps from w to its irreducible form.
  std::size_t prl(PrefixRewritingSystem const& R,
                  Word const&                  w,
                  std::size_t                  step_limit);

  //! A* \ (LHS . A*)
  Dfa irreducible_language(PrefixRewritingSystem const& R);

  //! mu(R), the padded rule pairs, as the union of Delta(prefixes) . mu(s, t).
  SyncRelation padded_rules(PrefixRewritingSystem const& R);

  //! A* \ (rho_1(mu(R)) . A*), computed from the padded rules.  Agrees with
  //! irreducible_language.
  Dfa irreducible_language_from_padding(PrefixRewritingSystem const& R);

  //! max over families of max(l(s), l(t)).
  std::size_t boundedness(PrefixRewritingSystem const& R);

  PrefixRewritingSystem with_bound(PrefixRewritingSystem const& R, std::size_t k);

  ////////////////////////////////////////////////////////////////////////
  // Processing
  ////////////////////////////////////////////////////////////////////////

  struct ProcessedCertificate {
    bool        inverses      = false;  // every letter has an inverse letter
    bool        prefixes      = false;  // proper prefixes of lhs irreducible
    bool        unique_rhs    = false;  // one rhs per lhs
    std::string witness;                // first failure, if any

    bool ok() const noexcept {
      return inverses && prefixes && unique_rhs;
    }
  };

  //! Checks the three processed conditions exactly, using automata rather
  //! than enumeration.  Inverse letters are checked by reducing a a^-1.
  ProcessedCertificate certify_processed(PrefixRewritingSystem const& Q,
                                         std::size_t                  step_limit);

  struct ProcessOptions {
    std::size_t search_depth = 12;      // for the inverse normal forms z_b
    std::size_t step_limit   = 1000000;
    //! Optional identity test; defaults to reducing with R.
    std::function<bool(Word const&)> is_identity;
  };

  struct ProcessResult {
    PrefixRewritingSystem system;
    ProcessedCertificate  certificate;
    //! For each letter of R's alphabet lacking an inverse: the normal form of
    //! its inverse.
    std::vector<std::pair<Letter, Word>> inverse_normal_forms;
  };

  //! Keeps the rules whose lhs has irreducible proper prefixes, one rule per
  //! lhs chosen by the (s, t) order (length of s, s, length of t, t), and
  //! adds rules for formal inverse letters when the alphabet is not
  //! inverse-closed.  Throws if the result fails certification.
  ProcessResult process(PrefixRewritingSystem const& R,
                        ProcessOptions const&        options = {});

  //! The (s, t) order used by process.
  bool suffix_pair_less(RuleFamily const& x, RuleFamily const& y);

  ////////////////////////////////////////////////////////////////////////
  // String rewriting systems
  ////////////////////////////////////////////////////////////////////////

  class StringRewritingSystem {
   public:
    StringRewritingSystem() = default;
    StringRewritingSystem(Alphabet alphabet, std::vector<Rule> rules);

    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }

    std::vector<Rule> const& rules() const noexcept {
      return _rules;
    }

   private:
    Alphabet          _alphabet;
    std::vector<Rule> _rules;
  };

  //! Rewrites at the leftmost occurrence of any left side (shortest side
  //! first on ties) until none remain.  Throws on budget exhaustion.
  Word srs_normal_form(StringRewritingSystem const& S,
                       Word                         w,
                       std::size_t                  step_limit);

  //! {(w u, w v) : (u, v) in S, w in A*}, bound = longest rule side.
  PrefixRewritingSystem lift_srs(StringRewritingSystem const& S);

  struct ConfluenceReport {
    std::size_t              critical_pairs = 0;
    std::vector<std::string> problems;

    bool ok() const noexcept {
      return problems.empty();
    }
  };

  //! Checks every rule is shortlex reducing and every critical pair
  //! (overlap or containment of left sides) is joinable.
  ConfluenceReport check_local_confluence(StringRewritingSystem const& S,
                                          std::size_t step_limit = 100000);

}  // namespace autostack

#endif  // AUTOSTACK_REWRITING_HPP_

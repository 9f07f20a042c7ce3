// Stacking structures: prefix-closed normal forms with a bounded function
// phi(y, a) naming a path for every Cayley graph edge, and the conversions
// to and from prefix-rewriting systems and asynchronous structures.

#ifndef AUTOSTACK_STACKING_HPP_
#define AUTOSTACK_STACKING_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "autostack/async.hpp"
#include "autostack/automata.hpp"
#include "autostack/core.hpp"
#include "autostack/rewriting.hpp"
#include "autostack/sync.hpp"

namespace autostack {

  //! phi(y, letter) = value for every y in domain.
  struct PhiComponent {
    Letter letter = 0;
    Dfa    domain;
    Word   value;

    bool operator==(PhiComponent const&) const = default;
  };

  //! phi(y, letter) = y^-1 z for every y in domain, where (y, z) is the pair
  //! accepted by `multiplier` with l(y) + l(z) <= max_total.  The domain is
  //! finite; the values are produced on demand.
  struct PairedComponent {
    Letter         letter = 0;
    Dfa            domain;
    AsyncAutomaton multiplier;
    std::size_t    max_total = 0;

    bool operator==(PairedComponent const&) const = default;
  };

  enum class EdgeClass { degenerate, recursive };

  class StackingStructure {
   public:
    StackingStructure() = default;

    //! Throws a validation error unless the normal forms contain 1 and are
    //! prefix-closed, every domain lies in the normal forms, every value has
    //! length <= bound, and for each letter the domains partition the
    //! normal forms (so phi is a function on N x A).
    StackingStructure(Alphabet                     alphabet,
                      Dfa                          normal_forms,
                      std::vector<PhiComponent>    components,
                      std::vector<PairedComponent> paired,
                      std::size_t                  bound);

    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }

    Dfa const& normal_forms() const noexcept {
      return _normal_forms;
    }

    std::vector<PhiComponent> const& components() const noexcept {
      return _components;
    }

    std::vector<PairedComponent> const& paired() const noexcept {
      return _paired;
    }

    std::size_t bound() const noexcept {
      return _bound;
    }

    //! phi(y, a); throws a usage error if y is not a normal form.
    Word phi(Word const& y, Letter a) const;

    //! Whether y a is a normal form or y ends in a^-1.
    EdgeClass edge_class(Word const& y, Letter a) const;

    //! graph(phi) as a ternary relation.  Paired components are listed
    //! explicitly; throws a budget error if that needs more than
    //! `max_listed` words.
    SyncRelation phi_graph(std::size_t max_listed = 20000) const;

    //! The same structure with paired components replaced by product
    //! components grouped by value; throws a budget error past max_listed.
    StackingStructure materialized(std::size_t max_listed = 20000) const;

    bool operator==(StackingStructure const&) const = default;

   private:
    Alphabet                     _alphabet;
    Dfa                          _normal_forms;
    std::vector<PhiComponent>    _components;
    std::vector<PairedComponent> _paired;
    std::size_t                  _bound = 1;
  };

  //! The normal form of w: letters are applied one at a time, following
  //! phi(y, a) letter by letter for every recursive edge.  Throws a budget
  //! error after step_limit letter applications.  If `steps` is given it
  //! receives the number of letter applications.
  Word stacking_normal_form(StackingStructure const& S,
                            Word const&              w,
                            std::size_t              step_limit,
                            std::size_t*             steps = nullptr);

  //! The third component of the unique triple (y, a, u) accepted by a
  //! ternary relation with l(u) <= max_len, by a depth-first search over u
  //! pruned by the live states.  Throws a validation error if there is no
  //! such triple or more than one.
  Word phi_from_graph(SyncRelation const& graph, Word const& y, Letter a, std::size_t max_len);

  //! Degenerate domain for a letter: {y in N : y a in N} union (N ending in a^-1).
  Dfa degenerate_domain(Alphabet const& A, Dfa const& normal_forms, Letter a);

  //! R_phi: families (J_a, a a^-1, 1) and (L_{a,u}, a, u) over recursive
  //! edges, bound max(k, 2).
  PrefixRewritingSystem stacking_to_cprs(StackingStructure const& S,
                                         std::size_t              max_listed = 20000);

  //! N = Irr(Q) and phi(y, a) = s^-1 t for the rule (w s a, w t) with y = w s,
  //! where s a and t do not start with the same letter.  Bound 2k.  Throws
  //! a validation error if Q is not processed.
  StackingStructure cprs_to_stacking(PrefixRewritingSystem const& Q,
                                     std::size_t                  step_limit = 1000000);

  struct AsyncConversion {
    StackingStructure structure;
    std::size_t       constant = 0;  // the constant C of the construction
  };

  //! Builds phi from bounded asynchronous multipliers: degenerate edges get
  //! a, recursive edges with l(y) + l(y_ga) <= C^2 + 3C get y^-1 y_ga, and
  //! longer ones get s^-1 p a r^-1 t after splitting the run at the shortest
  //! suffix holding C + 1 first-tape letters.  Bound C^2 + 3C.
  AsyncConversion stacking_from_async(AsyncAutomaticStructure const& AS);

  //! Drops the letters in `identity_letters` from the alphabet and from
  //! every phi value.  The normal forms must not use them.
  StackingStructure strip_identity_letters(StackingStructure const&   S,
                                           std::vector<Letter> const& identity_letters);

  //! The letters whose images under the oracle are trivial.
  std::vector<Letter> identity_letters(Alphabet const& A, GroupOracle const& oracle);

  //! Relators u a^-1 for every value u != a of phi(., a), sorted shortlex.
  Presentation stacking_presentation(StackingStructure const& S,
                                     std::size_t              max_listed = 20000);

  struct StackingReport {
    std::size_t              checked_edges = 0;
    std::vector<std::string> problems;

    bool ok() const noexcept {
      return problems.empty();
    }
  };

  //! Exact checks (degenerate edges are sent to a) plus, over the normal
  //! forms of length <= radius, that phi(y, a) has length <= bound and
  //! represents a under the oracle (when one is given).
  StackingReport verify_stacking(StackingStructure const& S,
                                 GroupOracle const*       oracle,
                                 std::size_t              radius);

}  // namespace autostack

#endif  // AUTOSTACK_STACKING_HPP_

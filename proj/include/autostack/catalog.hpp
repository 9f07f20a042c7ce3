// Built-in example groups with convergent rewriting systems and oracles.

#ifndef AUTOSTACK_CATALOG_HPP_
#define AUTOSTACK_CATALOG_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "autostack/async.hpp"
#include "autostack/core.hpp"
#include "autostack/rewriting.hpp"

namespace autostack {

  struct CatalogEntry {
    std::string                             name;
    Alphabet                                alphabet;
    StringRewritingSystem                   rules;
    std::shared_ptr<GroupOracle const>      oracle;
    std::optional<AsyncAutomaticStructure>  async;
    std::string                             description;

    //! lhs . rhs^-1 for every rule.
    std::vector<Word> relators() const;
  };

  //! Evaluates by free reduction.
  std::shared_ptr<GroupOracle const> free_oracle(Alphabet alphabet);

  //! Evaluates by the normal form of a convergent string rewriting system.
  std::shared_ptr<GroupOracle const> rewriting_oracle(StringRewritingSystem S);

  //! Names of the built-in entries.
  std::vector<std::string> builtin_entries();

  //! A built-in entry or, failing that, AUTOSTACK_CATALOG_DIR/<name>.rules.
  //! The entry is verified before it is returned: local confluence, shortlex
  //! reducing rules, and agreement of the oracle with the normal forms on
  //! all words of length <= 5.  Throws a usage error for unknown names and a
  //! validation error when verification fails.
  CatalogEntry load_entry(std::string const& name);

  //! The checks done by load_entry.
  void verify_entry(CatalogEntry const& entry, std::size_t max_len = 5);

  //! Hand-built asynchronously automatic structures.
  AsyncAutomaticStructure free2_async_structure();
  AsyncAutomaticStructure z2_async_structure();

}  // namespace autostack

#endif  // AUTOSTACK_CATALOG_HPP_

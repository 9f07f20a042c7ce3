// Line-oriented text formats.
//
//   LETTERS a A b B        letter names in order
//   INV a A b B            inverse pairs ("x x" for a self-inverse letter)
//   RULES                  followed by lines "lhs -> rhs", "1" for the empty word
//   DFA                    followed by "states n", "start i", "accept i j ...",
//                          then one line "i sym j" per transition
//
// Lines starting with '#' are comments.  Padded symbols are written "(x,y)"
// with "_" for the pad; the end marker of a two-tape automaton is "\eot".
// Serialization is byte-stable: transitions are listed by state, then symbol.

#ifndef AUTOSTACK_TEXTIO_HPP_
#define AUTOSTACK_TEXTIO_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "autostack/async.hpp"
#include "autostack/automata.hpp"
#include "autostack/core.hpp"
#include "autostack/rewriting.hpp"
#include "autostack/stacking.hpp"
#include "autostack/sync.hpp"

namespace autostack {

  //! Splits text into non-comment, non-blank lines and reports errors with
  //! line and column.
  class LineReader {
   public:
    explicit LineReader(std::string_view text);

    bool done() const noexcept {
      return _pos >= _lines.size();
    }

    //! Tokens of the current line.
    std::vector<std::string> const& peek() const;

    std::vector<std::string> next();

    //! Consumes a line whose first token is `keyword` and returns the rest.
    std::vector<std::string> expect(std::string const& keyword);

    //! The rest of the current line after its first token, untokenized.
    std::string rest_of_line() const;

    [[noreturn]] void error(std::string const& what, std::size_t token = 0) const;

   private:
    struct Line {
      std::size_t              number;
      std::string              text;
      std::vector<std::string> tokens;
      std::vector<std::size_t> columns;
    };

    std::vector<Line> _lines;
    std::size_t       _pos = 0;
  };

  using SymbolNames = std::vector<std::string>;

  //! Names of padded symbols, "(x,y)".
  SymbolNames padded_symbol_names(Alphabet const& A, std::size_t arity);

  //! Letter names plus "\eot".
  SymbolNames async_symbol_names(Alphabet const& A);

  std::string format_alphabet(Alphabet const& A);
  Alphabet    parse_alphabet(LineReader& in);

  std::string format_dfa_block(Dfa const& d, SymbolNames const& names);
  Dfa         parse_dfa_block(LineReader& in, SymbolNames const& names);

  std::string           format_rule_file(StringRewritingSystem const& S);
  StringRewritingSystem parse_rule_file(std::string_view text);

  struct DfaFile {
    Alphabet alphabet;
    Dfa      dfa;
  };

  std::string format_dfa_file(Alphabet const& A, Dfa const& d);
  DfaFile     parse_dfa_file(std::string_view text);

  struct RelationFile {
    Alphabet     alphabet;
    SyncRelation relation;
  };

  //! "RELATION n" then a DFA block over padded symbols.
  std::string  format_relation_file(Alphabet const& A, SyncRelation const& R);
  RelationFile parse_relation_file(std::string_view text);

  struct AsyncFile {
    Alphabet       alphabet;
    AsyncAutomaton automaton;
  };

  //! "ASYNC", "kinds Q1 Q2 ...", then a DFA block (the accept line lists the
  //! accept state).
  std::string format_async_block(AsyncAutomaton const& M, Alphabet const& A);
  AsyncAutomaton parse_async_block(LineReader& in, Alphabet const& A);
  std::string format_async_file(Alphabet const& A, AsyncAutomaton const& M);
  AsyncFile   parse_async_file(std::string_view text);

  //! "FAMILY lhs -> rhs" followed by a DFA block of prefixes, per family;
  //! an optional "BOUND k" line precedes them.
  std::string           format_prefix_system(PrefixRewritingSystem const& R);
  PrefixRewritingSystem parse_prefix_system(std::string_view text);

  //! "BLOCK k", "NORMAL" and a DFA block, then "MULTIPLIER x" followed by
  //! an ASYNC block for every letter in order.
  std::string             format_async_structure(AsyncAutomaticStructure const& S);
  AsyncAutomaticStructure parse_async_structure(std::string_view text);

  //! "STACKING k", "NORMAL" and a DFA block, then "PHI x -> value" or
  //! "PAIRED x total" (followed by an ASYNC block) per component, each with
  //! a DFA block for its domain.  Syntax errors are parse errors; a bundle
  //! that breaks the stacking axioms is a validation error.
  std::string       format_stacking_bundle(StackingStructure const& S);
  StackingStructure parse_stacking_bundle(std::string_view text);

  //! Reads a word written with letter names, "1" for the empty word.
  Word parse_word(Alphabet const& A, std::string_view text);

}  // namespace autostack

#endif  // AUTOSTACK_TEXTIO_HPP_

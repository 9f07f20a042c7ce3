#include "autostack/textio.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "autostack/error.hpp"

namespace autostack {

  LineReader::LineReader(std::string_view text) {
    std::size_t number = 0;
    while (!text.empty()) {
      auto             eol  = text.find('\n');
      std::string_view line = text.substr(0, eol);
      text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
      ++number;
      if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
      }
      if (!line.empty() && line.front() == '#') {
        continue;
      }
      Line l{number, std::string(line), {}, {}};
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
          ++i;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') {
          ++j;
        }
        if (j > i) {
          l.tokens.emplace_back(line.substr(i, j - i));
          l.columns.push_back(i + 1);
        }
        i = j;
      }
      if (!l.tokens.empty()) {
        _lines.push_back(std::move(l));
      }
    }
  }

  std::vector<std::string> const& LineReader::peek() const {
    if (done()) {
      fail(ErrorKind::parse, "unexpected end of input");
    }
    return _lines[_pos].tokens;
  }

  std::vector<std::string> LineReader::next() {
    auto tokens = peek();
    ++_pos;
    return tokens;
  }

  std::vector<std::string> LineReader::expect(std::string const& keyword) {
    if (done()) {
      fail(ErrorKind::parse, "unexpected end of input, expected " + keyword);
    }
    if (peek().front() != keyword) {
      error("expected " + keyword);
    }
    auto tokens = next();
    tokens.erase(tokens.begin());
    return tokens;
  }

  std::string LineReader::rest_of_line() const {
    auto const& l = _lines.at(_pos);
    auto        i = l.columns[0] - 1 + l.tokens[0].size();
    return l.text.substr(i);
  }

  void LineReader::error(std::string const& what, std::size_t token) const {
    if (done()) {
      fail(ErrorKind::parse, what);
    }
    auto const& l   = _lines[_pos];
    std::size_t col = token < l.columns.size() ? l.columns[token] : l.text.size() + 1;
    fail(ErrorKind::parse,
         "line " + std::to_string(l.number) + ", column " + std::to_string(col) + ": " + what);
  }

  namespace {

    std::size_t to_number(LineReader const& in, std::string const& s, std::size_t token) {
      std::size_t value = 0;
      auto [p, ec]      = std::from_chars(s.data(), s.data() + s.size(), value);
      if (ec != std::errc() || p != s.data() + s.size()) {
        in.error("expected a number, got '" + s + "'", token);
      }
      return value;
    }

    bool is_keyword(std::string const& s) {
      return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return c >= 'A' && c <= 'Z';
      });
    }

    Word parse_word_at(LineReader const& in, Alphabet const& A, std::string_view text) {
      try {
        return A.parse(text);
      } catch (Error const& e) {
        in.error(e.what());
      }
    }

    std::string trim(std::string_view s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string_view::npos ? std::string() : std::string(s.substr(b, e - b + 1));
    }

    // "lhs -> rhs" split at the arrow.
    std::pair<std::string, std::string> split_arrow(LineReader const& in, std::string const& text) {
      auto at = text.find("->");
      if (at == std::string::npos || text.find("->", at + 2) != std::string::npos) {
        in.error("expected 'lhs -> rhs'");
      }
      return {trim(text.substr(0, at)), trim(text.substr(at + 2))};
    }

    std::string format_rule(Alphabet const& A, Word const& lhs, Word const& rhs) {
      return A.format(lhs) + " -> " + A.format(rhs);
    }

  }  // namespace

  SymbolNames padded_symbol_names(Alphabet const& A, std::size_t arity) {
    PaddedAlphabet P(A.size(), arity);
    SymbolNames    names;
    for (Symbol x = 0; x < P.size(); ++x) {
      std::string s = "(";
      auto        t = P.decode(x);
      for (std::size_t i = 0; i < t.size(); ++i) {
        s += (i ? "," : "") + (t[i] == P.pad() ? std::string("_") : A.name(t[i]));
      }
      names.push_back(s + ")");
    }
    return names;
  }

  SymbolNames async_symbol_names(Alphabet const& A) {
    SymbolNames names = A.names();
    names.emplace_back("\\eot");
    return names;
  }

  std::string format_alphabet(Alphabet const& A) {
    std::string out = "LETTERS";
    for (auto const& n : A.names()) {
      out += " " + n;
    }
    out += "\nINV";
    for (Letter x = 0; x < A.size(); ++x) {
      if (A.has_inverse(x) && A.inverse(x) >= x) {
        out += " " + A.name(x) + " " + A.name(A.inverse(x));
      }
    }
    return out + "\n";
  }

  Alphabet parse_alphabet(LineReader& in) {
    auto names = in.expect("LETTERS");
    if (names.empty()) {
      fail(ErrorKind::parse, "LETTERS line names no letters");
    }
    std::vector<std::pair<std::string, std::string>> inverses;
    if (!in.done() && in.peek().front() == "INV") {
      auto pairs = in.peek();
      if (pairs.size() % 2 == 0) {
        in.error("INV needs pairs of letters");
      }
      for (std::size_t i = 1; i + 1 < pairs.size(); i += 2) {
        inverses.emplace_back(pairs[i], pairs[i + 1]);
      }
      try {
        Alphabet A(names, inverses);
        in.next();
        return A;
      } catch (Error const& e) {
        in.error(e.what());
      }
    }
    try {
      return Alphabet(names, inverses);
    } catch (Error const& e) {
      fail(ErrorKind::parse, std::string("LETTERS: ") + e.what());
    }
  }

  std::string format_dfa_block(Dfa const& d, SymbolNames const& names) {
    std::ostringstream out;
    out << "states " << d.num_states() << "\nstart " << d.start() << "\naccept";
    for (State q = 0; q < d.num_states(); ++q) {
      if (d.accepting(q)) {
        out << ' ' << q;
      }
    }
    out << '\n';
    for (State q = 0; q < d.num_states(); ++q) {
      for (Symbol x = 0; x < d.alphabet_size(); ++x) {
        out << q << ' ' << names[x] << ' ' << d.next(q, x) << '\n';
      }
    }
    return out.str();
  }

  Dfa parse_dfa_block(LineReader& in, SymbolNames const& names) {
    std::map<std::string, Symbol> index;
    for (Symbol x = 0; x < names.size(); ++x) {
      index[names[x]] = x;
    }
    if (in.done() || in.peek().front() != "states" || in.peek().size() != 2) {
      in.error("expected 'states n'");
    }
    std::size_t const n = to_number(in, in.peek()[1], 1);
    if (n == 0) {
      in.error("an automaton needs at least one state", 1);
    }
    in.next();
    if (in.done() || in.peek().size() != 2) {
      in.error("expected 'start i'");
    }
    std::size_t start = to_number(in, in.peek()[1], 1);
    if (start >= n) {
      in.error("start state out of range", 1);
    }
    in.expect("start");
    Dfa d(names.size(), n);
    d.set_start(static_cast<State>(start));
    if (in.done() || in.peek().front() != "accept") {
      in.error("expected 'accept ...'");
    }
    auto const& acc = in.peek();
    for (std::size_t i = 1; i < acc.size(); ++i) {
      std::size_t q = to_number(in, acc[i], i);
      if (q >= n) {
        in.error("accept state out of range", i);
      }
      d.set_accepting(static_cast<State>(q));
    }
    in.next();
    std::vector<bool> seen(n * names.size(), false);
    while (!in.done() && !is_keyword(in.peek().front()) && in.peek().front() != "states") {
      auto const& t = in.peek();
      if (t.size() != 3) {
        in.error("expected 'state symbol state'");
      }
      std::size_t from = to_number(in, t[0], 0);
      std::size_t to   = to_number(in, t[2], 2);
      auto        it   = index.find(t[1]);
      if (it == index.end()) {
        in.error("unknown symbol '" + t[1] + "'", 1);
      }
      if (from >= n || to >= n) {
        in.error("state out of range");
      }
      std::size_t slot = from * names.size() + it->second;
      if (seen[slot]) {
        in.error("duplicate transition", 1);
      }
      seen[slot] = true;
      d.set_next(static_cast<State>(from), it->second, static_cast<State>(to));
      in.next();
    }
    for (std::size_t slot = 0; slot < seen.size(); ++slot) {
      if (!seen[slot]) {
        fail(ErrorKind::parse, "partial transition function: no transition from state "
                                   + std::to_string(slot / names.size()) + " on "
                                   + names[slot % names.size()]);
      }
    }
    return d;
  }

  std::string format_rule_file(StringRewritingSystem const& S) {
    std::string out = format_alphabet(S.alphabet()) + "RULES\n";
    for (auto const& r : S.rules()) {
      out += format_rule(S.alphabet(), r.lhs, r.rhs) + "\n";
    }
    return out;
  }

  StringRewritingSystem parse_rule_file(std::string_view text) {
    LineReader in(text);
    Alphabet   A = parse_alphabet(in);
    in.expect("RULES");
    std::vector<Rule> rules;
    while (!in.done()) {
      std::string line = in.peek().front() + in.rest_of_line();
      auto [l, r]      = split_arrow(in, line);
      rules.push_back({parse_word_at(in, A, l), parse_word_at(in, A, r)});
      in.next();
    }
    try {
      return StringRewritingSystem(A, std::move(rules));
    } catch (Error const& e) {
      fail(ErrorKind::parse, e.what());
    }
  }

  std::string format_dfa_file(Alphabet const& A, Dfa const& d) {
    return format_alphabet(A) + "DFA\n" + format_dfa_block(d, A.names());
  }

  DfaFile parse_dfa_file(std::string_view text) {
    LineReader in(text);
    DfaFile    f;
    f.alphabet = parse_alphabet(in);
    in.expect("DFA");
    f.dfa = parse_dfa_block(in, f.alphabet.names());
    if (!in.done()) {
      in.error("trailing input");
    }
    return f;
  }

  std::string format_relation_file(Alphabet const& A, SyncRelation const& R) {
    std::size_t n = R.padded().arity();
    return format_alphabet(A) + "RELATION " + std::to_string(n) + "\n"
           + format_dfa_block(R.dfa(), padded_symbol_names(A, n));
  }

  RelationFile parse_relation_file(std::string_view text) {
    LineReader in(text);
    Alphabet   A    = parse_alphabet(in);
    auto       args = in.peek();
    if (args.size() != 2) {
      in.error("expected 'RELATION n'");
    }
    std::size_t arity = to_number(in, args[1], 1);
    if (arity == 0) {
      in.error("arity must be positive", 1);
    }
    in.expect("RELATION");
    Dfa d = parse_dfa_block(in, padded_symbol_names(A, arity));
    if (!in.done()) {
      in.error("trailing input");
    }
    return {A, SyncRelation(PaddedAlphabet(A.size(), arity), d)};
  }

  std::string format_async_block(AsyncAutomaton const& M, Alphabet const& A) {
    std::string out = "ASYNC\nkinds";
    for (auto k : M.kinds()) {
      out += std::string(" ") + to_string(k);
    }
    out += "\n";
    Dfa d = M.dfa();
    for (State q = 0; q < d.num_states(); ++q) {
      d.set_accepting(q, q == M.accept_state());
    }
    return out + format_dfa_block(d, async_symbol_names(A));
  }

  AsyncAutomaton parse_async_block(LineReader& in, Alphabet const& A) {
    in.expect("ASYNC");
    if (in.done() || in.peek().front() != "kinds") {
      in.error("expected 'kinds ...'");
    }
    std::vector<StateKind> kinds;
    auto const&            names = in.peek();
    for (std::size_t i = 1; i < names.size(); ++i) {
      bool found = false;
      for (auto k : {StateKind::read_first, StateKind::read_first_done, StateKind::read_second,
                     StateKind::read_second_done, StateKind::accept, StateKind::fail}) {
        if (names[i] == to_string(k)) {
          kinds.push_back(k);
          found = true;
        }
      }
      if (!found) {
        in.error("unknown state kind '" + names[i] + "'", i);
      }
    }
    in.next();
    Dfa d = parse_dfa_block(in, async_symbol_names(A));
    try {
      return AsyncAutomaton(A.size(), d, kinds);
    } catch (Error const& e) {
      fail(ErrorKind::parse, e.what());
    }
  }

  std::string format_async_file(Alphabet const& A, AsyncAutomaton const& M) {
    return format_alphabet(A) + format_async_block(M, A);
  }

  AsyncFile parse_async_file(std::string_view text) {
    LineReader in(text);
    AsyncFile  f;
    f.alphabet  = parse_alphabet(in);
    f.automaton = parse_async_block(in, f.alphabet);
    if (!in.done()) {
      in.error("trailing input");
    }
    return f;
  }

  std::string format_prefix_system(PrefixRewritingSystem const& R) {
    Alphabet const& A   = R.alphabet();
    std::string     out = format_alphabet(A);
    if (R.bound()) {
      out += "BOUND " + std::to_string(*R.bound()) + "\n";
    }
    for (auto const& f : R.families()) {
      out += "FAMILY " + format_rule(A, f.lhs_suffix, f.rhs_suffix) + "\n";
      out += format_dfa_block(f.prefixes, A.names());
    }
    return out;
  }

  PrefixRewritingSystem parse_prefix_system(std::string_view text) {
    LineReader                 in(text);
    Alphabet                   A = parse_alphabet(in);
    std::optional<std::size_t> bound;
    if (!in.done() && in.peek().front() == "BOUND") {
      if (in.peek().size() != 2) {
        in.error("expected 'BOUND k'");
      }
      bound = to_number(in, in.peek()[1], 1);
      in.next();
    }
    std::vector<RuleFamily> families;
    while (!in.done()) {
      if (in.peek().front() != "FAMILY") {
        in.error("expected FAMILY");
      }
      auto [l, r] = split_arrow(in, in.rest_of_line());
      Word lhs    = parse_word_at(in, A, l);
      Word rhs    = parse_word_at(in, A, r);
      in.next();
      families.push_back({parse_dfa_block(in, A.names()), lhs, rhs});
    }
    try {
      return PrefixRewritingSystem(A, std::move(families), bound);
    } catch (Error const& e) {
      fail(ErrorKind::parse, e.what());
    }
  }

  namespace {

    Letter letter_at(LineReader const& in, Alphabet const& A, std::string const& name,
                     std::size_t token) {
      auto x = A.find(name);
      if (!x) {
        in.error("unknown letter '" + name + "'", token);
      }
      return *x;
    }

    std::size_t keyword_number(LineReader& in, std::string const& keyword) {
      if (in.done() || in.peek().front() != keyword || in.peek().size() != 2) {
        in.error("expected '" + keyword + " n'");
      }
      std::size_t n = to_number(in, in.peek()[1], 1);
      in.next();
      return n;
    }

  }  // namespace

  std::string format_async_structure(AsyncAutomaticStructure const& S) {
    Alphabet const& A   = S.alphabet;
    std::string     out = format_alphabet(A);
    out += "BLOCK " + std::to_string(S.block_bound) + "\nNORMAL\n";
    out += format_dfa_block(S.normal_forms, A.names());
    for (Letter x = 0; x < S.multipliers.size(); ++x) {
      out += "MULTIPLIER " + A.name(x) + "\n" + format_async_block(S.multipliers[x], A);
    }
    return out;
  }

  AsyncAutomaticStructure parse_async_structure(std::string_view text) {
    LineReader              in(text);
    AsyncAutomaticStructure S;
    S.alphabet    = parse_alphabet(in);
    S.block_bound = keyword_number(in, "BLOCK");
    in.expect("NORMAL");
    S.normal_forms = parse_dfa_block(in, S.alphabet.names());
    while (!in.done()) {
      auto args = in.expect("MULTIPLIER");
      if (args.size() != 1) {
        in.error("expected 'MULTIPLIER x'");
      }
      std::size_t expected = S.multipliers.size();
      if (expected >= S.alphabet.size() || args[0] != S.alphabet.name(static_cast<Letter>(expected))) {
        fail(ErrorKind::parse, "multipliers must be listed once per letter, in letter order");
      }
      S.multipliers.push_back(parse_async_block(in, S.alphabet));
    }
    if (S.multipliers.size() != S.alphabet.size()) {
      fail(ErrorKind::parse, "expected one multiplier per letter");
    }
    return S;
  }

  std::string format_stacking_bundle(StackingStructure const& S) {
    Alphabet const& A   = S.alphabet();
    std::string     out = format_alphabet(A);
    out += "STACKING " + std::to_string(S.bound()) + "\nNORMAL\n";
    out += format_dfa_block(S.normal_forms(), A.names());
    for (auto const& c : S.components()) {
      out += "PHI " + A.name(c.letter) + " -> " + A.format(c.value) + "\n";
      out += format_dfa_block(c.domain, A.names());
    }
    for (auto const& c : S.paired()) {
      out += "PAIRED " + A.name(c.letter) + " " + std::to_string(c.max_total) + "\n";
      out += format_dfa_block(c.domain, A.names());
      out += format_async_block(c.multiplier, A);
    }
    return out;
  }

  StackingStructure parse_stacking_bundle(std::string_view text) {
    LineReader in(text);
    Alphabet   A     = parse_alphabet(in);
    std::size_t bound = keyword_number(in, "STACKING");
    in.expect("NORMAL");
    Dfa                          N = parse_dfa_block(in, A.names());
    std::vector<PhiComponent>    components;
    std::vector<PairedComponent> paired;
    while (!in.done()) {
      auto const& head = in.peek().front();
      if (head == "PHI") {
        auto [l, r] = split_arrow(in, in.rest_of_line());
        Letter x    = letter_at(in, A, trim(l), 1);
        Word   v    = parse_word_at(in, A, r);
        in.next();
        components.push_back({x, parse_dfa_block(in, A.names()), v});
      } else if (head == "PAIRED") {
        auto args = in.peek();
        if (args.size() != 3) {
          in.error("expected 'PAIRED x total'");
        }
        Letter      x     = letter_at(in, A, args[1], 1);
        std::size_t total = to_number(in, args[2], 2);
        in.next();
        Dfa domain = parse_dfa_block(in, A.names());
        paired.push_back({x, domain, parse_async_block(in, A), total});
      } else {
        in.error("expected PHI or PAIRED");
      }
    }
    return StackingStructure(A, N, std::move(components), std::move(paired), bound);
  }

  Word parse_word(Alphabet const& A, std::string_view text) {
    try {
      return A.parse(text);
    } catch (Error const& e) {
      fail(ErrorKind::parse, e.what());
    }
  }

}  // namespace autostack

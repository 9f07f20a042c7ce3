#include "autostack/core.hpp"

#include <algorithm>
#include <sstream>

#include "autostack/error.hpp"

namespace autostack {

  char const* to_string(ErrorKind kind) noexcept {
    switch (kind) {
      case ErrorKind::validation:
        return "validation";
      case ErrorKind::budget:
        return "budget";
      case ErrorKind::parse:
        return "parse";
      case ErrorKind::usage:
        return "usage";
    }
    return "unknown";
  }

  bool is_reserved_symbol(std::string_view name) {
    if (name.empty() || name == "1" || name == "$" || name == "#"
        || name == "_") {
      return true;
    }
    for (char c : name) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '(' || c == ')'
          || c == ',' || c == '$' || c == '#') {
        return true;
      }
    }
    return name.find("->") != std::string_view::npos;
  }

  Alphabet::Alphabet(
      std::vector<std::string> const&                            names,
      std::vector<std::pair<std::string, std::string>> const& inverses)
      : _names(names), _inv(names.size(), kNoInverse) {
    if (names.size() >= kNoInverse) {
      fail(ErrorKind::usage, "alphabet too large");
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (is_reserved_symbol(names[i])) {
        fail(ErrorKind::parse, "reserved symbol used as letter: '" + names[i] + "'");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (names[i] == names[j]) {
          fail(ErrorKind::parse, "duplicate letter '" + names[i] + "'");
        }
      }
    }
    for (auto const& [x, y] : inverses) {
      auto xi = find(x);
      auto yi = find(y);
      if (!xi || !yi) {
        fail(ErrorKind::parse, "inverse pair names unknown letter: " + x + " " + y);
      }
      if ((_inv[*xi] != kNoInverse && _inv[*xi] != *yi)
          || (_inv[*yi] != kNoInverse && _inv[*yi] != *xi)) {
        fail(ErrorKind::parse, "inverse pairs are not an involution at " + x);
      }
      _inv[*xi] = *yi;
      _inv[*yi] = *xi;
    }
  }

  Alphabet Alphabet::paired(std::vector<std::string> const& names) {
    std::vector<std::pair<std::string, std::string>> inv;
    for (std::size_t i = 0; i + 1 < names.size(); i += 2) {
      inv.emplace_back(names[i], names[i + 1]);
    }
    return Alphabet(names, inv);
  }

  std::optional<Letter> Alphabet::find(std::string_view name) const {
    for (std::size_t i = 0; i < _names.size(); ++i) {
      if (_names[i] == name) {
        return static_cast<Letter>(i);
      }
    }
    return std::nullopt;
  }

  Letter Alphabet::inverse(Letter x) const {
    Letter y = _inv.at(x);
    if (y == kNoInverse) {
      fail(ErrorKind::usage, "letter '" + _names[x] + "' has no inverse");
    }
    return y;
  }

  bool Alphabet::inverse_closed() const noexcept {
    return std::none_of(
        _inv.begin(), _inv.end(), [](Letter y) { return y == kNoInverse; });
  }

  Word Alphabet::parse(std::string_view text) const {
    Word               result;
    std::istringstream in{std::string(text)};
    std::string        token;
    while (in >> token) {
      if (token == "1") {
        continue;
      }
      std::size_t pos = 0;
      while (pos < token.size()) {
        std::size_t best_len = 0;
        Letter      best     = 0;
        for (std::size_t i = 0; i < _names.size(); ++i) {
          auto const& n = _names[i];
          if (n.size() > best_len && token.compare(pos, n.size(), n) == 0) {
            best_len = n.size();
            best     = static_cast<Letter>(i);
          }
        }
        if (best_len == 0) {
          fail(ErrorKind::parse,
               "cannot parse '" + token.substr(pos) + "' as a letter");
        }
        result.push_back(best);
        pos += best_len;
      }
    }
    return result;
  }

  std::string Alphabet::format(Word const& w) const {
    if (w.empty()) {
      return "1";
    }
    bool single = std::all_of(_names.begin(), _names.end(), [](auto const& n) {
      return n.size() == 1;
    });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!single && i > 0) {
        out += ' ';
      }
      out += _names.at(w[i]);
    }
    return out;
  }

  Alphabet Alphabet::inverse_completion() const {
    Alphabet result = *this;
    for (std::size_t i = 0; i < _names.size(); ++i) {
      if (_inv[i] == kNoInverse) {
        std::string formal = _names[i] + "^";
        if (result.find(formal)) {
          fail(ErrorKind::usage, "formal inverse name clash: " + formal);
        }
        auto j = static_cast<Letter>(result._names.size());
        result._names.push_back(formal);
        result._inv.push_back(static_cast<Letter>(i));
        result._inv[i] = j;
      }
    }
    return result;
  }

  Word formal_inverse(Alphabet const& alphabet, Word const& w) {
    Word result;
    result.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      result.push_back(alphabet.inverse(*it));
    }
    return result;
  }

  Word free_reduce(Alphabet const& alphabet, Word const& w) {
    Word stack;
    for (Letter x : w) {
      if (!stack.empty() && alphabet.has_inverse(x)
          && stack.back() == alphabet.inverse(x)) {
        stack.pop_back();
      } else {
        stack.push_back(x);
      }
    }
    return stack;
  }

  bool shortlex_less(Word const& u, Word const& v) {
    if (u.size() != v.size()) {
      return u.size() < v.size();
    }
    return u < v;
  }

  Word concat(Word u, Word const& v) {
    u.insert(u.end(), v.begin(), v.end());
    return u;
  }

  bool is_prefix(Word const& prefix, Word const& w) {
    return prefix.size() <= w.size()
           && std::equal(prefix.begin(), prefix.end(), w.begin());
  }

  bool is_suffix(Word const& suffix, Word const& w) {
    return suffix.size() <= w.size()
           && std::equal(suffix.begin(), suffix.end(), w.end() - suffix.size());
  }

  std::size_t common_prefix_length(Word const& u, Word const& v) {
    std::size_t i = 0;
    while (i < u.size() && i < v.size() && u[i] == v[i]) {
      ++i;
    }
    return i;
  }

}  // namespace autostack

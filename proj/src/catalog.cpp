#include "autostack/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "autostack/error.hpp"
#include "autostack/textio.hpp"

namespace autostack {

  std::vector<Word> CatalogEntry::relators() const {
    std::vector<Word> result;
    for (auto const& r : rules.rules()) {
      result.push_back(concat(r.lhs, formal_inverse(alphabet, r.rhs)));
    }
    return result;
  }

  namespace {

    class FreeOracle final : public GroupOracle {
     public:
      explicit FreeOracle(Alphabet A) : _alphabet(std::move(A)) {}

      Element eval(Word const& w) const override {
        Word    r = free_reduce(_alphabet, w);
        Element e(r.begin(), r.end());
        return e;
      }

     private:
      Alphabet _alphabet;
    };

    class RewritingOracle final : public GroupOracle {
     public:
      explicit RewritingOracle(StringRewritingSystem S) : _system(std::move(S)) {}

      Element eval(Word const& w) const override {
        Word r = srs_normal_form(_system, w, 1000000);
        return Element(r.begin(), r.end());
      }

     private:
      StringRewritingSystem _system;
    };

    // Letters a A b B act as (1, 0), (-1, 0), (0, 1), (0, -1).
    class PairOracle final : public GroupOracle {
     public:
      explicit PairOracle(bool twisted) : _twisted(twisted) {}

      Element eval(Word const& w) const override {
        std::int64_t m = 0, n = 0;
        for (Letter x : w) {
          if (x < 2) {
            std::int64_t step = x == 0 ? 1 : -1;
            bool         flip = _twisted && (n % 2 != 0);
            m += flip ? -step : step;
          } else {
            n += x == 2 ? 1 : -1;
          }
        }
        return {m, n};
      }

     private:
      bool _twisted;
    };

    // a = (0 1), b = (1 2) acting on the right of {0, 1, 2}.
    class S3Oracle final : public GroupOracle {
     public:
      Element eval(Word const& w) const override {
        Element image{0, 1, 2};
        for (Letter x : w) {
          std::int64_t u = x == 0 ? 0 : 1;
          for (auto& p : image) {
            if (p == u) {
              p = u + 1;
            } else if (p == u + 1) {
              p = u;
            }
          }
        }
        return image;
      }
    };

    std::vector<Rule> parse_rules(Alphabet const&                          A,
                                  std::vector<std::pair<char const*, char const*>> const& text) {
      std::vector<Rule> rules;
      for (auto const& [l, r] : text) {
        rules.push_back({A.parse(l), A.parse(r)});
      }
      return rules;
    }

    std::vector<std::pair<char const*, char const*>> free_rule_text() {
      return {{"aA", "1"}, {"Aa", "1"}, {"bB", "1"}, {"Bb", "1"}};
    }

    CatalogEntry make_builtin(std::string const& name) {
      CatalogEntry e;
      e.name = name;
      if (name == "free2" || name == "z2" || name == "klein") {
        e.alphabet = Alphabet::paired({"a", "A", "b", "B"});
        auto text  = free_rule_text();
        if (name == "z2") {
          text.insert(text.end(), {{"ba", "ab"}, {"bA", "Ab"}, {"Ba", "aB"}, {"BA", "AB"}});
        } else if (name == "klein") {
          text.insert(text.end(), {{"ba", "Ab"}, {"bA", "ab"}, {"Ba", "AB"}, {"BA", "aB"}});
        }
        e.rules = StringRewritingSystem(e.alphabet, parse_rules(e.alphabet, text));
        if (name == "free2") {
          e.oracle      = free_oracle(e.alphabet);
          e.async       = free2_async_structure();
          e.description = "free group on a, b";
        } else if (name == "z2") {
          e.oracle      = std::make_shared<PairOracle>(false);
          e.async       = z2_async_structure();
          e.description = "free abelian group Z^2 = <a, b | ab = ba>";
        } else {
          e.oracle      = std::make_shared<PairOracle>(true);
          e.description = "Klein bottle group <a, b | bab^-1 = a^-1>";
        }
      } else if (name == "s3") {
        e.alphabet = Alphabet({"a", "b"}, {{"a", "a"}, {"b", "b"}});
        e.rules    = StringRewritingSystem(
            e.alphabet, parse_rules(e.alphabet, {{"aa", "1"}, {"bb", "1"}, {"bab", "aba"}}));
        e.oracle      = std::make_shared<S3Oracle>();
        e.description = "symmetric group on 3 points, a = (0 1), b = (1 2)";
      } else {
        fail(ErrorKind::usage, "unknown catalog entry: " + name);
      }
      return e;
    }

    std::optional<CatalogEntry> load_user(std::string const& name) {
      char const* dir = std::getenv("AUTOSTACK_CATALOG_DIR");
      if (dir == nullptr) {
        return std::nullopt;
      }
      std::filesystem::path path = std::filesystem::path(dir) / (name + ".rules");
      std::ifstream         in(path);
      if (!in) {
        return std::nullopt;
      }
      std::stringstream buffer;
      buffer << in.rdbuf();
      CatalogEntry e;
      e.name        = name;
      e.rules       = parse_rule_file(buffer.str());
      e.alphabet    = e.rules.alphabet();
      e.oracle      = rewriting_oracle(e.rules);
      e.description = "user entry from " + path.string();
      return e;
    }

  }  // namespace

  std::shared_ptr<GroupOracle const> free_oracle(Alphabet alphabet) {
    return std::make_shared<FreeOracle>(std::move(alphabet));
  }

  std::shared_ptr<GroupOracle const> rewriting_oracle(StringRewritingSystem S) {
    return std::make_shared<RewritingOracle>(std::move(S));
  }

  std::vector<std::string> builtin_entries() {
    return {"free2", "klein", "s3", "z2"};
  }

  void verify_entry(CatalogEntry const& entry, std::size_t max_len) {
    if (!entry.alphabet.inverse_closed()) {
      fail(ErrorKind::validation, entry.name + ": alphabet is not inverse-closed");
    }
    auto report = check_local_confluence(entry.rules);
    if (!report.ok()) {
      fail(ErrorKind::validation, entry.name + ": " + report.problems.front());
    }
    // Normal forms and oracle values must be in bijection.
    std::map<Word, GroupOracle::Element> value_of;
    std::map<GroupOracle::Element, Word> form_of;
    std::vector<Word>                    layer{Word{}};
    for (std::size_t len = 0; len <= max_len; ++len) {
      std::vector<Word> next;
      for (auto const& w : layer) {
        Word nf    = srs_normal_form(entry.rules, w, 100000);
        auto value = entry.oracle->eval(w);
        auto v = value_of.emplace(nf, value).first;
        auto f = form_of.emplace(value, nf).first;
        if (v->second != value || f->second != nf) {
          fail(ErrorKind::validation, entry.name + ": oracle and rewriting disagree on "
                                          + entry.alphabet.format(w));
        }
        if (len < max_len) {
          for (Letter x = 0; x < entry.alphabet.size(); ++x) {
            next.push_back(concat(w, x));
          }
        }
      }
      layer = std::move(next);
    }
    if (entry.async) {
      validate_async_structure(*entry.async, max_len, entry.oracle.get());
    }
  }

  CatalogEntry load_entry(std::string const& name) {
    auto names = builtin_entries();
    auto entry = std::find(names.begin(), names.end(), name) != names.end()
                     ? std::optional<CatalogEntry>(make_builtin(name))
                     : load_user(name);
    if (!entry) {
      fail(ErrorKind::usage, "unknown catalog entry: " + name);
    }
    verify_entry(*entry);
    return *entry;
  }

}  // namespace autostack

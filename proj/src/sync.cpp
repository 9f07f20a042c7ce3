#include "autostack/sync.hpp"

#include <algorithm>

#include "autostack/error.hpp"

namespace autostack {

  PaddedAlphabet::PaddedAlphabet(std::size_t base_size, std::size_t arity)
      : _base(base_size), _arity(arity) {
    if (arity == 0) {
      fail(ErrorKind::usage, "padded alphabet needs arity >= 1");
    }
    std::size_t total = 1;
    for (std::size_t i = 0; i < arity; ++i) {
      total *= base_size + 1;
      if (total > kNoInverse) {
        fail(ErrorKind::usage, "padded alphabet too large");
      }
    }
    _size = total - 1;
  }

  Symbol PaddedAlphabet::encode(std::vector<Letter> const& tuple) const {
    if (tuple.size() != _arity) {
      fail(ErrorKind::usage, "tuple arity mismatch");
    }
    std::size_t code = 0;
    for (Letter x : tuple) {
      if (x > _base) {
        fail(ErrorKind::usage, "tuple coordinate out of range");
      }
      code = code * (_base + 1) + x;
    }
    if (code >= _size) {
      fail(ErrorKind::usage, "the all-pad tuple is not a padded symbol");
    }
    return static_cast<Symbol>(code);
  }

  std::vector<Letter> PaddedAlphabet::decode(Symbol x) const {
    if (x >= _size) {
      fail(ErrorKind::validation, "padded symbol out of range");
    }
    std::vector<Letter> tuple(_arity);
    std::size_t         code = x;
    for (std::size_t i = _arity; i-- > 0;) {
      tuple[i] = static_cast<Letter>(code % (_base + 1));
      code /= _base + 1;
    }
    return tuple;
  }

  Letter PaddedAlphabet::coordinate(Symbol x, std::size_t i) const {
    std::size_t code = x;
    for (std::size_t j = _arity - 1; j > i; --j) {
      code /= _base + 1;
    }
    return static_cast<Letter>(code % (_base + 1));
  }

  Word pad_tuple(PaddedAlphabet const& padded, std::vector<Word> const& words) {
    if (words.size() != padded.arity()) {
      fail(ErrorKind::usage, "tuple arity mismatch");
    }
    std::size_t len = 0;
    for (auto const& w : words) {
      len = std::max(len, w.size());
    }
    Word                result;
    std::vector<Letter> tuple(words.size());
    for (std::size_t j = 0; j < len; ++j) {
      for (std::size_t i = 0; i < words.size(); ++i) {
        tuple[i] = j < words[i].size() ? words[i][j] : padded.pad();
      }
      result.push_back(padded.encode(tuple));
    }
    return result;
  }

  std::vector<Word> unpad(PaddedAlphabet const& padded, Word const& w) {
    std::vector<Word> result(padded.arity());
    std::vector<bool> ended(padded.arity(), false);
    for (std::size_t j = 0; j < w.size(); ++j) {
      auto tuple = padded.decode(w[j]);
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (tuple[i] == padded.pad()) {
          ended[i] = true;
        } else if (ended[i]) {
          fail(ErrorKind::validation,
               "malformed padded word: coordinate " + std::to_string(i)
                   + " resumes after $ at position " + std::to_string(j));
        } else {
          result[i].push_back(tuple[i]);
        }
      }
    }
    return result;
  }

  Dfa well_formed(PaddedAlphabet const& padded) {
    // State = set of coordinates already padded; the last state is dead.
    std::size_t const masks = std::size_t(1) << padded.arity();
    Dfa               result(padded.size(), masks + 1);
    auto const        dead = static_cast<State>(masks);
    for (State mask = 0; mask < masks; ++mask) {
      result.set_accepting(mask);
      for (Symbol x = 0; x < padded.size(); ++x) {
        State next = mask;
        for (std::size_t i = 0; i < padded.arity(); ++i) {
          bool is_pad = padded.coordinate(x, i) == padded.pad();
          if (is_pad) {
            next |= State(1) << i;
          } else if (mask & (State(1) << i)) {
            next = dead;
            break;
          }
        }
        result.set_next(mask, x, next);
      }
    }
    for (Symbol x = 0; x < padded.size(); ++x) {
      result.set_next(dead, x, dead);
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // SyncRelation
  ////////////////////////////////////////////////////////////////////////

  SyncRelation::SyncRelation(PaddedAlphabet const& padded, Dfa const& dfa)
      : _padded(padded) {
    if (dfa.alphabet_size() != padded.size()) {
      fail(ErrorKind::usage, "DFA is not over the padded alphabet");
    }
    _dfa = intersection(dfa, well_formed(padded));
  }

  SyncRelation SyncRelation::empty(PaddedAlphabet const& padded) {
    return SyncRelation(padded, Dfa::empty_language(padded.size()));
  }

  SyncRelation SyncRelation::finite(PaddedAlphabet const&          padded,
                                    std::vector<std::vector<Word>> tuples) {
    std::vector<Word> words;
    words.reserve(tuples.size());
    for (auto const& t : tuples) {
      words.push_back(pad_tuple(padded, t));
    }
    return SyncRelation(padded, Dfa::finite_language(padded.size(), words));
  }

  bool SyncRelation::accepts(std::vector<Word> const& tuple) const {
    for (auto const& w : tuple) {
      for (Letter x : w) {
        if (x >= _padded.base_size()) {
          return false;
        }
      }
    }
    return _dfa.accepts(pad_tuple(_padded, tuple));
  }

  namespace {
    void check_same(SyncRelation const& R1, SyncRelation const& R2) {
      if (!(R1.padded() == R2.padded())) {
        fail(ErrorKind::usage, "padded alphabet mismatch");
      }
    }
  }  // namespace

  SyncRelation union_of(SyncRelation const& R1, SyncRelation const& R2) {
    check_same(R1, R2);
    return SyncRelation(R1.padded(), union_of(R1.dfa(), R2.dfa()));
  }

  SyncRelation intersection(SyncRelation const& R1, SyncRelation const& R2) {
    check_same(R1, R2);
    return SyncRelation(R1.padded(), intersection(R1.dfa(), R2.dfa()));
  }

  SyncRelation difference(SyncRelation const& R1, SyncRelation const& R2) {
    check_same(R1, R2);
    return SyncRelation(R1.padded(), difference(R1.dfa(), R2.dfa()));
  }

  SyncRelation diagonal(Dfa const& L, std::size_t arity) {
    PaddedAlphabet      padded(L.alphabet_size(), arity);
    std::vector<Letter> tuple(arity);
    // Each a-transition becomes an (a, ..., a)-transition; every other padded
    // symbol goes to a fresh dead state.
    Dfa relabeled(padded.size(), L.num_states() + 1);
    auto const dead = static_cast<State>(L.num_states());
    relabeled.set_start(L.start());
    for (Symbol x = 0; x < padded.size(); ++x) {
      relabeled.set_next(dead, x, dead);
    }
    for (State s = 0; s < L.num_states(); ++s) {
      relabeled.set_accepting(s, L.accepting(s));
      for (Symbol x = 0; x < padded.size(); ++x) {
        relabeled.set_next(s, x, dead);
      }
      for (Symbol a = 0; a < L.alphabet_size(); ++a) {
        std::fill(tuple.begin(), tuple.end(), a);
        relabeled.set_next(s, padded.encode(tuple), L.next(s, a));
      }
    }
    return SyncRelation(padded, relabeled);
  }

  SyncRelation diagonal_then(Dfa const& L, std::vector<Word> const& suffix) {
    SyncRelation   diag = diagonal(L, suffix.size());
    PaddedAlphabet padded = diag.padded();
    Dfa            tail =
        Dfa::single_word(padded.size(), pad_tuple(padded, suffix));
    return SyncRelation(padded, concatenation(diag.dfa(), tail));
  }

  SyncRelation cartesian_product(std::vector<Dfa> const& languages) {
    if (languages.empty()) {
      fail(ErrorKind::usage, "cartesian product of no languages");
    }
    std::size_t const m = languages.front().alphabet_size();
    PaddedAlphabet    padded(m, languages.size());
    Dfa               result = Dfa::universal(padded.size());
    for (std::size_t i = 0; i < languages.size(); ++i) {
      if (languages[i].alphabet_size() != m) {
        fail(ErrorKind::usage, "alphabet mismatch in cartesian product");
      }
      // L_i $* over the alphabet A u {$}: pads map to the extra symbol m.
      Dfa lifted(m + 1, languages[i].num_states() + 2);
      auto const pad_loop = static_cast<State>(languages[i].num_states());
      auto const dead     = pad_loop + 1;
      lifted.set_start(languages[i].start());
      for (State s = 0; s < languages[i].num_states(); ++s) {
        lifted.set_accepting(s, languages[i].accepting(s));
        for (Symbol a = 0; a < m; ++a) {
          lifted.set_next(s, a, languages[i].next(s, a));
        }
        lifted.set_next(s, static_cast<Symbol>(m),
                        languages[i].accepting(s) ? pad_loop : dead);
      }
      lifted.set_accepting(pad_loop);
      for (Symbol a = 0; a <= m; ++a) {
        lifted.set_next(pad_loop, a, a == m ? pad_loop : dead);
        lifted.set_next(dead, a, dead);
      }
      std::vector<Word> h(padded.size());
      for (Symbol x = 0; x < padded.size(); ++x) {
        h[x] = Word{padded.coordinate(x, i)};
      }
      result = intersection(result, hom_preimage(lifted, h));
    }
    return SyncRelation(padded, result);
  }

  Dfa project(SyncRelation const& R, std::size_t i) {
    PaddedAlphabet const& padded = R.padded();
    if (i >= padded.arity()) {
      fail(ErrorKind::usage, "projection coordinate out of range");
    }
    std::vector<Word> h(padded.size());
    for (Symbol x = 0; x < padded.size(); ++x) {
      Letter c = padded.coordinate(x, i);
      if (c != padded.pad()) {
        h[x] = Word{c};
      }
    }
    return hom_image(R.dfa(), h, padded.base_size());
  }

  std::vector<std::vector<Word>> enumerate_relation(SyncRelation const& R,
                                                    std::size_t max_len) {
    std::vector<std::vector<Word>> result;
    for (auto const& w : enumerate_language(R.dfa(), max_len)) {
      result.push_back(unpad(R.padded(), w));
    }
    return result;
  }

}  // namespace autostack

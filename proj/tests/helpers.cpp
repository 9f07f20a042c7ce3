#include "helpers.hpp"

#include <algorithm>

namespace autostack::testing {

  std::vector<Word> words_of_length(std::size_t alphabet_size, std::size_t len) {
    std::vector<Word> layer{Word{}};
    for (std::size_t i = 0; i < len; ++i) {
      std::vector<Word> next;
      for (auto const& w : layer) {
        for (std::size_t x = 0; x < alphabet_size; ++x) {
          next.push_back(concat(w, static_cast<Letter>(x)));
        }
      }
      layer = std::move(next);
    }
    return layer;
  }

  std::vector<Word> all_words(std::size_t alphabet_size, std::size_t max_len) {
    std::vector<Word> result;
    for (std::size_t n = 0; n <= max_len; ++n) {
      auto layer = words_of_length(alphabet_size, n);
      result.insert(result.end(), layer.begin(), layer.end());
    }
    return result;
  }

  Word random_word(std::mt19937& rng, std::size_t alphabet_size, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<std::size_t> letter(0, alphabet_size - 1);
    Word                                       w(len(rng));
    for (auto& x : w) {
      x = static_cast<Letter>(letter(rng));
    }
    return w;
  }

  Word random_identity_word(std::mt19937&            rng,
                            Alphabet const&          alphabet,
                            std::vector<Word> const& relators,
                            std::size_t              max_len) {
    // Insert either x x^-1 or a cyclic conjugate of a relator (or its
    // inverse) at a random position until the next insertion would overflow.
    Word                                       w;
    std::uniform_int_distribution<std::size_t> coin(0, 2);
    for (int attempt = 0; attempt < 64; ++attempt) {
      Word piece;
      if (relators.empty() || coin(rng) == 0) {
        std::uniform_int_distribution<std::size_t> letter(0, alphabet.size() - 1);
        auto x = static_cast<Letter>(letter(rng));
        piece  = {x, alphabet.inverse(x)};
      } else {
        std::uniform_int_distribution<std::size_t> pick(0, relators.size() - 1);
        piece = relators[pick(rng)];
        if (coin(rng) == 0) {
          piece = formal_inverse(alphabet, piece);
        }
        if (!piece.empty()) {
          std::uniform_int_distribution<std::size_t> rot(0, piece.size() - 1);
          std::rotate(piece.begin(), piece.begin() + rot(rng), piece.end());
        }
      }
      if (w.size() + piece.size() > max_len) {
        continue;
      }
      std::uniform_int_distribution<std::size_t> at(0, w.size());
      w.insert(w.begin() + at(rng), piece.begin(), piece.end());
    }
    return w;
  }

  std::string show(Word const& w) {
    std::string out = "[";
    for (std::size_t i = 0; i < w.size(); ++i) {
      out += (i ? " " : "") + std::to_string(w[i]);
    }
    return out + "]";
  }

}  // namespace autostack::testing

// Shared test utilities: exhaustive and random word generators.

#ifndef AUTOSTACK_TESTS_HELPERS_HPP_
#define AUTOSTACK_TESTS_HELPERS_HPP_

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "autostack/core.hpp"

namespace autostack::testing {

  //! Every word over `alphabet_size` letters of length <= max_len, in
  //! length-then-lex order.
  std::vector<Word> all_words(std::size_t alphabet_size, std::size_t max_len);

  //! Words of length exactly `len`.
  std::vector<Word> words_of_length(std::size_t alphabet_size, std::size_t len);

  Word random_word(std::mt19937& rng, std::size_t alphabet_size, std::size_t max_len);

  //! A random word of length <= max_len that is trivial in the group, built
  //! by inserting x x^-1 pairs and rotated relators at random positions.
  Word random_identity_word(std::mt19937&            rng,
                            Alphabet const&          alphabet,
                            std::vector<Word> const& relators,
                            std::size_t              max_len);

  std::string show(Word const& w);

}  // namespace autostack::testing

#endif  // AUTOSTACK_TESTS_HELPERS_HPP_

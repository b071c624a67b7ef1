#pragma once

#include <random>
#include <string>

#include <doctest.h>

#include "frep/group_algebra.hpp"
#include "frep/random.hpp"
#include "frep/representation.hpp"
#include "frep/word.hpp"

namespace frep::test {

inline Word random_word(std::mt19937_64& rng, int k, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(0, 2 * k - 1);
  const int n = len(rng);
  std::vector<Letter> out;
  while (static_cast<int>(out.size()) < n) {
    const auto c = static_cast<Letter>(letter(rng));
    if (!out.empty() && out.back() == inverse_letter(c)) continue;
    out.push_back(c);
  }
  return Word::from_reduced(std::move(out));
}

inline GroupAlgebraElement random_element(std::mt19937_64& rng, int k, int max_len, int terms) {
  std::normal_distribution<double> g;
  GroupAlgebraElement f(k);
  for (int i = 0; i < terms; ++i)
    f += GroupAlgebraElement::delta(k, random_word(rng, k, max_len), Complex(g(rng), g(rng)));
  return f;
}

inline Vec random_vector(std::mt19937_64& rng, int d) { return ginibre(d, 1, rng).col(0); }

inline GroupAlgebraElement parse_element(int k, std::initializer_list<std::pair<const char*, Complex>> terms) {
  GroupAlgebraElement f(k);
  for (const auto& [w, c] : terms) f += GroupAlgebraElement::delta(k, w, c);
  return f;
}

}  // namespace frep::test

#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace frep {

/// Letter code: generator i (0-based) is 2*i, its inverse is 2*i+1.
/// The code order is the generator order a < A < b < B < ...
using Letter = std::uint8_t;

constexpr Letter inverse_letter(Letter c) { return c ^ Letter{1}; }
constexpr int generator_of(Letter c) { return c >> 1; }
constexpr bool is_inverse_letter(Letter c) { return (c & 1) != 0; }

constexpr int kMaxGenerators = 26;

/// A reduced word in the free group. Words carry no generator count; the
/// owning algebra or representation checks letters against its own k.
class Word {
public:
  Word() = default;

  /// Takes letters that are already reduced. Throws InputError otherwise.
  static Word from_reduced(std::vector<Letter> letters);

  /// Parses the external encoding (a..z generators, A..Z inverses). The string
  /// must already be reduced.
  static Word parse(std::string_view text, int k);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  bool is_identity() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Letter> letters() const { return letters_; }

  /// Largest generator index used plus one (0 for the identity).
  int min_generators() const;

  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  /// Shortlex: shorter words first, then lexicographic in letter code.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

private:
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  std::vector<Letter> letters_;

  friend Word reduce_codes(std::span<const Letter>, int);
};

char letter_char(Letter c);
Letter letter_from_char(char ch, int k);

/// Free reduction of a raw sequence of signed generator indices (+i for
/// generator i, -i for its inverse, i in 1..k).
Word reduce(std::span<const int> signed_letters, int k);

/// Free reduction of a sequence of letter codes.
Word reduce_codes(std::span<const Letter> codes, int k);

/// Free reduction of a raw string; whitespace is ignored.
Word reduce_string(std::string_view raw, int k);

Word multiply_words(const Word& u, const Word& v);
Word invert_word(const Word& w);

/// All reduced words of length <= max_len in shortlex order.
std::vector<Word> enumerate_words(int k, int max_len);

/// Number of reduced words of length exactly n: 2k(2k-1)^(n-1), and 1 for n = 0.
std::uint64_t sphere_size(int k, int n);
std::uint64_t ball_size(int k, int radius);

}  // namespace frep

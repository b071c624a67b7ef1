#include "frep/word.hpp"

#include <algorithm>
#include <cctype>

#include "frep/types.hpp"

namespace frep {

namespace {

void check_k(int k) {
  if (k < 2 || k > kMaxGenerators)
    throw InputError("generator count k must be in 2.." + std::to_string(kMaxGenerators) +
                     ", got " + std::to_string(k));
}

}  // namespace

char letter_char(Letter c) {
  const char base = is_inverse_letter(c) ? 'A' : 'a';
  return static_cast<char>(base + generator_of(c));
}

Letter letter_from_char(char ch, int k) {
  int gen = -1;
  bool inv = false;
  if (ch >= 'a' && ch <= 'z') {
    gen = ch - 'a';
  } else if (ch >= 'A' && ch <= 'Z') {
    gen = ch - 'A';
    inv = true;
  }
  if (gen < 0 || gen >= k)
    throw InputError(std::string("letter '") + ch + "' is not a generator for k = " +
                     std::to_string(k));
  return static_cast<Letter>(2 * gen + (inv ? 1 : 0));
}

Word Word::from_reduced(std::vector<Letter> letters) {
  for (std::size_t i = 1; i < letters.size(); ++i)
    if (letters[i] == inverse_letter(letters[i - 1]))
      throw InputError("word is not reduced at position " + std::to_string(i));
  return Word(std::move(letters));
}

Word Word::parse(std::string_view text, int k) {
  check_k(k);
  std::vector<Letter> codes;
  codes.reserve(text.size());
  for (char ch : text) codes.push_back(letter_from_char(ch, k));
  for (std::size_t i = 1; i < codes.size(); ++i)
    if (codes[i] == inverse_letter(codes[i - 1]))
      throw InputError("word \"" + std::string(text) + "\" is not reduced");
  return Word(std::move(codes));
}

int Word::min_generators() const {
  int m = 0;
  for (Letter c : letters_) m = std::max(m, generator_of(c) + 1);
  return m;
}

std::string Word::to_string() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter c : letters_) s.push_back(letter_char(c));
  return s;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                b.letters_.begin(), b.letters_.end());
}

Word reduce_codes(std::span<const Letter> codes, int k) {
  check_k(k);
  std::vector<Letter> stack;
  stack.reserve(codes.size());
  for (Letter c : codes) {
    if (generator_of(c) >= k)
      throw InputError("letter code " + std::to_string(c) + " out of range for k = " +
                       std::to_string(k));
    if (!stack.empty() && stack.back() == inverse_letter(c))
      stack.pop_back();
    else
      stack.push_back(c);
  }
  return Word(std::move(stack));
}

Word reduce(std::span<const int> signed_letters, int k) {
  check_k(k);
  std::vector<Letter> codes;
  codes.reserve(signed_letters.size());
  for (int s : signed_letters) {
    const int gen = s > 0 ? s : -s;
    if (gen < 1 || gen > k)
      throw InputError("generator index " + std::to_string(s) + " out of range 1.." +
                       std::to_string(k));
    codes.push_back(static_cast<Letter>(2 * (gen - 1) + (s < 0 ? 1 : 0)));
  }
  return reduce_codes(codes, k);
}

Word reduce_string(std::string_view raw, int k) {
  check_k(k);
  std::vector<Letter> codes;
  for (char ch : raw) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    codes.push_back(letter_from_char(ch, k));
  }
  return reduce_codes(codes, k);
}

Word multiply_words(const Word& u, const Word& v) {
  const auto a = u.letters();
  const auto b = v.letters();
  std::size_t cancel = 0;
  while (cancel < a.size() && cancel < b.size() &&
         a[a.size() - 1 - cancel] == inverse_letter(b[cancel]))
    ++cancel;
  std::vector<Letter> out;
  out.reserve(a.size() + b.size() - 2 * cancel);
  out.insert(out.end(), a.begin(), a.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(cancel), b.end());
  return Word::from_reduced(std::move(out));
}

Word invert_word(const Word& w) {
  std::vector<Letter> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = inverse_letter(w[w.size() - 1 - i]);
  return Word::from_reduced(std::move(out));
}

std::vector<Word> enumerate_words(int k, int max_len) {
  check_k(k);
  if (max_len < 0) throw InputError("max_len must be nonnegative");
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(ball_size(k, max_len)));
  out.emplace_back();
  std::size_t level_begin = 0;
  for (int n = 1; n <= max_len; ++n) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      const std::vector<Letter> prefix(out[i].letters().begin(), out[i].letters().end());
      for (Letter c = 0; c < 2 * k; ++c) {
        if (!prefix.empty() && prefix.back() == inverse_letter(c)) continue;
        std::vector<Letter> letters = prefix;
        letters.push_back(c);
        out.push_back(Word::from_reduced(std::move(letters)));
      }
    }
    level_begin = level_end;
  }
  return out;
}

std::uint64_t sphere_size(int k, int n) {
  if (n == 0) return 1;
  std::uint64_t s = 2 * static_cast<std::uint64_t>(k);
  for (int i = 1; i < n; ++i) s *= static_cast<std::uint64_t>(2 * k - 1);
  return s;
}

std::uint64_t ball_size(int k, int radius) {
  std::uint64_t total = 0;
  for (int n = 0; n <= radius; ++n) total += sphere_size(k, n);
  return total;
}

}  // namespace frep

#pragma once

#include <map>

#include "frep/types.hpp"
#include "frep/word.hpp"

namespace frep {

/// Finitely supported complex function on the free group on k generators,
/// i.e. an element of the group algebra C[G]. Stored coefficients are never
/// exactly zero.
class GroupAlgebraElement {
public:
  using Terms = std::map<Word, Complex>;

  explicit GroupAlgebraElement(int k);
  GroupAlgebraElement(int k, Terms terms);

  /// c * delta_w
  static GroupAlgebraElement delta(int k, const Word& w, Complex c = 1.0);
  static GroupAlgebraElement delta(int k, std::string_view w, Complex c = 1.0);

  int k() const { return k_; }
  const Terms& terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Complex coefficient(const Word& w) const;

  /// Drops terms with |c| <= threshold. Exact zeros are always dropped.
  GroupAlgebraElement pruned(double threshold) const;

  GroupAlgebraElement& operator+=(const GroupAlgebraElement& o);
  GroupAlgebraElement& operator-=(const GroupAlgebraElement& o);
  GroupAlgebraElement& operator*=(Complex c);

  friend GroupAlgebraElement operator+(GroupAlgebraElement a, const GroupAlgebraElement& b) {
    return a += b;
  }
  friend GroupAlgebraElement operator-(GroupAlgebraElement a, const GroupAlgebraElement& b) {
    return a -= b;
  }
  friend GroupAlgebraElement operator*(Complex c, GroupAlgebraElement a) { return a *= c; }

  friend bool operator==(const GroupAlgebraElement&, const GroupAlgebraElement&) = default;

private:
  void check_word(const Word& w) const;
  int k_;
  Terms terms_;
};

struct AlgebraNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  int radius = 0;
};

/// (f * g)(w) = sum_{uv = w} f(u) g(v)
GroupAlgebraElement convolve(const GroupAlgebraElement& f, const GroupAlgebraElement& g);

/// f^*(w) = conj(f(w^-1))
GroupAlgebraElement involution(const GroupAlgebraElement& f);

AlgebraNorms norms(const GroupAlgebraElement& f);

/// Generator-symmetric element sum_{s} (delta_s + delta_{s^-1}).
GroupAlgebraElement symmetric_generator_sum(int k);

}  // namespace frep

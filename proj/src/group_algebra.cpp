#include "frep/group_algebra.hpp"

#include <cmath>

namespace frep {

GroupAlgebraElement::GroupAlgebraElement(int k) : k_(k) {
  if (k < 2 || k > kMaxGenerators) throw InputError("generator count k must be >= 2");
}

GroupAlgebraElement::GroupAlgebraElement(int k, Terms terms) : GroupAlgebraElement(k) {
  for (auto& [w, c] : terms) {
    check_word(w);
    if (c != Complex{0.0, 0.0}) terms_.emplace(w, c);
  }
}

GroupAlgebraElement GroupAlgebraElement::delta(int k, const Word& w, Complex c) {
  return GroupAlgebraElement(k, Terms{{w, c}});
}

GroupAlgebraElement GroupAlgebraElement::delta(int k, std::string_view w, Complex c) {
  return delta(k, Word::parse(w, k), c);
}

void GroupAlgebraElement::check_word(const Word& w) const {
  if (w.min_generators() > k_)
    throw InputError("word \"" + w.to_string() + "\" uses generators beyond k = " +
                     std::to_string(k_));
}

Complex GroupAlgebraElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Complex{} : it->second;
}

GroupAlgebraElement GroupAlgebraElement::pruned(double threshold) const {
  GroupAlgebraElement out(k_);
  for (const auto& [w, c] : terms_)
    if (std::abs(c) > threshold) out.terms_.emplace(w, c);
  return out;
}

GroupAlgebraElement& GroupAlgebraElement::operator+=(const GroupAlgebraElement& o) {
  if (o.k_ != k_) throw InputError("generator count mismatch in group algebra sum");
  for (const auto& [w, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Complex{0.0, 0.0}) terms_.erase(it);
    }
  }
  return *this;
}

GroupAlgebraElement& GroupAlgebraElement::operator-=(const GroupAlgebraElement& o) {
  return *this += Complex{-1.0, 0.0} * o;
}

GroupAlgebraElement& GroupAlgebraElement::operator*=(Complex c) {
  if (c == Complex{0.0, 0.0}) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    it = it->second == Complex{0.0, 0.0} ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

GroupAlgebraElement convolve(const GroupAlgebraElement& f, const GroupAlgebraElement& g) {
  if (f.k() != g.k()) throw InputError("generator count mismatch in convolution");
  GroupAlgebraElement::Terms acc;
  for (const auto& [u, a] : f.terms())
    for (const auto& [v, b] : g.terms()) acc[multiply_words(u, v)] += a * b;
  return GroupAlgebraElement(f.k(), std::move(acc));
}

GroupAlgebraElement involution(const GroupAlgebraElement& f) {
  GroupAlgebraElement::Terms out;
  for (const auto& [w, c] : f.terms()) out.emplace(invert_word(w), std::conj(c));
  return GroupAlgebraElement(f.k(), std::move(out));
}

AlgebraNorms norms(const GroupAlgebraElement& f) {
  AlgebraNorms n;
  double sq = 0.0;
  for (const auto& [w, c] : f.terms()) {
    const double a = std::abs(c);
    n.l1 += a;
    sq += a * a;
    n.radius = std::max(n.radius, static_cast<int>(w.size()));
  }
  n.l2 = std::sqrt(sq);
  return n;
}

GroupAlgebraElement symmetric_generator_sum(int k) {
  GroupAlgebraElement::Terms t;
  for (Letter c = 0; c < 2 * k; ++c) t.emplace(Word::from_reduced({c}), 1.0);
  return GroupAlgebraElement(k, std::move(t));
}

}  // namespace frep

#include "support.hpp"

#include <cmath>

using namespace frep;
using frep::test::parse_element;
using frep::test::random_element;

namespace {

// Expand every pair of terms and reduce the concatenated string.
GroupAlgebraElement convolve_oracle(const GroupAlgebraElement& f, const GroupAlgebraElement& g) {
  GroupAlgebraElement out(f.k());
  for (const auto& [u, a] : f.terms())
    for (const auto& [v, b] : g.terms())
      out += GroupAlgebraElement::delta(f.k(), reduce_string(u.to_string() + v.to_string(), f.k()), a * b);
  return out;
}

double l1_distance(const GroupAlgebraElement& f, const GroupAlgebraElement& g) { return norms(f - g).l1; }

}  // namespace

TEST_CASE("convolution examples") {
  const int k = 2;
  CHECK(convolve(GroupAlgebraElement::delta(k, "a"), GroupAlgebraElement::delta(k, "A")) ==
        GroupAlgebraElement::delta(k, ""));
  const auto s = parse_element(k, {{"a", 1.0}, {"b", 1.0}});
  CHECK(convolve(s, s) == parse_element(k, {{"aa", 1.0}, {"ab", 1.0}, {"ba", 1.0}, {"bb", 1.0}}));
  std::mt19937_64 rng(3);
  const auto f = random_element(rng, k, 3, 6);
  CHECK(convolve(f, GroupAlgebraElement::delta(k, "")) == f);
  CHECK(convolve(GroupAlgebraElement::delta(k, ""), f) == f);
}

TEST_CASE("zero coefficients are never stored") {
  const int k = 2;
  auto f = GroupAlgebraElement::delta(k, "a") - GroupAlgebraElement::delta(k, "a");
  CHECK(f.is_zero());
  const auto g = parse_element(k, {{"a", 1.0}, {"A", 1.0}});
  const auto h = parse_element(k, {{"a", 1.0}, {"A", -1.0}});
  // (a + A)(a - A) = aa - AA
  const auto p = convolve(g, h);
  CHECK(p == parse_element(k, {{"aa", 1.0}, {"AA", -1.0}}));
  CHECK(p.support_size() == 2);
  CHECK(GroupAlgebraElement::delta(k, "a", 0.0).is_zero());
  const auto noisy = parse_element(k, {{"a", 1.0}, {"b", 1e-15}});
  CHECK(noisy.pruned(1e-12).support_size() == 1);
  CHECK(noisy.pruned(0.0).support_size() == 2);
}

TEST_CASE("involution") {
  const int k = 2;
  const Complex i(0.0, 1.0);
  CHECK(involution(GroupAlgebraElement::delta(k, "a", 2.0 * i)) == GroupAlgebraElement::delta(k, "A", -2.0 * i));
  CHECK(involution(GroupAlgebraElement::delta(k, "")) == GroupAlgebraElement::delta(k, ""));
  const auto lhs = involution(convolve(parse_element(k, {{"a", 1.0}, {"b", i}}), GroupAlgebraElement::delta(k, "b")));
  const auto rhs = convolve(GroupAlgebraElement::delta(k, "B"), parse_element(k, {{"A", 1.0}, {"B", -i}}));
  CHECK(l1_distance(lhs, rhs) == doctest::Approx(0.0));
  // termwise: (a b + i b b)^* = B A - i B B
  CHECK(lhs.coefficient(Word::parse("BA", k)) == Complex(1.0, 0.0));
  CHECK(lhs.coefficient(Word::parse("BB", k)) == -i);

  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const auto f = random_element(rng, 3, 3, 5), g = random_element(rng, 3, 3, 5);
    CHECK(involution(involution(f)) == f);
    CHECK(l1_distance(involution(convolve(f, g)), convolve(involution(g), involution(f))) <= 1e-12 * norms(f).l1 * norms(g).l1);
    const auto a = norms(f), b = norms(involution(f));
    CHECK(a.l1 == doctest::Approx(b.l1).epsilon(1e-15));
    CHECK(a.l2 == doctest::Approx(b.l2).epsilon(1e-15));
    CHECK(a.radius == b.radius);
  }
}

TEST_CASE("norms") {
  const int k = 2;
  auto n = norms(parse_element(k, {{"a", 1.0}, {"b", 1.0}}));
  CHECK(n.l1 == doctest::Approx(2.0));
  CHECK(n.l2 == doctest::Approx(std::sqrt(2.0)));
  CHECK(n.radius == 1);
  n = norms(GroupAlgebraElement(k));
  CHECK(n.l1 == 0.0);
  CHECK(n.l2 == 0.0);
  CHECK(n.radius == 0);
  n = norms(parse_element(k, {{"", 3.0}, {"ab", -4.0}}));
  CHECK(n.l1 == doctest::Approx(7.0));
  CHECK(n.l2 == doctest::Approx(5.0));
  CHECK(n.radius == 2);
}

TEST_CASE("convolution matches the all-pairs oracle and is associative and submultiplicative") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const int k = 2 + t % 2;
    const auto f = random_element(rng, k, 3, 5), g = random_element(rng, k, 3, 5), h = random_element(rng, k, 3, 5);
    const auto fg = convolve(f, g);
    CHECK(l1_distance(fg, convolve_oracle(f, g)) <= 1e-12 * norms(f).l1 * norms(g).l1);
    CHECK(norms(fg).l1 <= norms(f).l1 * norms(g).l1 * (1 + 1e-12));
    const double scale = norms(f).l1 * norms(g).l1 * norms(h).l1;
    CHECK(l1_distance(convolve(fg, h), convolve(f, convolve(g, h))) <= 1e-10 * scale);
  }
}

TEST_CASE("mismatched generator counts are rejected") {
  CHECK_THROWS_AS(convolve(GroupAlgebraElement::delta(2, "a"), GroupAlgebraElement::delta(3, "c")), InputError);
  CHECK_THROWS_AS(GroupAlgebraElement::delta(2, "c"), InputError);
}

#include "support.hpp"

#include <Eigen/LU>

#include "frep/irreducibility.hpp"

using namespace frep;

namespace {

// Kernel dimension of X -> (X U_s - U_s X)_s, assembled column by column from matrix units.
int commutant_dim_oracle(const Representation& rep) {
  const int d = rep.dim();
  Mat map(static_cast<Eigen::Index>(rep.k()) * d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Mat e = Mat::Zero(d, d);
      e(i, j) = 1.0;
      for (int s = 0; s < rep.k(); ++s) {
        const Mat c = e * rep.generator(s) - rep.generator(s) * e;
        map.block(static_cast<Eigen::Index>(s) * d * d, i * d + j, d * d, 1) = c.reshaped();
      }
    }
  Eigen::FullPivLU<Mat> lu(map);
  lu.setThreshold(1e-9);
  return static_cast<int>(lu.dimensionOfKernel());
}

// Rank of the vectorized images of every word of length <= max_len.
int algebra_dim_oracle(const Representation& rep, int max_len) {
  const auto words = enumerate_words(rep.k(), max_len);
  const int d = rep.dim();
  Mat m(d * d, static_cast<Eigen::Index>(words.size()));
  for (std::size_t i = 0; i < words.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = evaluate_word(rep, words[i]).reshaped();
  Eigen::FullPivLU<Mat> lu(m);
  lu.setThreshold(1e-9);
  return static_cast<int>(lu.rank());
}

Representation random_mixed(Rng& rng, int k) {
  const std::uint64_t s = rng();
  switch (rng() % 6) {
    case 0: return random_haar_rep(k, 1 + static_cast<int>(rng() % 4), s);
    case 1: return direct_sum(random_haar_rep(k, 1, s), random_haar_rep(k, 1 + static_cast<int>(rng() % 3), s + 1));
    case 2: return tensor(random_haar_rep(k, 2, s), random_haar_rep(k, 2, s + 1));
    case 3: return direct_sum(random_haar_rep(k, 2, s), random_haar_rep(k, 2, s));
    case 4: return tensor(pauli_rep(k), random_haar_rep(k, 2, s));
    default: return trivial_rep(k, 1 + static_cast<int>(rng() % 4));
  }
}

}  // namespace

TEST_CASE("commutant examples") {
  const auto pb = commutant_basis(pauli_rep());
  REQUIRE(pb.size() == 1);
  CHECK((pb[0] * pb[0].adjoint() - 0.5 * Mat::Identity(2, 2)).norm() <= 1e-12);
  CHECK(commutant_basis(trivial_rep(2, 2)).size() == 4);
  CHECK(commutant_basis(tensor(pauli_rep(), pauli_rep())).size() == 4);
  CHECK(commutant_dim_oracle(tensor(pauli_rep(), pauli_rep())) == 4);
  CHECK(commutant_basis(direct_sum(pauli_rep(), pauli_rep())).size() == 4);

  const auto basis = commutant_basis(direct_sum(pauli_rep(), random_haar_rep(2, 3, 4)));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      CHECK(std::abs((basis[i].adjoint() * basis[j]).trace() - (i == j ? 1.0 : 0.0)) <= 1e-10);
}

TEST_CASE("irreducibility reports") {
  auto r = is_irreducible(pauli_rep());
  CHECK(r.is_irreducible);
  CHECK(r.commutant_dim == 1);
  CHECK(r.algebra_dim == 4);
  CHECK(r.tolerance_used == kDefaultRankTol);
  CHECK(r.smallest_retained_singular_value > 0.0);

  r = is_irreducible(direct_sum(pauli_rep(), pauli_rep()));
  CHECK_FALSE(r.is_irreducible);
  CHECK(r.commutant_dim == 4);

  r = is_irreducible(tensor(pauli_rep(), random_haar_rep(2, 3, 1)));
  CHECK(r.is_irreducible);
  CHECK(r.algebra_dim == 36);

  r = is_irreducible(trivial_rep(2, 1));
  CHECK(r.is_irreducible);
  CHECK(r.commutant_dim == 1);
  CHECK(r.algebra_dim == 1);

  // Pauli (+) inequivalent characters
  const auto chi = make_representation(2, {Mat::Identity(1, 1), -Mat::Identity(1, 1)});
  CHECK(is_irreducible(direct_sum(pauli_rep(), chi)).commutant_dim == 2);
  CHECK(is_irreducible(direct_sum(pauli_rep(), trivial_rep(2, 1))).commutant_dim == 2);
  CHECK(is_irreducible(direct_sum(chi, trivial_rep(2, 1))).commutant_dim == 2);
}

TEST_CASE("generated algebra dimension") {
  CHECK(generated_algebra_dim(pauli_rep(), 2) == 4);
  CHECK(generated_algebra_dim(pauli_rep(), 0) == 1);
  for (int n : {0, 1, 3, 5}) {
    CHECK(generated_algebra_dim(trivial_rep(2, 1), n) == 1);
    CHECK(generated_algebra_dim(trivial_rep(2, 2), n) == 1);
  }
  const auto r = random_haar_rep(2, 3, 12);
  int previous = 0;
  for (int n = 0; n <= 6; ++n) {
    const int dim = generated_algebra_dim(r, n);
    CHECK(dim >= previous);
    CHECK(dim == algebra_dim_oracle(r, n));
    previous = dim;
  }
  CHECK(previous == 9);
}

TEST_CASE("commutant test and Burnside dimension agree on 200 mixed representations") {
  Rng rng(99);
  int disagreements = 0;
  for (int t = 0; t < 200; ++t) {
    const auto rep = random_mixed(rng, 2 + t % 2);
    const int d = rep.dim();
    if (d > 4) continue;
    const auto report = is_irreducible(rep);
    const bool burnside = generated_algebra_dim(rep, 2 * d) == d * d;
    if (report.is_irreducible != burnside) ++disagreements;
    CHECK(report.commutant_dim >= 1);
    CHECK(report.commutant_dim == commutant_dim_oracle(rep));
    CHECK(report.is_irreducible == (report.commutant_dim == 1));
    if (report.is_irreducible) CHECK(report.algebra_dim == d * d);
    int len = 2 * d;
    while (ball_size(rep.k(), len) > 3000) --len;
    CHECK(generated_algebra_dim(rep, len) == algebra_dim_oracle(rep, len));
  }
  CHECK(disagreements == 0);
}

TEST_CASE("unitary conjugation leaves the commutant dimension unchanged") {
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    const auto rep = random_mixed(rng, 2);
    const Mat w = haar_unitary(rep.dim(), rng);
    std::vector<Mat> conj;
    for (const auto& g : rep.generators()) conj.push_back(w * g * w.adjoint());
    CAPTURE(rep.dim());
    CHECK(is_irreducible(make_representation(2, conj)).commutant_dim == is_irreducible(rep).commutant_dim);
  }
}

TEST_CASE("cyclic defect") {
  Vec e1 = Vec::Zero(2);
  e1(0) = 1.0;
  CHECK(cyclic_defect(pauli_rep(), e1, 1) == 0);
  for (int n : {0, 2, 6}) CHECK(cyclic_defect(trivial_rep(2, 2), e1, n) == 1);
  CHECK_THROWS_AS(cyclic_defect(pauli_rep(), Vec::Zero(2), 1), InputError);

  const auto rep = tensor(pauli_rep(), random_haar_rep(2, 3, 1));
  Rng rng(5);
  int cyclic = 0;
  for (int t = 0; t < 100; ++t) cyclic += cyclic_defect(rep, test::random_vector(rng, 6), 4) == 0;
  CHECK(cyclic >= 99);

  // irreducible reps: every probe is cyclic within budget 2d
  for (int d = 1; d <= 4; ++d) {
    const auto r = random_haar_rep(2, d, 40 + d);
    REQUIRE(is_irreducible(r).is_irreducible);
    for (int t = 0; t < 10; ++t) CHECK(cyclic_defect(r, test::random_vector(rng, d), 2 * d) == 0);
  }
}

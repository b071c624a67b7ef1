#include "support.hpp"

#include <Eigen/SVD>

#include "frep/baire_lab.hpp"
#include "frep/irreducibility.hpp"
#include "frep/probes.hpp"

using namespace frep;
using frep::test::random_vector;

namespace {

// (A (x) B) x computed as A X B^T on the d_a x d_b reshaping of x (row index a, column b).
Vec apply_tensor_element(const Representation& eta, const Representation& pi, const GroupAlgebraElement& f,
                         const Vec& x) {
  const int da = eta.dim(), db = pi.dim();
  Mat xm(da, db);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b) xm(a, b) = x(a * db + b);
  Mat acc = Mat::Zero(da, db);
  for (const auto& [w, c] : f.terms()) acc += c * evaluate_word(eta, w) * xm * evaluate_word(pi, w).transpose();
  Vec out(da * db);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b) out(a * db + b) = acc(a, b);
  return out;
}

double svd_norm(const Mat& m) { return Eigen::JacobiSVD<Mat>(m).singularValues()(0); }

ProbeSequence explicit_probes(std::vector<Vec> v) {
  ProbeSequence p;
  p.dim = static_cast<int>(v.front().size());
  p.vectors = std::move(v);
  return p;
}

Vec unit(int d, int i) {
  Vec v = Vec::Zero(d);
  v(i) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("dyadic deltas") {
  const auto g = dyadic_delta_grid(4);
  CHECK(g == std::vector<double>{0.5, 0.25, 0.125, 0.0625});
  CHECK(dyadic_delta_at_most(0.1) == 0.0625);
  CHECK(dyadic_delta_at_most(0.5) == 0.5);
  CHECK(dyadic_delta_at_most(3.0) == 0.5);
  CHECK_THROWS_AS(dyadic_delta_at_most(0.0), InputError);
}

TEST_CASE("membership_U") {
  const auto eta = pauli_rep();
  const auto pi = trivial_rep(2, 1);
  const auto probes = explicit_probes({unit(2, 0), unit(2, 1)});
  // X e1 = e2
  MembershipQuery q{0, 1, 0.1, GroupAlgebraElement::delta(2, "a")};
  CHECK(membership_U(eta, pi, probes, q));
  q.f = GroupAlgebraElement(2);
  q.delta = 0.5;
  CHECK_FALSE(membership_U(eta, pi, probes, q));
  q.delta = 1.0;
  CHECK_FALSE(membership_U(eta, pi, probes, q));  // strict inequality
  q.f.reset();
  CHECK_THROWS_AS(membership_U(eta, pi, probes, q), InputError);

  const auto pi2 = random_haar_rep(2, 2, 3);
  const auto p2 = make_probes(4, 4, 4);
  const auto sol = solve_transporter(tensor(eta, pi2), p2[0], p2[1], 4);
  MembershipQuery q2{0, 1, std::max(10 * sol.residual, 1e-13), sol.f};
  CHECK(membership_U(eta, pi2, p2, q2));
  q2.target = 9;
  CHECK_THROWS_AS(membership_U(eta, pi2, p2, q2), InputError);
}

TEST_CASE("membership_V examples") {
  const auto probes = make_probes(1, 2, 4);
  MembershipQuery same{2, 2, 0.5, std::nullopt};
  const auto w = membership_V(pauli_rep(), trivial_rep(2, 1), probes, same, 0);
  REQUIRE(w.has_value());
  CHECK((w->f - GroupAlgebraElement::delta(2, "")).pruned(1e-12).is_zero());

  const auto e = explicit_probes({unit(2, 0), unit(2, 1)});
  for (int budget = 0; budget <= 4; ++budget)
    CHECK_FALSE(membership_V(trivial_rep(2, 2), trivial_rep(2, 1), e, {0, 1, 0.5, std::nullopt}, budget).has_value());

  const auto pi = random_haar_rep(2, 3, 2);
  const auto p6 = make_probes(7, 6, 6);
  for (std::size_t j = 0; j < 3; ++j) {
    const auto v = membership_V(pauli_rep(), pi, p6, {j, j + 3, 0.05, std::nullopt}, 4);
    REQUIRE(v.has_value());
    CHECK(v->residual < 0.05);
  }
}

TEST_CASE("witnesses are sound under independent re-evaluation") {
  const auto eta = pauli_rep();
  int witnesses = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto pi = random_haar_rep(2, 1 + static_cast<int>(s % 3), s);
    const auto probes = make_probes(s + 100, eta.dim() * pi.dim(), 4);
    for (NormSource src : {NormSource::rep_norm, NormSource::lambda_upper})
      for (double delta : dyadic_delta_grid(5)) {
        MembershipQuery q{0, 1, delta, std::nullopt};
        const auto w = membership_V(eta, pi, probes, q, 3, src);
        if (!w) continue;
        ++witnesses;
        CHECK((apply_tensor_element(eta, pi, w->f, probes[0]) - probes[1]).norm() < delta);
        const double cap = 4.0 * probes[1].norm() / probes[0].norm();
        CHECK(w->norm_cap == doctest::Approx(cap));
        if (src == NormSource::rep_norm) CHECK(svd_norm(evaluate(tensor(eta, pi), w->f)) <= cap * (1 + 1e-9));
        if (w->capped) CHECK(w->capped_norm <= cap * (1 + 1e-9));
      }
  }
  CHECK(witnesses > 50);
}

TEST_CASE("membership grid is a finite conjunction") {
  const auto pi = random_haar_rep(2, 3, 5);
  const auto probes = make_probes(8, 6, 4);
  const auto g = membership_grid(pauli_rep(), pi, probes, {{0, 1}, {2, 3}}, dyadic_delta_grid(3), 4);
  CHECK(g.cells.size() == 6);
  bool all = true;
  for (const auto& c : g.cells) all = all && c.member;
  CHECK(g.all_members == all);
  const auto bad = membership_grid(trivial_rep(2, 2), trivial_rep(2, 1), explicit_probes({unit(2, 0), unit(2, 1)}),
                                   {{0, 0}, {0, 1}}, {0.25}, 2);
  CHECK(bad.cells[0].member);
  CHECK_FALSE(bad.cells[1].member);
  CHECK_FALSE(bad.all_members);
}

TEST_CASE("Lemma 1 chain") {
  const auto eta = pauli_rep();
  SUBCASE("end to end at total dimension 6") {
    for (double delta : {0.3, 0.2, 0.1}) {
      const auto pi_n = random_haar_rep(2, 2, 11);
      const auto probes = make_block_probes(21, 2, 6, 2, 1e-4, 2);
      const auto r = verify_lemma1_chain(eta, pi_n, 6, probes[0], probes[1], delta, 4);
      CHECK(r.passed);
      const double third = delta / 3.0;
      // independent recomputation of every term
      const int n = 2, total = 6;
      Vec xj_p = Vec::Zero(12), xk_p = Vec::Zero(12);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < n; ++b) {
          xj_p(a * total + b) = probes[0](a * total + b);
          xk_p(a * total + b) = probes[1](a * total + b);
        }
      CHECK(r.x_j_proj_err == doctest::Approx((probes[0] - xj_p).norm()));
      CHECK(r.term3 == doctest::Approx((probes[1] - xk_p).norm()));
      const auto ext = extend_with_identity(pi_n, total);
      CHECK(r.total == doctest::Approx((apply_tensor_element(eta, ext, r.solution.f, probes[0]) - probes[1]).norm()));
      const double t1 = (apply_tensor_element(eta, ext, r.solution.f, xj_p) - xk_p).norm();
      CHECK(std::abs(r.term1 - t1) <= 1e-12);
      CHECK(r.term2 == doctest::Approx(svd_norm(evaluate(eta, r.solution.f)) * r.x_j_proj_err));
      CHECK(r.term1 < third);
      CHECK(r.term2 < third);
      CHECK(r.term3 < third);
      const double middle = 4.0 * probes[1].norm() / probes[0].norm() * r.x_j_proj_err;
      CHECK(r.middle_bound == doctest::Approx(middle));
      CHECK(middle < third);
      CHECK(r.x_j_proj_ok);
      CHECK(r.x_k_proj_ok);
      CHECK(r.ratio_ok);
      CHECK(r.block_cap == doctest::Approx(2.0 * xk_p.norm() / xj_p.norm()));
      CHECK(r.solution.op_norm_on_rep <= r.block_cap * (1 + 1e-9));
      CHECK(r.total <= r.term1 + r.term2 + r.term3 + 1e-12);
    }
  }
  SUBCASE("middle-term budget follows from the projection condition") {
    // |x_j - x_j'| < delta |x_j| / (12 |x_k|)  implies  4 (|x_k|/|x_j|) |x_j - x_j'| < delta / 3
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
      const double delta = 0.3, nj = 0.1 + std::uniform_real_distribution<>(0, 5)(rng),
                   nk = 0.1 + std::uniform_real_distribution<>(0, 5)(rng);
      const double err = std::uniform_real_distribution<>(0, 1)(rng) * delta * nj / (12 * nk);
      CHECK(4 * (nk / nj) * err < delta / 3);
    }
  }
  SUBCASE("probes inside the block") {
    const auto probes = make_block_probes(5, 2, 5, 3, 0.0, 2);
    const auto r = verify_lemma1_chain(eta, random_haar_rep(2, 3, 4), 5, probes[0], probes[1], 0.3, 4);
    CHECK(r.term2 == 0.0);
    CHECK(r.term3 == 0.0);
    CHECK(r.passed == (r.term1 < 0.1));
    CHECK(r.passed);
  }
  SUBCASE("unsatisfiable projection conditions are reported") {
    const auto probes = make_block_probes(5, 2, 6, 2, 1.0, 2);
    const auto r = verify_lemma1_chain(eta, random_haar_rep(2, 2, 4), 6, probes[0], probes[1], 0.1, 4);
    CHECK_FALSE(r.x_k_proj_ok);
    CHECK_FALSE(r.passed);
  }
  SUBCASE("preconditions") {
    const auto probes = make_block_probes(5, 2, 6, 2, 0.0, 2);
    CHECK_THROWS_AS(verify_lemma1_chain(eta, trivial_rep(2, 2), 6, probes[0], probes[1], 0.1, 4), InputError);
    const auto p4 = make_block_probes(5, 2, 4, 2, 0.0, 2);
    CHECK_THROWS_AS(verify_lemma1_chain(eta, pauli_rep(), 4, p4[0], p4[1], 0.1, 4), InputError);
    CHECK_THROWS_AS(verify_lemma1_chain(eta, random_haar_rep(2, 2, 1), 1, probes[0], probes[1], 0.1, 4), InputError);
  }
  SUBCASE("triangle inequality holds across seeds") {
    for (std::uint64_t s = 0; s < 30; ++s) {
      const auto probes = make_block_probes(s, 2, 5, 2, 0.05, 2);
      const auto r = verify_lemma1_chain(eta, random_haar_rep(2, 2, s + 50), 5, probes[0], probes[1], 0.3, 3);
      CHECK(r.total <= r.term1 + r.term2 + r.term3 + 1e-12);
      CHECK(r.passed == (r.term1 < 0.1 && r.term2 < 0.1 && r.term3 < 0.1 && r.total < 0.3));
    }
  }
}

TEST_CASE("cyclicity chain") {
  const auto eta = pauli_rep();
  const auto pi = random_haar_rep(2, 3, 1);
  const auto probes = make_probes(9, 6, 64);

  SUBCASE("exact probes") {
    const auto r = verify_cyclicity_chain(eta, pi, probes[3], probes[10], 0.3, probes, 4);
    CHECK(r.passed);
    CHECK(r.chosen_j == 3);
    CHECK(r.chosen_k == 10);
    CHECK(r.final_error <= 1e-12);
    CHECK(r.final_error == doctest::Approx(r.witness_residual));
  }
  SUBCASE("constants") {
    Rng rng(2);
    for (double eps : {0.3, 0.1, 0.05, 1.0}) {
      const Vec v = random_vector(rng, 6), y = random_vector(rng, 6);
      const auto r = verify_cyclicity_chain(eta, pi, v, y, eps, probes, 4);
      CHECK(r.delta1 == std::min(eps * v.norm() / (48 * y.norm()), v.norm() / 2));
      CHECK(r.delta1 * 48 * y.norm() / (eps * v.norm()) <= 1.0 + 4e-16);
      CHECK(r.delta2 == eps / 3);
      CHECK(std::abs(r.delta2 * 3 / eps - 1.0) <= 2e-16);
      CHECK(r.y_bound == std::min(r.delta2, y.norm() / 2));
      CHECK_FALSE(r.passed);  // random v, y are far from 64 probes in C^6
      CHECK(r.failure.find("too coarse") != std::string::npos);
      CHECK(r.v_distance >= r.delta1);
    }
    const auto r = verify_cyclicity_chain(eta, pi, probes[0], probes[1], 0.3, probes, 4);
    CHECK(r.delta2 * 3 / 0.3 == 1.0);
  }
  SUBCASE("first probe meeting each bound is chosen") {
    auto dup = probes;
    dup.vectors.insert(dup.vectors.begin(), probes[5] + Vec::Constant(6, 1e-9));
    const auto r = verify_cyclicity_chain(eta, pi, probes[5], probes[6], 0.3, dup, 4);
    CHECK(r.chosen_j == 0);
    CHECK(r.chosen_k == 7);
  }
  SUBCASE("zero target") {
    const auto r = verify_cyclicity_chain(eta, pi, probes[0], Vec::Zero(6), 0.3, probes, 4);
    CHECK(r.passed);
    CHECK(r.f->is_zero());
  }
  SUBCASE("trials") {
    CyclicityTrialConfig cfg;
    cfg.seed = 17;
    const auto reports = cyclicity_trials(eta, pi, probes, cfg);
    REQUIRE(reports.size() == 100);
    int passed = 0;
    for (const auto& r : reports) {
      passed += r.passed;
      if (r.passed) {
        CHECK(r.final_error < cfg.epsilon);
        CHECK(r.implied_bound_ok);
        CHECK(r.final_error == doctest::Approx((apply_tensor_element(eta, pi, *r.f, r.v) - r.y).norm()));
      } else {
        CHECK_FALSE(r.failure.empty());
      }
    }
    CHECK(passed >= 95);
    const auto again = cyclicity_trials(eta, pi, probes, cfg);
    for (std::size_t i = 0; i < reports.size(); ++i) CHECK(again[i].final_error == reports[i].final_error);
  }
  CHECK_THROWS_AS(verify_cyclicity_chain(eta, pi, Vec::Zero(6), probes[0], 0.3, probes, 4), InputError);
  CHECK_THROWS_AS(verify_cyclicity_chain(eta, pi, probes[0], probes[1], 0.0, probes, 4), InputError);
}

TEST_CASE("genericity") {
  const auto eta = pauli_rep();
  auto s = monte_carlo_genericity(eta, 3, 100, 1);
  CHECK(s.trials == 100);
  CHECK(s.rows.size() == 100);
  CHECK(s.irreducible == 100);
  for (const auto& row : s.rows) {
    CHECK(row.commutant_dim == 1);
    CHECK(row.algebra_dim == 36);
  }
  const auto threaded = monte_carlo_genericity(eta, 3, 100, 1, kDefaultRankTol, 3);
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    CHECK(threaded.rows[i].seed == s.rows[i].seed);
    CHECK(threaded.rows[i].commutant_dim == s.rows[i].commutant_dim);
  }

  const auto control_trivial = is_irreducible(tensor(eta, trivial_rep(2, 2)));
  CHECK_FALSE(control_trivial.is_irreducible);
  CHECK(control_trivial.commutant_dim == 4);
  const auto control_same = is_irreducible(tensor(eta, eta));
  CHECK_FALSE(control_same.is_irreducible);
  CHECK(control_same.commutant_dim == 4);

  const auto haar_eta = random_haar_rep(2, 2, 2024);
  REQUIRE(is_irreducible(haar_eta).is_irreducible);
  for (int d : {2, 3, 4}) CHECK(monte_carlo_genericity(haar_eta, d, 100, 7).irreducible >= 99);
  CHECK_THROWS_AS(monte_carlo_genericity(eta, 3, 0, 1), InputError);
}

TEST_CASE("density probe") {
  const auto eta = pauli_rep();
  SUBCASE("already of block form") {
    const auto pi = extend_with_identity(random_haar_rep(2, 2, 3), 4);
    DensityConfig cfg;
    cfg.dims_to_try = {2};
    cfg.probe_seed = 4;
    const auto rows = density_probe(pi, eta, cfg);
    CHECK(rows[0].distance == 0.0);
  }
  SUBCASE("distances nonincreasing and witnesses for n >= 2") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto pi = random_haar_rep(2, 4, s);
      DensityConfig cfg;
      cfg.dims_to_try = {1, 2, 3, 4};
      cfg.probe_seed = s + 100;
      const auto rows = density_probe(pi, eta, cfg);
      REQUIRE(rows.size() == 4);
      for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].distance <= rows[i - 1].distance + 1e-12);
      CHECK(rows.back().distance <= 1e-12);
      for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].witness_found);
    }
  }
  SUBCASE("polar repair") {
    const auto pi = random_haar_rep(2, 5, 8);
    const auto t = truncate_block(pi, 3);
    CHECK(t.dim() == 3);
    for (const auto& g : t.generators()) CHECK(unitarity_defect(g) <= 1e-12);
    CHECK_THROWS_AS(truncate_block(pi, 6), InputError);
  }
}

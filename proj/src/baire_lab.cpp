#include "frep/baire_lab.hpp"

#include <cmath>
#include <limits>
#include <thread>

#include "frep/random.hpp"

namespace frep {

namespace {

const Vec& probe_at(const ProbeSequence& probes, std::size_t i, Eigen::Index dim) {
  if (i >= probes.size()) throw InputError("probe index " + std::to_string(i) + " out of range");
  if (probes[i].size() != dim) throw InputError("probe dimension does not match eta (x) pi");
  return probes[i];
}

// Independent evaluation path: sum_w f(w) eta(w) (x) pi(w).
Mat tensor_image(const Representation& eta, const Representation& pi, const GroupAlgebraElement& f) {
  Mat out = Mat::Zero(eta.dim() * pi.dim(), eta.dim() * pi.dim());
  for (const auto& [w, c] : f.terms()) out += c * kron(evaluate_word(eta, w), evaluate_word(pi, w));
  return out;
}

// Coordinates a * total + b with b < block, packed as a * block + b.
Vec compress_block(const Vec& x, int outer, int total, int block) {
  Vec out(outer * block);
  for (int a = 0; a < outer; ++a) out.segment(a * block, block) = x.segment(a * total, block);
  return out;
}

Vec project_block(const Vec& x, int outer, int total, int block) {
  Vec out = Vec::Zero(x.size());
  for (int a = 0; a < outer; ++a) out.segment(a * total, block) = x.segment(a * total, block);
  return out;
}

}  // namespace

std::vector<double> dyadic_delta_grid(int levels) {
  std::vector<double> grid;
  double d = 0.5;
  for (int i = 0; i < levels; ++i, d *= 0.5) grid.push_back(d);
  return grid;
}

double dyadic_delta_at_most(double bound) {
  if (!(bound > 0.0)) throw InputError("delta bound must be positive");
  double d = 0.5;
  while (d > bound) d *= 0.5;
  return d;
}

bool membership_U(const Representation& eta, const Representation& pi, const ProbeSequence& probes,
                  const MembershipQuery& query) {
  if (!query.f) throw InputError("U-membership query needs an element f");
  if (!(query.delta > 0.0)) throw InputError("delta must be positive");
  const Eigen::Index dim = eta.dim() * pi.dim();
  const Vec& xj = probe_at(probes, query.source, dim);
  const Vec& xk = probe_at(probes, query.target, dim);
  return (tensor_image(eta, pi, *query.f) * xj - xk).norm() < query.delta;
}

std::optional<TransporterSolution> membership_V(const Representation& eta, const Representation& pi,
                                                const ProbeSequence& probes, const MembershipQuery& query,
                                                int word_budget, NormSource source) {
  if (!(query.delta > 0.0)) throw InputError("delta must be positive");
  const Eigen::Index dim = eta.dim() * pi.dim();
  const Vec& xj = probe_at(probes, query.source, dim);
  const Vec& xk = probe_at(probes, query.target, dim);
  const double cap = 4.0 * xk.norm() / xj.norm();
  TransporterSolution sol = solve_transporter(tensor(eta, pi), xj, xk, word_budget, cap, source);
  if (!(sol.residual < query.delta)) return std::nullopt;
  if (sol.capped_norm > cap * (1.0 + 1e-9)) return std::nullopt;
  MembershipQuery check = query;
  check.f = sol.f;
  if (!membership_U(eta, pi, probes, check)) return std::nullopt;
  return sol;
}

GridReport membership_grid(const Representation& eta, const Representation& pi, const ProbeSequence& probes,
                           const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                           const std::vector<double>& deltas, int word_budget, NormSource source) {
  GridReport report;
  for (const auto& [j, k] : pairs) {
    for (double delta : deltas) {
      MembershipQuery q{j, k, delta, std::nullopt};
      const auto witness = membership_V(eta, pi, probes, q, word_budget, source);
      GridCell cell{j, k, delta, witness.has_value(), 0.0};
      if (witness) {
        cell.residual = witness->residual;
      } else {
        const Eigen::Index dim = eta.dim() * pi.dim();
        const Vec& xj = probe_at(probes, j, dim);
        const Vec& xk = probe_at(probes, k, dim);
        cell.residual = solve_transporter(tensor(eta, pi), xj, xk, word_budget, 4.0 * xk.norm() / xj.norm(), source).residual;
      }
      report.all_members = report.all_members && cell.member;
      report.cells.push_back(cell);
    }
  }
  return report;
}

ChainReport verify_lemma1_chain(const Representation& eta, const Representation& pi_n, int total_dim,
                                const Vec& x_j, const Vec& x_k, double delta, int word_budget) {
  if (!(delta > 0.0)) throw InputError("delta must be positive");
  const int h = eta.dim();
  const int n = pi_n.dim();
  if (total_dim < n) throw InputError("total_dim is smaller than the block dimension");
  if (x_j.size() != h * total_dim || x_k.size() != h * total_dim)
    throw InputError("chain vectors must live in C^(dim eta * total_dim)");
  if (!is_irreducible(pi_n).is_irreducible) throw InputError("pi_n must be irreducible");
  const Representation block_rep = tensor(eta, pi_n);
  if (!is_irreducible(block_rep).is_irreducible) throw InputError("eta (x) pi_n is reducible");

  ChainReport r;
  r.delta = delta;
  const Vec xj_p = project_block(x_j, h, total_dim, n);
  const Vec xk_p = project_block(x_k, h, total_dim, n);
  const double nj = x_j.norm(), nk = x_k.norm();
  const double nj_p = xj_p.norm(), nk_p = xk_p.norm();
  r.x_j_proj_err = (x_j - xj_p).norm();
  r.x_k_proj_err = (x_k - xk_p).norm();
  r.x_k_proj_ok = r.x_k_proj_err < delta / 3.0;
  r.x_j_proj_ok = r.x_j_proj_err < delta * nj / (12.0 * nk);
  r.ratio_ok = nj_p > 0.0 && nk_p / nj_p < 2.0 * nk / nj;
  r.paper_cap = 4.0 * nk / nj;
  r.middle_bound = r.paper_cap * r.x_j_proj_err;
  r.term3 = r.x_k_proj_err;
  if (!(nj_p > 0.0)) {
    r.term1 = nk_p;
    r.total = nk;
    return r;
  }

  r.block_cap = 2.0 * nk_p / nj_p;
  const Vec xj_b = compress_block(x_j, h, total_dim, n);
  const Vec xk_b = compress_block(x_k, h, total_dim, n);
  r.solution = solve_transporter(block_rep, xj_b, xk_b, word_budget, r.block_cap);
  const GroupAlgebraElement& f = r.solution.f;

  const Mat block_image = evaluate(block_rep, f);
  r.term1 = (block_image * xj_b - xk_b).norm();
  r.block_op_norm = operator_norm(block_image);
  r.eta_norm = operator_norm(evaluate(eta, f));
  r.term2 = r.eta_norm * r.x_j_proj_err;

  const Representation full = tensor(eta, extend_with_identity(pi_n, total_dim));
  r.total = (evaluate(full, f) * x_j - x_k).norm();

  const double third = delta / 3.0;
  r.passed = r.term1 < third && r.term2 < third && r.term3 < third && r.total < delta;
  if (r.total > r.term1 + r.term2 + r.term3 + 1e-12)
    throw AssertionFailure("triangle decomposition violated: total " + std::to_string(r.total));
  return r;
}

CyclicityReport verify_cyclicity_chain(const Representation& eta, const Representation& pi, const Vec& v,
                                       const Vec& y, double epsilon, const ProbeSequence& probes,
                                       int word_budget, NormSource source) {
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  const Eigen::Index dim = eta.dim() * pi.dim();
  if (v.size() != dim || y.size() != dim) throw InputError("v and y must live in C^(dim eta * dim pi)");
  const double nv = v.norm(), ny = y.norm();
  if (!(nv > 0.0)) throw InputError("cyclicity chain needs a nonzero v");

  CyclicityReport r;
  r.epsilon = epsilon;
  r.v = v;
  r.y = y;
  r.delta2 = epsilon / 3.0;
  if (ny == 0.0) {
    // Outside the argument proper: f = 0 reaches y = 0 exactly.
    r.delta1 = nv / 2.0;
    r.f = GroupAlgebraElement(eta.k());
    r.passed = true;
    r.implied_bound_ok = true;
    r.failure = "zero target";
    return r;
  }
  r.delta1 = std::min(epsilon * nv / (48.0 * ny), nv / 2.0);
  r.y_bound = std::min(r.delta2, ny / 2.0);

  r.v_distance = std::numeric_limits<double>::infinity();
  r.y_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (probes[i].size() != dim) throw InputError("probe dimension does not match eta (x) pi");
    const double dv = (v - probes[i]).norm();
    const double dy = (y - probes[i]).norm();
    if (r.chosen_j < 0) {
      r.v_distance = std::min(r.v_distance, dv);
      if (dv < r.delta1) {
        r.chosen_j = static_cast<long>(i);
        r.v_distance = dv;
      }
    }
    if (r.chosen_k < 0) {
      r.y_distance = std::min(r.y_distance, dy);
      if (dy < r.y_bound) {
        r.chosen_k = static_cast<long>(i);
        r.y_distance = dy;
      }
    }
  }
  if (r.chosen_j < 0 || r.chosen_k < 0) {
    r.failure = "probe sequence too coarse:";
    if (r.chosen_j < 0)
      r.failure += " min |v - x_n| = " + std::to_string(r.v_distance) + " >= delta1 = " + std::to_string(r.delta1) + ";";
    if (r.chosen_k < 0)
      r.failure += " min |y - x_n| = " + std::to_string(r.y_distance) + " >= " + std::to_string(r.y_bound) + ";";
    return r;
  }

  r.delta = dyadic_delta_at_most(r.delta2);
  MembershipQuery q{static_cast<std::size_t>(r.chosen_j), static_cast<std::size_t>(r.chosen_k), r.delta, std::nullopt};
  const auto witness = membership_V(eta, pi, probes, q, word_budget, source);
  if (!witness) {
    r.failure = "no V-witness at word budget " + std::to_string(word_budget);
    return r;
  }
  r.f = witness->f;
  r.witness_residual = witness->residual;
  const Mat image = evaluate(tensor(eta, pi), witness->f);
  r.op_norm = operator_norm(image);
  r.implied_bound = r.op_norm * r.delta1;
  r.implied_bound_ok = r.implied_bound <= epsilon / 3.0 * (1.0 + 1e-9);
  r.final_error = (image * v - y).norm();
  r.passed = r.final_error < epsilon;
  if (!r.passed) r.failure = "final error " + std::to_string(r.final_error) + " >= epsilon";
  return r;
}

std::vector<CyclicityReport> cyclicity_trials(const Representation& eta, const Representation& pi,
                                              const ProbeSequence& probes, const CyclicityTrialConfig& config) {
  if (probes.size() == 0) throw InputError("cyclicity trials need at least one probe");
  if (config.trials < 1) throw InputError("trials must be >= 1");
  if (!(config.perturbation >= 0.0)) throw InputError("perturbation must be nonnegative");
  std::vector<CyclicityReport> out;
  for (int t = 0; t < config.trials; ++t) {
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(t)));
    std::uniform_int_distribution<std::size_t> pick(0, probes.size() - 1);
    auto near_probe = [&]() -> Vec {
      const Vec& base = probes[pick(rng)];
      Vec u = ginibre(base.size(), 1, rng);
      return base + (config.perturbation * base.norm() / u.norm()) * u;
    };
    const Vec v = near_probe();
    const Vec y = near_probe();
    out.push_back(verify_cyclicity_chain(eta, pi, v, y, config.epsilon, probes, config.word_budget, config.source));
  }
  return out;
}

GenericitySummary monte_carlo_genericity(const Representation& eta, int pi_dim, int trials, std::uint64_t seed,
                                         double tol, unsigned threads) {
  if (trials < 1) throw InputError("trials must be >= 1");
  if (pi_dim < 1) throw InputError("pi dimension must be >= 1");
  GenericitySummary s;
  s.trials = trials;
  s.pi_dim = pi_dim;
  s.rows.resize(static_cast<std::size_t>(trials));
  auto run_trial = [&](int t) {
    GenericityRow row;
    row.trial = t;
    row.seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    const Representation pi = random_haar_rep(eta.k(), pi_dim, row.seed);
    const IrreducibilityReport rep = is_irreducible(tensor(eta, pi), tol);
    row.commutant_dim = rep.commutant_dim;
    row.algebra_dim = rep.algebra_dim;
    row.irreducible = rep.is_irreducible;
    s.rows[static_cast<std::size_t>(t)] = row;
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1) {
    for (int t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (int t = static_cast<int>(w); t < trials; t += static_cast<int>(threads)) run_trial(t);
      });
    for (auto& th : pool) th.join();
  }
  for (const auto& row : s.rows) s.irreducible += row.irreducible ? 1 : 0;
  return s;
}

Representation truncate_block(const Representation& pi, int n) {
  if (n < 1 || n > pi.dim()) throw InputError("block size must be in 1..dim");
  std::vector<Mat> gens;
  for (const auto& g : pi.generators()) {
    const Mat block = g.topLeftCorner(n, n);
    // A block that is already unitary (pi of the form pi_n (+) Id) is kept as is.
    gens.push_back(unitarity_defect(block) <= 1e-14 * n ? block : polar_unitary(block));
  }
  return Representation::make(pi.k(), std::move(gens), 1e-9);
}

std::vector<DensityRow> density_probe(const Representation& pi, const Representation& eta,
                                      const DensityConfig& config) {
  const ProbeSequence metric = make_probes(config.probe_seed, pi.dim(), config.metric_probes);
  const ProbeSequence tensor_probes =
      make_probes(derive_seed(config.probe_seed, 1), eta.dim() * pi.dim(), config.tensor_probes);
  std::vector<DensityRow> rows;
  for (int n : config.dims_to_try) {
    DensityRow row;
    row.n = n;
    const Representation approx = extend_with_identity(truncate_block(pi, n), pi.dim());
    row.distance = rep_distance(approx, pi, metric);
    MembershipQuery q{config.source, config.target, config.delta, std::nullopt};
    const auto witness = membership_V(eta, approx, tensor_probes, q, config.word_budget, config.source_norm);
    row.witness_found = witness.has_value();
    if (witness) {
      row.residual = witness->residual;
    } else {
      const Vec& xj = probe_at(tensor_probes, config.source, eta.dim() * pi.dim());
      const Vec& xk = probe_at(tensor_probes, config.target, eta.dim() * pi.dim());
      row.residual = solve_transporter(tensor(eta, approx), xj, xk, config.word_budget, 4.0 * xk.norm() / xj.norm(),
                                       config.source_norm).residual;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace frep

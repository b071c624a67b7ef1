#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frep/irreducibility.hpp"
#include "frep/probes.hpp"
#include "frep/transporter.hpp"

namespace frep {

/// Query against the sets
///   U(j, k, delta, f) = { pi : |(eta (x) pi)(f) x_j - x_k| < delta }
///   V(j, k, delta)    = union of U(j, k, delta, f) over f with norm below 4|x_k|/|x_j|.
/// Indices are 0-based positions in a ProbeSequence.
struct MembershipQuery {
  std::size_t source = 0;  // j
  std::size_t target = 0;  // k
  double delta = 0.0;
  std::optional<GroupAlgebraElement> f;
};

/// {1/2, 1/4, ..., 2^-levels}
std::vector<double> dyadic_delta_grid(int levels);
/// Largest 2^-m (m >= 1) that is <= bound.
double dyadic_delta_at_most(double bound);

/// Literal evaluation of the U-inequality. (eta (x) pi)(f) is assembled word by
/// word from Kronecker products, independently of the tensor representation.
bool membership_U(const Representation& eta, const Representation& pi, const ProbeSequence& probes,
                  const MembershipQuery& query);

/// Searches for a witness f placing pi in V; the cap 4|x_k|/|x_j| applies to
/// the norm chosen by `source`. A returned witness satisfies membership_U.
std::optional<TransporterSolution> membership_V(const Representation& eta, const Representation& pi,
                                                const ProbeSequence& probes, const MembershipQuery& query,
                                                int word_budget, NormSource source = NormSource::rep_norm);

struct GridCell {
  std::size_t source = 0;
  std::size_t target = 0;
  double delta = 0.0;
  bool member = false;
  double residual = 0.0;
};

/// Finite conjunction of V-memberships over all (pair, delta) cells.
struct GridReport {
  std::vector<GridCell> cells;
  bool all_members = true;
};

GridReport membership_grid(const Representation& eta, const Representation& pi, const ProbeSequence& probes,
                           const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                           const std::vector<double>& deltas, int word_budget,
                           NormSource source = NormSource::rep_norm);

struct ChainReport {
  double delta = 0.0;
  double term1 = 0.0;  // |(eta (x) pi_n)(f) x_j' - x_k'|
  double term2 = 0.0;  // |(eta (x) Id)(f)| |x_j - x_j'|
  double term3 = 0.0;  // |x_k - x_k'|
  double x_j_proj_err = 0.0;
  double x_k_proj_err = 0.0;
  bool ratio_ok = false;      // |x_k'|/|x_j'| < 2|x_k|/|x_j|
  bool x_k_proj_ok = false;   // |x_k - x_k'| < delta/3
  bool x_j_proj_ok = false;   // |x_j - x_j'| < delta |x_j| / (12 |x_k|)
  double block_cap = 0.0;     // 2|x_k'|/|x_j'|
  double paper_cap = 0.0;     // 4|x_k|/|x_j|
  double block_op_norm = 0.0; // |(eta (x) pi_n)(f)|
  double eta_norm = 0.0;      // |eta(f)| = |(eta (x) Id)(f)|
  double middle_bound = 0.0;  // 4 (|x_k|/|x_j|) |x_j - x_j'|
  double total = 0.0;         // |(eta (x) (pi_n + Id))(f) x_j - x_k|
  bool passed = false;
  TransporterSolution solution;
};

/// Projects onto H (x) M_n (M_n = first pi_n.dim() coordinates of C^total_dim),
/// solves the block transport with cap 2|x_k'|/|x_j'|, extends by the identity
/// and evaluates each term of the triangle decomposition. Throws InputError if
/// pi_n or eta (x) pi_n is reducible.
ChainReport verify_lemma1_chain(const Representation& eta, const Representation& pi_n, int total_dim,
                                const Vec& x_j, const Vec& x_k, double delta, int word_budget);

struct CyclicityReport {
  double epsilon = 0.0;
  Vec v, y;
  double delta1 = 0.0;  // min(eps |v| / (48 |y|), |v|/2)
  double delta2 = 0.0;  // eps / 3
  double delta = 0.0;   // dyadic delta <= delta2 used for the V query
  long chosen_j = -1;
  long chosen_k = -1;
  double v_distance = 0.0;  // min_n |v - x_n| (or |v - x_j| when chosen)
  double y_distance = 0.0;
  double y_bound = 0.0;     // min(delta2, |y|/2)
  std::optional<GroupAlgebraElement> f;
  double witness_residual = 0.0;
  double op_norm = 0.0;
  double implied_bound = 0.0;  // |(eta (x) pi)(f)| delta1, at most eps/3 under the cap
  bool implied_bound_ok = false;
  double final_error = 0.0;
  bool passed = false;
  std::string failure;
};

/// Runs the cyclicity argument: pick probes near v and y, obtain a V-witness
/// for a dyadic delta <= eps/3 and measure |(eta (x) pi)(f) v - y| against eps.
CyclicityReport verify_cyclicity_chain(const Representation& eta, const Representation& pi, const Vec& v,
                                       const Vec& y, double epsilon, const ProbeSequence& probes,
                                       int word_budget, NormSource source = NormSource::rep_norm);

struct CyclicityTrialConfig {
  double epsilon = 0.3;
  int trials = 100;
  std::uint64_t seed = 0;
  /// v and y are drawn at relative distance `perturbation` from uniformly
  /// chosen probes, so the probe sequence is dense at that scale.
  double perturbation = 1e-4;
  int word_budget = 4;
  NormSource source = NormSource::rep_norm;
};

/// Seeded cyclicity trials; trial t uses derive_seed(seed, t).
std::vector<CyclicityReport> cyclicity_trials(const Representation& eta, const Representation& pi,
                                              const ProbeSequence& probes, const CyclicityTrialConfig& config);

struct GenericityRow {
  int trial = 0;
  std::uint64_t seed = 0;
  int commutant_dim = 0;
  int algebra_dim = 0;
  bool irreducible = false;
};

struct GenericitySummary {
  int trials = 0;
  int pi_dim = 0;
  int irreducible = 0;
  std::vector<GenericityRow> rows;
};

/// Per trial: pi ~ Haar of dimension pi_dim with seed derive_seed(seed, trial),
/// then the irreducibility test of eta (x) pi.
GenericitySummary monte_carlo_genericity(const Representation& eta, int pi_dim, int trials, std::uint64_t seed,
                                         double tol = kDefaultRankTol, unsigned threads = 1);

struct DensityRow {
  int n = 0;
  double distance = 0.0;
  bool witness_found = false;
  double residual = 0.0;
};

struct DensityConfig {
  std::size_t source = 0;
  std::size_t target = 1;
  double delta = 0.2;
  std::vector<int> dims_to_try;
  std::uint64_t probe_seed = 0;
  int metric_probes = kDefaultProbeCount;
  int tensor_probes = 8;
  int word_budget = 4;
  NormSource source_norm = NormSource::rep_norm;
};

/// For each n, replaces pi by (polar part of its leading n x n block) (+) Id and
/// records the distance to pi and whether the replacement admits a V-witness.
std::vector<DensityRow> density_probe(const Representation& pi, const Representation& eta,
                                      const DensityConfig& config);

/// Leading n x n blocks of the generators, re-unitarized by polar factor.
Representation truncate_block(const Representation& pi, int n);

}  // namespace frep

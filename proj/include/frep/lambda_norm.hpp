#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "frep/group_algebra.hpp"
#include "frep/representation.hpp"

namespace frep {

constexpr int kDefaultPowerIters = 60;

/// How the compression of lambda(f^* f) to l^2(ball of radius R) is applied.
///  full:      matrix-free on every word of the ball.
///  radial:    on the subspace of functions of word length; exact for elements
///             whose coefficients depend only on word length.
///  automatic: radial when f is length-radial, full otherwise.
enum class BallMethod { automatic, full, radial };

const char* to_string(BallMethod m);
BallMethod ball_method_from_string(std::string_view s);

struct BallEstimate {
  double lower = 0.0;
  int radius = 0;
  int iterations = 0;
  std::uint64_t ball_words = 0;
  BallMethod method = BallMethod::full;
  /// Rayleigh quotients never decreased by more than rounding.
  bool monotone = true;
  double last_rayleigh = 0.0;
};

struct NormInterval {
  double lower = 0.0;
  double upper = 0.0;
  int ball_radius = 0;
  int iterations = 0;
  BallEstimate estimate;
  /// Estimate for f^*, whose compression lambda(f f^*) differs from that of
  /// lambda(f^* f) at finite radius. Absent when f^* = f.
  std::optional<BallEstimate> adjoint_estimate;
  double haagerup = 0.0;
  double l1 = 0.0;
};

struct BallOptions {
  int radius = 0;
  int iters = kDefaultPowerIters;
  std::uint64_t seed = 0;
  BallMethod method = BallMethod::automatic;
  /// Worker threads for the matrix-free product; 0 = hardware concurrency.
  /// Results do not depend on this value.
  unsigned threads = 1;
};

/// Certified lower bound on ||lambda(f)||: square root of the last power-iteration
/// Rayleigh quotient of the compression of lambda(f^* f) to the ball.
BallEstimate ball_lower_estimate(const GroupAlgebraElement& f, const BallOptions& opt);
double ball_lower(const GroupAlgebraElement& f, int radius, int iters, std::uint64_t seed);

/// sum_n (n+1) ||f_n||_2 with f_n the restriction of f to words of length n.
double haagerup_upper(const GroupAlgebraElement& f);

/// [max of the ball bounds for f and f^*, min(haagerup_upper, l1)]; throws AssertionFailure if lower > upper.
NormInterval lambda_norm_interval(const GroupAlgebraElement& f, const BallOptions& opt);
NormInterval lambda_norm_interval(const GroupAlgebraElement& f, int radius, int iters,
                                  std::uint64_t seed);

/// Coefficient per word length when f is constant on every sphere it meets
/// (and covers it entirely); nullopt otherwise. Relative tolerance on equality.
std::optional<std::vector<Complex>> radial_profile(const GroupAlgebraElement& f, double rel_tol = 0.0);

struct DeficitRow {
  double rep_norm = 0.0;
  double lambda_lower = 0.0;
  double lambda_upper = 0.0;
  /// rep_norm - lambda_upper
  double deficit = 0.0;
  /// rep_norm - lambda_lower; positive values expose failure of the norm identity.
  double excess_over_lower = 0.0;
};

struct DeficitReport {
  double deficit = 0.0;
  std::vector<DeficitRow> rows;
};

/// max over the sample of ||rep(f)||_op - upper(||lambda(f)||).
DeficitReport weak_containment_deficit(const Representation& rep,
                                       const std::vector<GroupAlgebraElement>& fs,
                                       const BallOptions& opt);

/// Word indexing of the ball used by the matrix-free product. Exposed for tests.
class BallIndex {
public:
  BallIndex(int k, int radius);
  int k() const { return k_; }
  int radius() const { return radius_; }
  std::uint64_t size() const { return offsets_.back(); }
  std::uint64_t level_begin(int n) const { return offsets_[static_cast<std::size_t>(n)]; }
  Letter first_letter(std::uint64_t idx) const { return first_[idx]; }
  std::uint64_t index_of(const Word& w) const;
  /// Index of u * x for x = word at idx of length len, or nullopt if |u x| > radius.
  std::optional<std::uint64_t> left_multiply(std::span<const Letter> u, std::uint64_t idx, int len) const;

private:
  int k_;
  int radius_;
  std::uint64_t q_;
  std::vector<std::uint64_t> offsets_;
  std::vector<Letter> first_;
};

}  // namespace frep

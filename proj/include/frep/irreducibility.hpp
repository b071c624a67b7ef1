#pragma once

#include <vector>

#include "frep/representation.hpp"

namespace frep {

/// Relative singular-value threshold for rank and nullity decisions.
constexpr double kDefaultRankTol = 1e-8;

struct IrreducibilityReport {
  int dim = 0;
  int commutant_dim = 0;
  int algebra_dim = 0;
  int algebra_budget = 0;
  bool is_irreducible = false;
  /// Smallest singular value of the commutator map counted as nonzero
  /// (0 when the map vanishes).
  double smallest_retained_singular_value = 0.0;
  double tolerance_used = kDefaultRankTol;
  std::uint64_t input_digest = 0;
};

/// Frobenius-orthonormal basis of {X : X pi(s) = pi(s) X for all generators s}.
std::vector<Mat> commutant_basis(const Representation& rep, double tol = kDefaultRankTol);

/// Dimension of span{pi(w) : |w| <= max_len}.
int generated_algebra_dim(const Representation& rep, int max_len, double tol = kDefaultRankTol);

/// Default word budget 2d.
IrreducibilityReport is_irreducible(const Representation& rep, double tol = kDefaultRankTol);
IrreducibilityReport is_irreducible(const Representation& rep, double tol, int algebra_budget);

/// d - dim span{pi(w) v : |w| <= max_len}.
int cyclic_defect(const Representation& rep, const Vec& v, int max_len, double tol = kDefaultRankTol);

/// Numerical rank of the columns of `a`: count of singular values above
/// tol * (largest singular value).
int numerical_rank(const Mat& a, double tol);

}  // namespace frep

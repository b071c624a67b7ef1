#include "frep/irreducibility.hpp"

#include <algorithm>

namespace frep {

namespace {

struct CommutantSvd {
  Eigen::VectorXd singular;
  Mat v;
  int rank = 0;
};

// Columns index vec(X) (column-major). vec(X U) = (U^T (x) I) vec X and
// vec(U X) = (I (x) U) vec X.
CommutantSvd commutator_svd(const Representation& rep, double tol) {
  const Eigen::Index d = rep.dim();
  const Mat id = Mat::Identity(d, d);
  Mat stacked(rep.k() * d * d, d * d);
  for (int s = 0; s < rep.k(); ++s) {
    const Mat& u = rep.generator(s);
    stacked.middleRows(s * d * d, d * d) = kron(u.transpose(), id) - kron(id, u);
  }
  Eigen::BDCSVD<Mat> svd(stacked, Eigen::ComputeFullV);
  CommutantSvd out{svd.singularValues(), svd.matrixV(), 0};
  // Generators have unit norm, so the map has norm O(1) unless it vanishes;
  // the floor keeps rounding noise of a vanishing map out of the rank.
  const double top = std::max(out.singular.size() > 0 ? out.singular(0) : 0.0, 1.0);
  for (Eigen::Index i = 0; i < out.singular.size(); ++i)
    if (out.singular(i) > tol * top) ++out.rank;
  return out;
}

// Orthonormal basis (columns) of the span of `cols`.
Mat span_basis(const Mat& cols, double tol) {
  if (cols.cols() == 0) return Mat(cols.rows(), 0);
  Eigen::BDCSVD<Mat> svd(cols, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

// Smallest subspace containing `start` and closed under the 2k letter
// images, after at most `steps` extension rounds. The span of word images of
// length <= n is S_n = S_{n-1} + sum_c pi(c) S_{n-1}, so once a round adds
// nothing it never will.
template <typename Apply>
Mat grow_span(Mat basis, int steps, int letters, Apply apply, double tol) {
  for (int n = 0; n < steps; ++n) {
    Mat cand(basis.rows(), basis.cols() * (letters + 1));
    cand.leftCols(basis.cols()) = basis;
    for (int c = 0; c < letters; ++c)
      cand.middleCols(basis.cols() * (c + 1), basis.cols()) = apply(static_cast<Letter>(c), basis);
    Mat next = span_basis(cand, tol);
    const bool stable = next.cols() == basis.cols();
    basis = std::move(next);
    if (stable || basis.cols() == basis.rows()) break;
  }
  return basis;
}

}  // namespace

int numerical_rank(const Mat& a, double tol) {
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++r;
  return r;
}

std::vector<Mat> commutant_basis(const Representation& rep, double tol) {
  const Eigen::Index d = rep.dim();
  const CommutantSvd svd = commutator_svd(rep, tol);
  std::vector<Mat> basis;
  for (Eigen::Index col = svd.rank; col < d * d; ++col)
    basis.push_back(Eigen::Map<const Mat>(svd.v.col(col).data(), d, d));
  return basis;
}

int generated_algebra_dim(const Representation& rep, int max_len, double tol) {
  if (max_len < 0) throw InputError("max_len must be nonnegative");
  const Eigen::Index d = rep.dim();
  Mat start = Mat::Zero(d * d, 1);
  for (Eigen::Index i = 0; i < d; ++i) start(i * d + i, 0) = 1.0 / std::sqrt(static_cast<double>(d));
  // Left multiplication by U on vec(X) is (I (x) U).
  std::vector<Mat> lifted;
  for (Letter c = 0; c < 2 * rep.k(); ++c) lifted.push_back(kron(Mat::Identity(d, d), rep.letter_image(c)));
  Mat basis = grow_span(
      start, max_len, 2 * rep.k(), [&](Letter c, const Mat& b) -> Mat { return lifted[c] * b; }, tol);
  return static_cast<int>(basis.cols());
}

IrreducibilityReport is_irreducible(const Representation& rep, double tol) {
  return is_irreducible(rep, tol, 2 * rep.dim());
}

IrreducibilityReport is_irreducible(const Representation& rep, double tol, int algebra_budget) {
  if (!(tol > 0.0)) throw InputError("rank tolerance must be positive");
  const CommutantSvd svd = commutator_svd(rep, tol);
  IrreducibilityReport r;
  r.dim = rep.dim();
  r.commutant_dim = rep.dim() * rep.dim() - svd.rank;
  r.smallest_retained_singular_value = svd.rank > 0 ? svd.singular(svd.rank - 1) : 0.0;
  r.is_irreducible = r.commutant_dim == 1;
  r.algebra_budget = algebra_budget;
  r.algebra_dim = generated_algebra_dim(rep, algebra_budget, tol);
  r.tolerance_used = tol;
  r.input_digest = digest(rep);
  return r;
}

int cyclic_defect(const Representation& rep, const Vec& v, int max_len, double tol) {
  if (v.size() != rep.dim()) throw InputError("vector dimension does not match representation");
  const double nv = v.norm();
  if (!(nv > 0.0)) throw InputError("cyclic_defect needs a nonzero vector");
  if (max_len < 0) throw InputError("max_len must be nonnegative");
  Mat start = v / nv;
  Mat basis = grow_span(
      start, max_len, 2 * rep.k(),
      [&](Letter c, const Mat& b) -> Mat { return rep.letter_image(c) * b; }, tol);
  return rep.dim() - static_cast<int>(basis.cols());
}

}  // namespace frep

#include "frep/transporter.hpp"

#include <cmath>

#include "frep/lambda_norm.hpp"

namespace frep {

const char* to_string(NormSource s) {
  return s == NormSource::rep_norm ? "rep-norm" : "lambda-interval-upper";
}

NormSource norm_source_from_string(std::string_view s) {
  if (s == "rep-norm" || s == "rep_norm") return NormSource::rep_norm;
  if (s == "lambda-interval-upper" || s == "lambda_upper") return NormSource::lambda_upper;
  throw InputError("unknown norm source \"" + std::string(s) +
                   "\" (expected rep-norm or lambda-interval-upper)");
}

namespace {

double selected_norm(const Representation& rep, const GroupAlgebraElement& f, NormSource source) {
  if (source == NormSource::rep_norm) return operator_norm(evaluate(rep, f));
  return std::min(haagerup_upper(f), norms(f).l1);
}

}  // namespace

TransporterSolution solve_transporter(const Representation& rep, const Vec& x_from, const Vec& x_to,
                                      int word_budget, double norm_cap, NormSource source) {
  const Eigen::Index d = rep.dim();
  if (x_from.size() != d || x_to.size() != d) throw InputError("transporter vectors must match the representation dimension");
  const double nx = x_from.norm();
  if (!(nx > 0.0)) throw InputError("transporter source vector must be nonzero");
  if (word_budget < 0) throw InputError("word budget must be nonnegative");
  if (!(norm_cap > 0.0)) throw InputError("norm cap must be positive");
  if (ball_size(rep.k(), word_budget) > kMaxTransporterWords)
    throw InputError("word budget " + std::to_string(word_budget) + " enumerates too many words");

  const std::vector<Word> words = enumerate_words(rep.k(), word_budget);
  const std::vector<Mat> images = word_images(rep, word_budget);
  const Eigen::Index n = static_cast<Eigen::Index>(words.size());

  // Operator target, then a minimum-norm correction of the vector residual.
  // The correction is a full least-squares solve over the same column space,
  // so the final residual is the least-squares minimum.
  Mat ops(d * d, n);
  Mat cols(d, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    ops.col(i) = Eigen::Map<const Vec>(images[static_cast<std::size_t>(i)].data(), d * d);
    cols.col(i) = images[static_cast<std::size_t>(i)] * x_from;
  }
  const Mat target = x_to * x_from.adjoint() / (nx * nx);
  Vec coeffs = ops.completeOrthogonalDecomposition().solve(Eigen::Map<const Vec>(target.data(), d * d));
  const Vec remainder = x_to - cols * coeffs;
  coeffs += cols.completeOrthogonalDecomposition().solve(remainder);

  GroupAlgebraElement::Terms terms;
  for (Eigen::Index i = 0; i < n; ++i)
    if (coeffs(i) != Complex{0.0, 0.0}) terms.emplace(words[static_cast<std::size_t>(i)], coeffs(i));

  TransporterSolution sol;
  sol.f = GroupAlgebraElement(rep.k(), std::move(terms));
  sol.word_budget = word_budget;
  sol.norm_cap = norm_cap;
  sol.norm_source = source;

  double measured = selected_norm(rep, sol.f, source);
  if (measured > norm_cap) {
    sol.f *= Complex(norm_cap / measured, 0.0);
    sol.capped = true;
    measured = selected_norm(rep, sol.f, source);
  }
  const Mat image = evaluate(rep, sol.f);
  sol.residual = (image * x_from - x_to).norm();
  sol.op_norm_on_rep = operator_norm(image);
  sol.capped_norm = measured;
  return sol;
}

}  // namespace frep

#pragma once

#include <limits>

#include "frep/group_algebra.hpp"
#include "frep/representation.hpp"

namespace frep {

/// Which norm a transporter's cap is applied to.
///  rep_norm:     ||rep(f)||_op on the representation being solved on.
///  lambda_upper: min(haagerup_upper(f), ||f||_1), a certified bound on ||lambda(f)||.
enum class NormSource { rep_norm, lambda_upper };

const char* to_string(NormSource s);
NormSource norm_source_from_string(std::string_view s);

struct TransporterSolution {
  GroupAlgebraElement f{2};
  double residual = 0.0;
  double op_norm_on_rep = 0.0;
  /// Value of the selected norm after any rescaling.
  double capped_norm = 0.0;
  double norm_cap = std::numeric_limits<double>::infinity();
  NormSource norm_source = NormSource::rep_norm;
  int word_budget = 0;
  bool capped = false;
};

/// Upper limit on the number of words the solver will enumerate.
constexpr std::size_t kMaxTransporterWords = 400000;

/// Minimizes ||rep(f) x_from - x_to|| over f supported on words of length
/// <= word_budget. Among the minimizers, the one closest to realizing the
/// rank-one map x_to x_from^* / |x_from|^2 is taken, which keeps ||rep(f)||
/// near |x_to|/|x_from|. If the selected norm exceeds norm_cap, f is scaled
/// down onto the cap and the residual recomputed.
TransporterSolution solve_transporter(const Representation& rep, const Vec& x_from, const Vec& x_to,
                                      int word_budget,
                                      double norm_cap = std::numeric_limits<double>::infinity(),
                                      NormSource source = NormSource::rep_norm);

}  // namespace frep

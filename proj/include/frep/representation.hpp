#pragma once

#include <cstdint>
#include <vector>

#include "frep/group_algebra.hpp"
#include "frep/types.hpp"
#include "frep/word.hpp"

namespace frep {

constexpr double kDefaultUnitarityTol = 1e-10;

/// Unitary representation of the free group on k generators, given by one
/// unitary d x d matrix per generator. Immutable after construction.
class Representation {
public:
  /// Validates shapes and unitarity: ||U^*U - I||_F <= tol * d for each generator.
  static Representation make(int k, std::vector<Mat> gens, double tol = kDefaultUnitarityTol);

  int k() const { return k_; }
  int dim() const { return d_; }
  const std::vector<Mat>& generators() const { return gens_; }
  const Mat& generator(int i) const { return gens_[static_cast<std::size_t>(i)]; }
  /// Image of a single letter (generator or its inverse).
  const Mat& letter_image(Letter c) const {
    return is_inverse_letter(c) ? inverses_[generator_of(c)] : gens_[generator_of(c)];
  }

private:
  Representation(int k, std::vector<Mat> gens);
  int k_ = 0;
  int d_ = 0;
  std::vector<Mat> gens_;
  std::vector<Mat> inverses_;
};

Representation make_representation(int k, std::vector<Mat> gens, double tol = kDefaultUnitarityTol);

/// Trivial representation: every generator acts as the d x d identity.
Representation trivial_rep(int k, int d);

/// The 2-dim representation a -> X = [[0,1],[1,0]], b -> Z = [[1,0],[0,-1]]
/// (further generators, if any, act trivially).
Representation pauli_rep(int k = 2);

Mat evaluate_word(const Representation& rep, const Word& w);

/// pi(f) = sum_w f(w) pi(w)
Mat evaluate(const Representation& rep, const GroupAlgebraElement& f);

/// Generators s -> rep1(s) (x) rep2(s).
Representation tensor(const Representation& a, const Representation& b);

/// Generators s -> diag(rep1(s), rep2(s)).
Representation direct_sum(const Representation& a, const Representation& b);

/// rep (+) Id on a (total_dim - d)-dimensional complement; rep acts on the
/// leading d coordinates.
Representation extend_with_identity(const Representation& rep, int total_dim);

/// k independent Haar unitaries of size d, deterministic in seed.
Representation random_haar_rep(int k, int d, std::uint64_t seed);

/// Word images pi(w) for all reduced words of length <= max_len, in the order
/// of enumerate_words(k, max_len).
std::vector<Mat> word_images(const Representation& rep, int max_len);

/// Input digest (FNV-1a over k, d and the generator entries).
std::uint64_t digest(const Representation& rep);
std::string digest_hex(std::uint64_t h);

}  // namespace frep

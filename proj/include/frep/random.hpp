#pragma once

#include <cstdint>
#include <random>

#include "frep/types.hpp"

namespace frep {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream seed for trial `index` under `master`. Results depend
/// only on (master, index), never on scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Matrix of i.i.d. standard complex Gaussians (E|z|^2 = 1).
template <typename Scalar = Complex>
MatrixX<Scalar> ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double s = 1.0 / std::sqrt(2.0);
  MatrixX<Scalar> a(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      a(i, j) = Scalar(s * re, s * im);
    }
  return a;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with each column of Q
/// rescaled by the phase of the matching diagonal entry of R.
template <typename Scalar = Complex>
MatrixX<Scalar> haar_unitary(Eigen::Index d, Rng& rng) {
  MatrixX<Scalar> z = ginibre<Scalar>(d, d, rng);
  Eigen::HouseholderQR<MatrixX<Scalar>> qr(z);
  MatrixX<Scalar> q = qr.householderQ() * MatrixX<Scalar>::Identity(d, d);
  const MatrixX<Scalar>& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace frep

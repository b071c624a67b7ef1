#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace frep {

using Complex = std::complex<double>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Mat = MatrixX<Complex>;
using Vec = VectorX<Complex>;

/// Malformed or out-of-contract input (bad JSON, unreduced word, non-unitary matrix, ...).
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical guarantee that must hold by construction was violated.
class AssertionFailure : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Kronecker product A (x) B.
template <typename DerivedA, typename DerivedB>
MatrixX<typename DerivedA::Scalar> kron(const Eigen::MatrixBase<DerivedA>& a,
                                        const Eigen::MatrixBase<DerivedB>& b) {
  MatrixX<typename DerivedA::Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Block-diagonal matrix diag(A, B).
template <typename DerivedA, typename DerivedB>
MatrixX<typename DerivedA::Scalar> block_diag(const Eigen::MatrixBase<DerivedA>& a,
                                              const Eigen::MatrixBase<DerivedB>& b) {
  MatrixX<typename DerivedA::Scalar> out =
      MatrixX<typename DerivedA::Scalar>::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

/// ||U^* U - I||_F
template <typename Derived>
double unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  using S = typename Derived::Scalar;
  return (u.adjoint() * u - MatrixX<S>::Identity(u.cols(), u.cols())).norm();
}

/// Largest singular value.
template <typename Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<MatrixX<typename Derived::Scalar>> svd(a);
  return svd.singularValues()(0);
}

/// Closest unitary in Frobenius norm (polar factor W V^* of A = W S V^*).
template <typename Derived>
MatrixX<typename Derived::Scalar> polar_unitary(const Eigen::MatrixBase<Derived>& a) {
  Eigen::JacobiSVD<MatrixX<typename Derived::Scalar>> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace frep

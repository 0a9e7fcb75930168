#pragma once

#include <Eigen/Dense>

#include <stdexcept>

#include "structsparse/types.hpp"

namespace structsparse {

namespace detail {
template <typename Scalar>
void check_restriction(const MatrixX<Scalar>& X, Index vec_len,
                       const SupportSet& F, const char* where) {
  if (vec_len != X.rows())
    throw std::invalid_argument(std::string(where) +
                                ": vector length does not match rows of X");
  if (!F.empty() && F.max_index() >= X.cols())
    throw std::invalid_argument(std::string(where) +
                                ": support index out of range");
}
}  // namespace detail

template <typename Scalar>
MatrixX<Scalar> gather_columns(const MatrixX<Scalar>& X, const SupportSet& F) {
  MatrixX<Scalar> out(X.rows(), F.size());
  for (Index i = 0; i < F.size(); ++i) out.col(i) = X.col(F[i]);
  return out;
}

/// Least squares restricted to a support set: the returned vector has
/// support inside F and minimizes ||X b - y||_2 over such vectors.
/// QR is used on well-conditioned column subsets; when the R diagonal is
/// numerically singular (threshold 1e-12 relative) or the subset is wider
/// than tall, a ridge-stabilized normal-equation solve (ridge 1e-10 * trace
/// of the Gram matrix) stands in for the minimum-norm minimizer.
template <typename Scalar>
VectorX<Scalar> restricted_least_squares(const MatrixX<Scalar>& X,
                                         const VectorX<Scalar>& y,
                                         const SupportSet& F) {
  detail::check_restriction(X, y.size(), F, "restricted_least_squares");
  VectorX<Scalar> beta = VectorX<Scalar>::Zero(X.cols());
  if (F.empty()) return beta;

  const MatrixX<Scalar> Xf = gather_columns(X, F);
  VectorX<Scalar> b;
  bool solved = false;
  if (Xf.rows() >= Xf.cols()) {
    Eigen::HouseholderQR<MatrixX<Scalar>> qr(Xf);
    const auto rdiag = qr.matrixQR().diagonal().head(Xf.cols()).cwiseAbs();
    const Scalar dmax = rdiag.maxCoeff();
    if (dmax > Scalar(0) && rdiag.minCoeff() > Scalar(1e-12) * dmax) {
      b = qr.solve(y);
      solved = true;
    }
  }
  if (!solved) {
    MatrixX<Scalar> gram = Xf.transpose() * Xf;
    Scalar ridge = Scalar(1e-10) * gram.trace();
    if (!(ridge > Scalar(0))) ridge = Scalar(1e-30);
    gram.diagonal().array() += ridge;
    b = Eigen::LDLT<MatrixX<Scalar>>(gram).solve(Xf.transpose() * y);
  }
  for (Index i = 0; i < F.size(); ++i) beta[F[i]] = b[i];
  return beta;
}

/// Squared norm of the orthogonal projection of r onto span(X_S).
/// Rank-deficient column subsets are handled with pseudo-inverse semantics.
template <typename Scalar>
Scalar projection_gain(const MatrixX<Scalar>& X, const VectorX<Scalar>& r,
                       const SupportSet& S) {
  detail::check_restriction(X, r.size(), S, "projection_gain");
  if (S.empty()) return Scalar(0);
  const MatrixX<Scalar> Xs = gather_columns(X, S);
  Eigen::CompleteOrthogonalDecomposition<MatrixX<Scalar>> cod(Xs);
  return (Xs * cod.solve(r)).squaredNorm();
}

/// ||X_S^T r||_2^2; agrees with projection_gain when the columns of X_S are
/// orthonormal.
template <typename Scalar>
Scalar correlation_gain(const MatrixX<Scalar>& X, const VectorX<Scalar>& r,
                        const SupportSet& S) {
  detail::check_restriction(X, r.size(), S, "correlation_gain");
  Scalar g(0);
  for (Index j : S) {
    const Scalar c = X.col(j).dot(r);
    g += c * c;
  }
  return g;
}

}  // namespace structsparse

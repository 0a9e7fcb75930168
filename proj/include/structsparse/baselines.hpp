#pragma once

#include <vector>

#include "structsparse/types.hpp"

namespace structsparse {

struct PathPoint {
  double lambda = 0.0;  // regularization for lasso paths, step index for omp
  Vector coefficients;
  double residual_norm = 0.0;
  bool converged = true;
};

/// Orthogonal matching pursuit: k_max steps of most-correlated-column
/// selection with a full least-squares refit each step.
std::vector<PathPoint> omp(const Matrix& X, const Vector& y, Index k_max);

/// Smallest lambda with an all-zero lasso solution: max_j |x_j^T y| / n.
double lasso_lambda_max(const Matrix& X, const Vector& y);
double group_lasso_lambda_max(const Matrix& X, const Vector& y,
                              const std::vector<SupportSet>& groups);

/// Geometric grid from lambda_max down to min_ratio * lambda_max.
std::vector<double> make_lambda_grid(double lambda_max, Index points = 100,
                                     double min_ratio = 1e-4);

/// Coordinate-descent lasso along a decreasing lambda grid with warm starts.
/// Objective: (1/(2n)) ||X b - y||^2 + lambda ||b||_1, so the KKT system is
/// |x_j^T (y - X b)| <= n lambda on inactive coordinates and equality with
/// sign on active ones. Points that miss the sweep cap are flagged.
std::vector<PathPoint> lasso_path(const Matrix& X, const Vector& y,
                                  const std::vector<double>& lambdas);

/// Block coordinate descent with group soft-thresholding over disjoint
/// groups covering all features (unit group weights).
std::vector<PathPoint> group_lasso_path(const Matrix& X, const Vector& y,
                                        const std::vector<SupportSet>& groups,
                                        const std::vector<double>& lambdas);

struct SelectionCriterion {
  enum class Kind { min_true_error, target_sparsity, min_residual_at_sparsity };
  Kind kind = Kind::target_sparsity;
  Vector truth;       // min_true_error only
  Index sparsity = 0;

  static SelectionCriterion min_true_error(Vector truth);
  static SelectionCriterion target_sparsity(Index k);
  static SelectionCriterion min_residual_at_sparsity(Index k);
};

/// Deterministic pick of one path point; first index wins ties.
Index select_model(const std::vector<PathPoint>& path, const SelectionCriterion& by);

}  // namespace structsparse

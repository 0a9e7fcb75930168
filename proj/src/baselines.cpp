#include "structsparse/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "structsparse/linalg.hpp"

namespace structsparse {

namespace {
constexpr Index kMaxSweeps = 1000;

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}
}  // namespace

std::vector<PathPoint> omp(const Matrix& X, const Vector& y, Index k_max) {
  if (k_max < 1 || k_max > std::min(X.rows(), X.cols()))
    throw std::invalid_argument("omp: k_max must be in [1, min(n, p)]");
  std::vector<PathPoint> path;
  std::vector<Index> selected;
  Vector r = y;
  for (Index k = 1; k <= k_max; ++k) {
    Index best = -1;
    double best_corr = 0.0;
    for (Index j = 0; j < X.cols(); ++j) {
      if (std::find(selected.begin(), selected.end(), j) != selected.end())
        continue;
      const double corr = std::abs(X.col(j).dot(r));
      if (corr > best_corr) {
        best_corr = corr;
        best = j;
      }
    }
    if (best < 0) break;  // residual orthogonal to every remaining column
    selected.push_back(best);
    PathPoint point;
    point.lambda = static_cast<double>(k);
    point.coefficients =
        restricted_least_squares(X, y, SupportSet(selected));
    r = y - X * point.coefficients;
    point.residual_norm = r.norm();
    path.push_back(std::move(point));
    if (path.back().residual_norm <= 1e-14 * y.norm()) break;
  }
  return path;
}

double lasso_lambda_max(const Matrix& X, const Vector& y) {
  return (X.transpose() * y).cwiseAbs().maxCoeff() /
         static_cast<double>(X.rows());
}

double group_lasso_lambda_max(const Matrix& X, const Vector& y,
                              const std::vector<SupportSet>& groups) {
  double lam = 0.0;
  for (const SupportSet& g : groups) {
    double sq = 0.0;
    for (Index j : g) {
      const double c = X.col(j).dot(y);
      sq += c * c;
    }
    lam = std::max(lam, std::sqrt(sq));
  }
  return lam / static_cast<double>(X.rows());
}

std::vector<double> make_lambda_grid(double lambda_max, Index points,
                                     double min_ratio) {
  if (lambda_max <= 0.0 || points < 1 || min_ratio <= 0.0 || min_ratio >= 1.0)
    throw std::invalid_argument("make_lambda_grid: bad arguments");
  std::vector<double> grid;
  if (points == 1) return {lambda_max};
  const double step = std::log(min_ratio) / static_cast<double>(points - 1);
  for (Index i = 0; i < points; ++i)
    grid.push_back(lambda_max * std::exp(step * static_cast<double>(i)));
  return grid;
}

std::vector<PathPoint> lasso_path(const Matrix& X, const Vector& y,
                                  const std::vector<double>& lambdas) {
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    if (lambdas[i] <= 0.0 || (i > 0 && lambdas[i] >= lambdas[i - 1]))
      throw std::invalid_argument("lasso_path: grid must be positive, strictly decreasing");
  const Index n = X.rows();
  const Index p = X.cols();
  Vector col_sq(p);
  for (Index j = 0; j < p; ++j) col_sq[j] = X.col(j).squaredNorm();

  std::vector<PathPoint> path;
  Vector beta = Vector::Zero(p);
  Vector r = y;  // y - X beta, kept in sync with coordinate updates
  const double scale = std::max(1.0, y.norm());
  const double tol = 1e-8 * scale;
  for (double lambda : lambdas) {
    const double threshold = static_cast<double>(n) * lambda;
    auto sweep_over = [&](const std::vector<Index>& coords) {
      double max_change = 0.0;
      for (Index j : coords) {
        if (col_sq[j] == 0.0) continue;
        const double rho = X.col(j).dot(r) + col_sq[j] * beta[j];
        const double updated = soft_threshold(rho, threshold) / col_sq[j];
        const double change = updated - beta[j];
        if (change != 0.0) {
          r -= change * X.col(j);
          beta[j] = updated;
          max_change = std::max(max_change, std::abs(change));
        }
      }
      return max_change;
    };
    std::vector<Index> all(static_cast<std::size_t>(p));
    std::iota(all.begin(), all.end(), Index{0});
    // Full sweeps let coordinates enter; cheap active-set sweeps do the
    // bulk of the convergence in between.
    bool converged = false;
    Index sweeps = 0;
    while (!converged && sweeps < kMaxSweeps) {
      const double full_change = sweep_over(all);
      ++sweeps;
      std::vector<Index> active;
      for (Index j = 0; j < p; ++j)
        if (beta[j] != 0.0) active.push_back(j);
      while (sweeps < kMaxSweeps) {
        const double change = sweep_over(active);
        ++sweeps;
        if (change <= tol) break;
      }
      converged = full_change <= tol;
    }
    PathPoint point;
    point.lambda = lambda;
    point.coefficients = beta;
    r = y - X * beta;  // refresh to keep the stored norm drift-free
    point.residual_norm = r.norm();
    point.converged = converged;
    path.push_back(std::move(point));
  }
  return path;
}

std::vector<PathPoint> group_lasso_path(const Matrix& X, const Vector& y,
                                        const std::vector<SupportSet>& groups,
                                        const std::vector<double>& lambdas) {
  const Index n = X.rows();
  const Index p = X.cols();
  {
    std::vector<char> seen(static_cast<std::size_t>(p), 0);
    for (const SupportSet& g : groups)
      for (Index j : g) {
        if (j >= p || seen[static_cast<std::size_t>(j)])
          throw std::invalid_argument("group_lasso_path: groups must be disjoint and in range");
        seen[static_cast<std::size_t>(j)] = 1;
      }
    for (char c : seen)
      if (!c) throw std::invalid_argument("group_lasso_path: groups must cover all features");
  }
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    if (lambdas[i] <= 0.0 || (i > 0 && lambdas[i] >= lambdas[i - 1]))
      throw std::invalid_argument("group_lasso_path: grid must be positive, strictly decreasing");

  // Per-group data and Lipschitz constants of the smooth part.
  std::vector<Matrix> Xg;
  std::vector<double> lip;
  for (const SupportSet& g : groups) {
    Matrix cols = gather_columns(X, g);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(cols.transpose() * cols,
                                              Eigen::EigenvaluesOnly);
    lip.push_back(std::max(eig.eigenvalues().maxCoeff(), 1e-12));
    Xg.push_back(std::move(cols));
  }

  std::vector<PathPoint> path;
  Vector beta = Vector::Zero(p);
  Vector r = y;
  const double scale = std::max(1.0, y.norm());
  const double tol = 1e-8 * scale;
  for (double lambda : lambdas) {
    // One proximal-gradient step on a group block; returns the sup change.
    auto step_group = [&](std::size_t gi) {
      const SupportSet& g = groups[gi];
      Vector bg(g.size());
      for (Index i = 0; i < g.size(); ++i) bg[i] = beta[g[i]];
      const Vector z = bg + Xg[gi].transpose() * r / lip[gi];
      const double shrink = static_cast<double>(n) * lambda / lip[gi];
      const double znorm = z.norm();
      Vector updated = znorm > shrink ? Vector((1.0 - shrink / znorm) * z)
                                      : Vector(Vector::Zero(g.size()));
      const Vector delta = updated - bg;
      const double step = delta.cwiseAbs().maxCoeff();
      if (step > 0.0) {
        r -= Xg[gi] * delta;
        for (Index i = 0; i < g.size(); ++i) beta[g[i]] = updated[i];
      }
      return step;
    };
    auto sweep_over = [&](const std::vector<std::size_t>& which) {
      double max_change = 0.0;
      for (std::size_t gi : which) max_change = std::max(max_change, step_group(gi));
      return max_change;
    };
    std::vector<std::size_t> all(groups.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    bool converged = false;
    Index sweeps = 0;
    while (!converged && sweeps < kMaxSweeps) {
      const double full_change = sweep_over(all);
      ++sweeps;
      std::vector<std::size_t> active;
      for (std::size_t gi = 0; gi < groups.size(); ++gi)
        for (Index i = 0; i < groups[gi].size(); ++i)
          if (beta[groups[gi][i]] != 0.0) {
            active.push_back(gi);
            break;
          }
      while (sweeps < kMaxSweeps) {
        const double change = sweep_over(active);
        ++sweeps;
        if (change <= tol) break;
      }
      converged = full_change <= tol;
    }
    PathPoint point;
    point.lambda = lambda;
    point.coefficients = beta;
    r = y - X * beta;
    point.residual_norm = r.norm();
    point.converged = converged;
    path.push_back(std::move(point));
  }
  return path;
}

SelectionCriterion SelectionCriterion::min_true_error(Vector truth) {
  SelectionCriterion c;
  c.kind = Kind::min_true_error;
  c.truth = std::move(truth);
  return c;
}

SelectionCriterion SelectionCriterion::target_sparsity(Index k) {
  SelectionCriterion c;
  c.kind = Kind::target_sparsity;
  c.sparsity = k;
  return c;
}

SelectionCriterion SelectionCriterion::min_residual_at_sparsity(Index k) {
  SelectionCriterion c;
  c.kind = Kind::min_residual_at_sparsity;
  c.sparsity = k;
  return c;
}

Index select_model(const std::vector<PathPoint>& path, const SelectionCriterion& by) {
  if (path.empty()) throw std::invalid_argument("select_model: empty path");
  switch (by.kind) {
    case SelectionCriterion::Kind::min_true_error: {
      Index best = 0;
      double best_err = (path[0].coefficients - by.truth).norm();
      for (Index i = 1; i < static_cast<Index>(path.size()); ++i) {
        const double err = (path[static_cast<std::size_t>(i)].coefficients - by.truth).norm();
        if (err < best_err) {
          best_err = err;
          best = i;
        }
      }
      return best;
    }
    case SelectionCriterion::Kind::target_sparsity: {
      Index best = 0;
      Index best_gap = std::numeric_limits<Index>::max();
      for (Index i = 0; i < static_cast<Index>(path.size()); ++i) {
        const Index nnz = support_of(path[static_cast<std::size_t>(i)].coefficients).size();
        const Index gap = std::abs(nnz - by.sparsity);
        if (gap < best_gap) {
          best_gap = gap;
          best = i;
        }
      }
      return best;
    }
    case SelectionCriterion::Kind::min_residual_at_sparsity: {
      Index best = -1;
      double best_res = std::numeric_limits<double>::infinity();
      for (Index i = 0; i < static_cast<Index>(path.size()); ++i) {
        const auto& pt = path[static_cast<std::size_t>(i)];
        if (support_of(pt.coefficients).size() > by.sparsity) continue;
        if (pt.residual_norm < best_res) {
          best_res = pt.residual_norm;
          best = i;
        }
      }
      if (best < 0)
        throw std::invalid_argument("select_model: no point within the sparsity budget");
      return best;
    }
  }
  throw std::logic_error("select_model: unknown criterion");
}

}  // namespace structsparse

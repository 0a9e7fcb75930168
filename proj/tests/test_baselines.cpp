#include <doctest.h>

#include <Eigen/QR>
#include <cmath>

#include "oracles.hpp"
#include "structsparse/baselines.hpp"
#include "structsparse/blocks.hpp"
#include "structsparse/signals.hpp"

using namespace structsparse;

namespace {

Matrix orthonormal_columns(Index n, Index p, std::uint64_t seed) {
  const Matrix A = oracles::random_matrix(n, p, seed);
  Eigen::HouseholderQR<Matrix> qr(A);
  return qr.householderQ() * Matrix::Identity(n, p);
}

double soft(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

double lasso_kkt_violation(const Matrix& X, const Vector& y, const PathPoint& pt) {
  const double n = static_cast<double>(X.rows());
  const Vector r = y - X * pt.coefficients;
  double worst = 0.0;
  for (Index j = 0; j < X.cols(); ++j) {
    const double corr = X.col(j).dot(r);
    const double target = n * pt.lambda;
    if (pt.coefficients[j] == 0.0)
      worst = std::max(worst, std::abs(corr) - target);
    else
      worst = std::max(worst,
                       std::abs(corr - target * (pt.coefficients[j] > 0 ? 1.0 : -1.0)));
  }
  return worst;
}

}  // namespace

TEST_CASE("omp on an orthonormal design picks the true features in order") {
  const Matrix X = orthonormal_columns(12, 8, 1);
  const Vector y = 3.0 * X.col(2) + 1.0 * X.col(5);
  const auto path = omp(X, y, 4);
  REQUIRE(path.size() >= 2);
  CHECK(support_of(path[0].coefficients) == SupportSet{2});
  CHECK(support_of(path[1].coefficients) == SupportSet{2, 5});
  CHECK(path[1].residual_norm <= 1e-10);
}

TEST_CASE("omp residuals decrease strictly until exact fit") {
  const Matrix X = gen_design_gaussian(20, 12, 3);
  const Vector y = oracles::random_vector(20, 4);
  const auto path = omp(X, y, 10);
  double prev = y.norm();
  for (const PathPoint& pt : path) {
    CHECK(pt.residual_norm < prev);
    prev = pt.residual_norm;
    // Residual norm consistent with the coefficients.
    CHECK(std::abs((y - X * pt.coefficients).norm() - pt.residual_norm) <= 1e-8);
  }
}

TEST_CASE("omp validates k_max") {
  const Matrix X = gen_design_gaussian(6, 10, 5);
  CHECK_THROWS_AS(omp(X, Vector::Zero(6), 7), std::invalid_argument);
}

TEST_CASE("lasso: the null-model threshold") {
  const Matrix X = gen_design_gaussian(15, 10, 11);
  const Vector y = oracles::random_vector(15, 12);
  const double lmax = lasso_lambda_max(X, y);
  const auto path = lasso_path(X, y, {lmax * 1.0000001, lmax * 0.9});
  CHECK(support_of(path[0].coefficients).empty());
  CHECK_FALSE(support_of(path[1].coefficients).empty());
}

TEST_CASE("lasso matches the closed-form soft threshold on orthonormal designs") {
  const Index n = 16, p = 6;
  const Matrix X = orthonormal_columns(n, p, 21);
  const Vector y = oracles::random_vector(n, 22);
  const double lmax = lasso_lambda_max(X, y);
  const std::vector<double> grid = {lmax * 0.8, lmax * 0.4, lmax * 0.1};
  const auto path = lasso_path(X, y, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (Index j = 0; j < p; ++j) {
      const double expected = soft(X.col(j).dot(y), n * grid[i]);
      CHECK(path[i].coefficients[j] == doctest::Approx(expected).epsilon(1e-6));
    }
  }
}

TEST_CASE("lasso KKT conditions hold along the path") {
  const Matrix X = gen_design_gaussian(24, 16, 31);
  const Vector truth = gen_1d_strong(16, 4, 2, 32);
  const Vector y = add_noise(X * truth, {0.01, 33});
  const auto grid = make_lambda_grid(lasso_lambda_max(X, y), 25);
  const auto path = lasso_path(X, y, grid);
  const double scale = static_cast<double>(X.rows()) * lasso_lambda_max(X, y);
  for (const PathPoint& pt : path) {
    REQUIRE(pt.converged);
    CHECK(lasso_kkt_violation(X, y, pt) <= 1e-6 * scale);
  }
}

TEST_CASE("group lasso: huge lambda zeroes the model, path stays consistent") {
  const Matrix X = gen_design_gaussian(20, 12, 41);
  const Vector y = oracles::random_vector(20, 42);
  const auto groups = consecutive_groups(12, 3);
  const double lmax = group_lasso_lambda_max(X, y, groups);
  const auto path = group_lasso_path(X, y, groups, {lmax * 1.001, lmax * 0.5});
  CHECK(support_of(path[0].coefficients).empty());
  const Vector r = y - X * path[1].coefficients;
  CHECK(std::abs(r.norm() - path[1].residual_norm) <= 1e-8);
  // Group KKT: active groups satisfy X_g^T r = n lambda b_g / ||b_g||.
  const double n = 20.0;
  for (const SupportSet& g : groups) {
    Vector bg(g.size());
    Vector corr(g.size());
    for (Index i = 0; i < g.size(); ++i) {
      bg[i] = path[1].coefficients[g[i]];
      corr[i] = X.col(g[i]).dot(r);
    }
    if (bg.norm() == 0.0)
      CHECK(corr.norm() <= n * path[1].lambda + 1e-6 * n * lmax);
    else
      CHECK((corr - n * path[1].lambda * bg / bg.norm()).norm() <=
            1e-6 * n * lmax);
  }
}

TEST_CASE("group lasso with singleton groups coincides with lasso") {
  const Matrix X = gen_design_gaussian(18, 10, 51);
  const Vector truth = gen_1d_strong(10, 3, 1, 52);
  const Vector y = add_noise(X * truth, {0.05, 53});
  const auto grid = make_lambda_grid(lasso_lambda_max(X, y), 20);
  const auto lasso = lasso_path(X, y, grid);
  const auto grouped = group_lasso_path(X, y, consecutive_groups(10, 1), grid);
  REQUIRE(lasso.size() == grouped.size());
  for (std::size_t i = 0; i < lasso.size(); ++i)
    CHECK((lasso[i].coefficients - grouped[i].coefficients).cwiseAbs().maxCoeff() <=
          1e-6);
}

TEST_CASE("lambda grids are validated") {
  const Matrix X = gen_design_gaussian(10, 5, 61);
  const Vector y = oracles::random_vector(10, 62);
  CHECK_THROWS_AS(lasso_path(X, y, {0.5, 0.7}), std::invalid_argument);
  CHECK_THROWS_AS(lasso_path(X, y, {0.5, -0.1}), std::invalid_argument);
  const auto grid = make_lambda_grid(2.0, 100);
  CHECK(grid.size() == 100);
  CHECK(grid.front() == doctest::Approx(2.0));
  CHECK(grid.back() == doctest::Approx(2.0 * 1e-4));
}

TEST_CASE("model selection criteria") {
  const Matrix X = orthonormal_columns(12, 8, 71);
  const Vector truth = 2.0 * Vector::Unit(8, 1) + Vector::Unit(8, 6);
  const Vector y = X * truth;
  const auto path = omp(X, y, 5);

  SUBCASE("single-point path returns that point") {
    const std::vector<PathPoint> single{path.front()};
    CHECK(select_model(single, SelectionCriterion::target_sparsity(3)) == 0);
  }
  SUBCASE("target sparsity lands on the matching step") {
    const Index pick = select_model(path, SelectionCriterion::target_sparsity(2));
    CHECK(support_of(path[static_cast<std::size_t>(pick)].coefficients).size() == 2);
  }
  SUBCASE("min true error agrees with an independent scan") {
    const Index pick =
        select_model(path, SelectionCriterion::min_true_error(truth));
    Index best = 0;
    double best_err = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < static_cast<Index>(path.size()); ++i) {
      const double err =
          (path[static_cast<std::size_t>(i)].coefficients - truth).norm();
      if (err < best_err) {
        best_err = err;
        best = i;
      }
    }
    CHECK(pick == best);
  }
  SUBCASE("empty path throws") {
    CHECK_THROWS_AS(select_model({}, SelectionCriterion::target_sparsity(1)),
                    std::invalid_argument);
  }
}

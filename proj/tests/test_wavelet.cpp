#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "structsparse/coding.hpp"
#include "structsparse/wavelet.hpp"

using namespace structsparse;

TEST_CASE("constant images concentrate on the single low-pass coefficient") {
  const Matrix image = Matrix::Constant(8, 8, 2.5);
  const Matrix coeffs = haar2_forward(image, 3);
  CHECK(coeffs(0, 0) == doctest::Approx(2.5 * 8.0));  // c * sqrt(h * w)
  CHECK(coeffs.cwiseAbs().sum() == doctest::Approx(std::abs(coeffs(0, 0))));
}

TEST_CASE("energy preservation on random images") {
  const Matrix image = oracles::random_matrix(16, 16, 1);
  const Matrix coeffs = haar2_forward(image, 4);
  CHECK(std::abs(coeffs.squaredNorm() - image.squaredNorm()) <=
        1e-10 * image.squaredNorm());
}

TEST_CASE("forward transform matches the dense matrix oracle") {
  const int levels = 3;
  SUBCASE("impulse input") {
    Matrix image = Matrix::Zero(8, 8);
    image(3, 5) = 1.0;
    const Matrix expected = oracles::haar2_dense(image, levels);
    CHECK((haar2_forward(image, levels) - expected).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("random input") {
    const Matrix image = oracles::random_matrix(8, 8, 2);
    const Matrix expected = oracles::haar2_dense(image, levels);
    CHECK((haar2_forward(image, levels) - expected).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("round trips are exact to 1e-10") {
  const Matrix image = oracles::random_matrix(32, 32, 3);
  const int levels = max_haar_levels(32, 32);
  const Matrix back = haar2_inverse(haar2_forward(image, levels), levels);
  CHECK((back - image).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("zeroing the detail bands block-averages the image") {
  const Matrix image = oracles::random_matrix(4, 4, 4);
  Matrix coeffs = haar2_forward(image, 1);
  coeffs.topRightCorner(2, 2).setZero();
  coeffs.bottomLeftCorner(2, 2).setZero();
  coeffs.bottomRightCorner(2, 2).setZero();
  const Matrix smoothed = haar2_inverse(coeffs, 1);
  for (Index r = 0; r < 4; r += 2)
    for (Index c = 0; c < 4; c += 2) {
      const double mean = image.block(r, c, 2, 2).mean();
      CHECK(smoothed.block(r, c, 2, 2).cwiseAbs().maxCoeff() ==
            doctest::Approx(std::abs(mean)).epsilon(1e-10));
      CHECK(smoothed(r, c) == doctest::Approx(mean).epsilon(1e-10));
    }
}

TEST_CASE("top-k reconstruction error equals the tail energy") {
  const Matrix image = oracles::random_matrix(16, 16, 5);
  const int levels = 4;
  const Matrix coeffs = haar2_forward(image, levels);
  const Vector flat = flatten_row_major(coeffs);
  std::vector<Index> order(static_cast<std::size_t>(flat.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&flat](Index a, Index b) {
    return std::abs(flat[a]) > std::abs(flat[b]);
  });
  const Index keep = 40;
  Vector kept = Vector::Zero(flat.size());
  double tail = 0.0;
  for (Index i = 0; i < flat.size(); ++i) {
    if (i < keep) kept[order[static_cast<std::size_t>(i)]] = flat[order[static_cast<std::size_t>(i)]];
    else tail += flat[order[static_cast<std::size_t>(i)]] * flat[order[static_cast<std::size_t>(i)]];
  }
  const Matrix approx = haar2_inverse(unflatten_row_major(kept, 16, 16), levels);
  CHECK((approx - image).squaredNorm() == doctest::Approx(tail).epsilon(1e-9));
}

TEST_CASE("bad dimensions are rejected") {
  CHECK_THROWS_AS(haar2_forward(Matrix(Matrix::Zero(6, 8)), 1), std::invalid_argument);
  CHECK_THROWS_AS(haar2_forward(Matrix(Matrix::Zero(8, 8)), 4), std::invalid_argument);
  CHECK(max_haar_levels(8, 32) == 3);
}

TEST_CASE("wavelet tree: quad-tree structure on a 4x4 grid") {
  const Tree tree = wavelet_tree(4, 4, 2);
  CHECK_NOTHROW(tree.validate());
  // One root: the low-pass cell.
  Index roots = 0;
  for (Index v = 0; v < 16; ++v)
    if (tree.is_root(v)) ++roots;
  CHECK(roots == 1);
  CHECK(tree.is_root(0));
  // The three coarsest detail cells hang off the root.
  CHECK(tree.parent[1] == 0);   // (0,1) horizontal detail
  CHECK(tree.parent[4] == 0);   // (1,0) vertical detail
  CHECK(tree.parent[5] == 0);   // (1,1) diagonal detail
  // Each coarsest detail cell has exactly 4 children in its own band.
  std::vector<Index> child_count(16, 0);
  for (Index v = 0; v < 16; ++v)
    if (!tree.is_root(v)) ++child_count[static_cast<std::size_t>(tree.parent[v])];
  CHECK(child_count[1] == 4);
  CHECK(child_count[4] == 4);
  CHECK(child_count[5] == 4);
  // Finest horizontal band (rows 0-1, cols 2-3) points at cell (0,1).
  CHECK(tree.parent[2] == 1);
  CHECK(tree.parent[3] == 1);
  CHECK(tree.parent[6] == 1);
  CHECK(tree.parent[7] == 1);
}

TEST_CASE("every chain ends at a coarsest-band coefficient") {
  const Tree tree = wavelet_tree(8, 8, 3);
  for (Index v = 0; v < 64; ++v) {
    Index u = v;
    Index steps = 0;
    while (!tree.is_root(u)) {
      u = tree.parent[static_cast<std::size_t>(u)];
      REQUIRE(++steps <= 64);
    }
    CHECK(u == 0);  // 3 levels on 8x8 leave a single low-pass cell
  }
}

TEST_CASE("zero-tree-closed supports have dimension-free tree coding length") {
  const Index h = 8, w = 8;
  const Tree tree = wavelet_tree(h, w, 3);
  const TreeCoding scheme(tree, h * w);
  Rng rng(9);
  constexpr double log2_3 = 1.584962500721156;
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Index> seeds;
    for (int i = 0; i < 4; ++i) seeds.push_back(rng.uniform_int(0, h * w - 1));
    const SupportSet closed = zero_tree_closure(tree, SupportSet(seeds), h * w);
    // Root-closed: the path union is the set itself, so at most |F| internal
    // nodes are counted and the length is O(|F|) with no log p term.
    CHECK(scheme.code_length(closed) <=
          log2_3 * static_cast<double>(closed.size()) + 1e-9);
    // Oracle count: internal nodes of the set = members with a child inside.
    std::vector<char> has_child(static_cast<std::size_t>(h * w), 0);
    for (Index v = 0; v < h * w; ++v)
      if (!tree.is_root(v)) has_child[static_cast<std::size_t>(tree.parent[v])] = 1;
    Index internal = 0;
    for (Index v : closed)
      if (has_child[static_cast<std::size_t>(v)]) ++internal;
    CHECK(scheme.code_length(closed) ==
          doctest::Approx(log2_3 * static_cast<double>(internal)));
  }
}

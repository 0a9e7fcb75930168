#pragma once

#include <cmath>
#include <stdexcept>

#include "structsparse/tree.hpp"
#include "structsparse/types.hpp"

namespace structsparse {

inline bool is_power_of_two(Index v) { return v > 0 && (v & (v - 1)) == 0; }

inline int max_haar_levels(Index h, Index w) {
  int levels = 0;
  Index m = std::min(h, w);
  while (m > 1 && m % 2 == 0) {
    m /= 2;
    ++levels;
  }
  return levels;
}

namespace detail {
template <typename Scalar>
void check_haar_args(Index h, Index w, int levels) {
  if (!is_power_of_two(h) || !is_power_of_two(w))
    throw std::invalid_argument("haar2: dimensions must be powers of two");
  if (levels < 1 || levels > max_haar_levels(h, w))
    throw std::invalid_argument("haar2: invalid level count");
}
}  // namespace detail

/// Orthonormal 2D Haar analysis in the standard quadrant layout: after each
/// level the running low-pass block sits in the top-left corner, with the
/// horizontal / vertical / diagonal detail bands beside it. Energy is
/// preserved exactly (up to round-off).
template <typename Scalar>
MatrixX<Scalar> haar2_forward(const MatrixX<Scalar>& image, int levels) {
  detail::check_haar_args<Scalar>(image.rows(), image.cols(), levels);
  const Scalar inv_sqrt2 = Scalar(1) / std::sqrt(Scalar(2));
  MatrixX<Scalar> out = image;
  Index h = image.rows();
  Index w = image.cols();
  for (int level = 0; level < levels; ++level) {
    // Rows.
    MatrixX<Scalar> tmp = out.topLeftCorner(h, w);
    for (Index i = 0; i < h; ++i)
      for (Index j = 0; j < w / 2; ++j) {
        const Scalar a = tmp(i, 2 * j);
        const Scalar b = tmp(i, 2 * j + 1);
        out(i, j) = (a + b) * inv_sqrt2;
        out(i, w / 2 + j) = (a - b) * inv_sqrt2;
      }
    // Columns.
    tmp = out.topLeftCorner(h, w);
    for (Index j = 0; j < w; ++j)
      for (Index i = 0; i < h / 2; ++i) {
        const Scalar a = tmp(2 * i, j);
        const Scalar b = tmp(2 * i + 1, j);
        out(i, j) = (a + b) * inv_sqrt2;
        out(h / 2 + i, j) = (a - b) * inv_sqrt2;
      }
    h /= 2;
    w /= 2;
  }
  return out;
}

template <typename Scalar>
MatrixX<Scalar> haar2_inverse(const MatrixX<Scalar>& coeffs, int levels) {
  detail::check_haar_args<Scalar>(coeffs.rows(), coeffs.cols(), levels);
  const Scalar inv_sqrt2 = Scalar(1) / std::sqrt(Scalar(2));
  MatrixX<Scalar> out = coeffs;
  for (int level = levels - 1; level >= 0; --level) {
    const Index h = coeffs.rows() >> level;
    const Index w = coeffs.cols() >> level;
    // Columns.
    MatrixX<Scalar> tmp = out.topLeftCorner(h, w);
    for (Index j = 0; j < w; ++j)
      for (Index i = 0; i < h / 2; ++i) {
        const Scalar s = tmp(i, j);
        const Scalar d = tmp(h / 2 + i, j);
        out(2 * i, j) = (s + d) * inv_sqrt2;
        out(2 * i + 1, j) = (s - d) * inv_sqrt2;
      }
    // Rows.
    tmp = out.topLeftCorner(h, w);
    for (Index i = 0; i < h; ++i)
      for (Index j = 0; j < w / 2; ++j) {
        const Scalar s = tmp(i, j);
        const Scalar d = tmp(i, w / 2 + j);
        out(i, 2 * j) = (s + d) * inv_sqrt2;
        out(i, 2 * j + 1) = (s - d) * inv_sqrt2;
      }
  }
  return out;
}

/// Parent forest over the h x w coefficient grid (row-major indexing,
/// index = r * w + c). Coarsest low-pass coefficients are roots; each
/// coarsest detail coefficient hangs off the low-pass cell at its band-local
/// position; every finer detail coefficient points at the same-orientation
/// coefficient one level up covering the same spatial region (four children
/// per parent).
Tree wavelet_tree(Index h, Index w, int levels);

/// Row-major flattening used when wavelet grids feed vector-based solvers.
Vector flatten_row_major(const Matrix& grid);
Matrix unflatten_row_major(const Vector& flat, Index h, Index w);

}  // namespace structsparse

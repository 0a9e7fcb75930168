#include "structsparse/wavelet.hpp"

#include <stdexcept>

namespace structsparse {

Tree wavelet_tree(Index h, Index w, int levels) {
  detail::check_haar_args<double>(h, w, levels);
  Tree tree;
  tree.parent.assign(static_cast<std::size_t>(h * w), -1);
  auto at = [w](Index r, Index c) { return r * w + c; };

  // Bands at level `lv` (lv = levels is the coarsest) have extent
  // (h >> lv) x (w >> lv).
  for (int lv = levels; lv >= 1; --lv) {
    const Index bh = h >> lv;
    const Index bw = w >> lv;
    // Band origins: horizontal detail (right of low-pass), vertical detail
    // (below), diagonal detail.
    const std::pair<Index, Index> origins[3] = {
        {Index{0}, bw}, {bh, Index{0}}, {bh, bw}};
    for (const auto& [orow, ocol] : origins)
      for (Index r = 0; r < bh; ++r)
        for (Index c = 0; c < bw; ++c) {
          const Index node = at(orow + r, ocol + c);
          if (lv == levels) {
            // Coarsest detail hangs off the low-pass cell in the same
            // band-local position.
            tree.parent[static_cast<std::size_t>(node)] = at(r, c);
          } else {
            const Index ph = bh / 2;   // parent band extent
            const Index pw = bw / 2;
            const Index prow = orow == 0 ? Index{0} : ph;
            const Index pcol = ocol == 0 ? Index{0} : pw;
            tree.parent[static_cast<std::size_t>(node)] =
                at(prow + r / 2, pcol + c / 2);
          }
        }
  }
  return tree;
}

Vector flatten_row_major(const Matrix& grid) {
  Vector flat(grid.size());
  Index i = 0;
  for (Index r = 0; r < grid.rows(); ++r)
    for (Index c = 0; c < grid.cols(); ++c) flat[i++] = grid(r, c);
  return flat;
}

Matrix unflatten_row_major(const Vector& flat, Index h, Index w) {
  if (flat.size() != h * w)
    throw std::invalid_argument("unflatten_row_major: size mismatch");
  Matrix grid(h, w);
  Index i = 0;
  for (Index r = 0; r < h; ++r)
    for (Index c = 0; c < w; ++c) grid(r, c) = flat[i++];
  return grid;
}

}  // namespace structsparse

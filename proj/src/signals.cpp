#include "structsparse/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "structsparse/rng.hpp"
#include "structsparse/wavelet.hpp"

namespace structsparse {

namespace {
constexpr int kPlacementAttempts = 100;
}

Matrix gen_design_gaussian_raw(Index n, Index p, std::uint64_t seed) {
  if (n < 1 || p < 1) throw std::invalid_argument("gen_design_gaussian: bad dims");
  Rng rng(seed);
  Matrix X(n, p);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < p; ++j) X(i, j) = rng.normal();
  return X;
}

Matrix gen_design_gaussian(Index n, Index p, std::uint64_t seed) {
  Matrix X = gen_design_gaussian_raw(n, p, seed);
  for (Index i = 0; i < n; ++i) X.row(i) /= X.row(i).norm();
  return X;
}

Vector gen_1d_strong(Index p, Index k, Index g, std::uint64_t seed) {
  if (p < 1 || k < 1 || g < 1 || k > p || g > k)
    throw std::invalid_argument("gen_1d_strong: bad arguments");
  // Split k into g near-equal run lengths.
  std::vector<Index> lengths(static_cast<std::size_t>(g), k / g);
  for (Index i = 0; i < k % g; ++i) ++lengths[static_cast<std::size_t>(i)];
  if (k + g - 1 > p)
    throw std::invalid_argument("gen_1d_strong: runs cannot fit with gaps");

  Rng rng(seed);
  std::vector<std::pair<Index, Index>> runs;  // (start, length)
  bool placed = false;
  for (int attempt = 0; attempt < kPlacementAttempts && !placed; ++attempt) {
    runs.clear();
    for (Index len : lengths)
      runs.emplace_back(rng.uniform_int(0, p - len), len);
    std::sort(runs.begin(), runs.end());
    placed = true;
    for (std::size_t i = 1; i < runs.size(); ++i) {
      // A one-cell gap keeps adjacent runs from merging.
      if (runs[i].first <= runs[i - 1].first + runs[i - 1].second) {
        placed = false;
        break;
      }
    }
  }
  if (!placed) throw std::runtime_error("gen_1d_strong: placement failed");

  Vector beta = Vector::Zero(p);
  for (const auto& [start, len] : runs)
    for (Index j = start; j < start + len; ++j)
      beta[j] = rng.uniform() < 0.5 ? -1.0 : 1.0;
  return beta;
}

WeakSignal gen_1d_weak(Index p, Index g, double decay_exponent, std::uint64_t seed) {
  if (p < 1 || g < 1 || g > p || decay_exponent <= 0.0)
    throw std::invalid_argument("gen_1d_weak: bad arguments");
  Rng rng(seed);

  // Centers with pairwise separation >= p / (2g), so the energetic entries
  // form g distinct regions.
  const Index min_sep = std::max<Index>(1, p / (2 * g));
  std::vector<Index> centers;
  bool placed = false;
  for (int attempt = 0; attempt < kPlacementAttempts && !placed; ++attempt) {
    centers.clear();
    for (Index i = 0; i < g; ++i) centers.push_back(rng.uniform_int(0, p - 1));
    std::sort(centers.begin(), centers.end());
    placed = true;
    for (std::size_t i = 1; i < centers.size(); ++i)
      if (centers[i] - centers[i - 1] < min_sep) {
        placed = false;
        break;
      }
  }
  if (!placed) throw std::runtime_error("gen_1d_weak: center placement failed");

  // Rank entries by distance to the nearest center; magnitudes hold a flat
  // head and then decay polynomially, with shape constants calibrated for
  // k_eff(95%) ~ 32 at p=512, g=2.
  std::vector<Index> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), Index{0});
  std::vector<Index> dist(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) {
    Index d = p;
    for (Index c : centers) d = std::min(d, std::abs(j - c));
    dist[static_cast<std::size_t>(j)] = d;
  }
  std::stable_sort(order.begin(), order.end(), [&dist](Index a, Index b) {
    return dist[static_cast<std::size_t>(a)] < dist[static_cast<std::size_t>(b)];
  });

  Vector beta(p);
  for (Index rank = 0; rank < p; ++rank) {
    const double core = 1.0 / (1.0 + static_cast<double>(rank) / kWeakCoreWidth);
    const double shifted =
        std::max(0.0, static_cast<double>(rank) - kWeakTailStart) /
        kWeakTailWidth;
    beta[order[static_cast<std::size_t>(rank)]] =
        core * std::pow(1.0 + shifted, -decay_exponent);
  }
  for (Index j = 0; j < p; ++j)
    if (rng.uniform() < 0.5) beta[j] = -beta[j];

  return {beta, effective_sparsity(beta, 0.95)};
}

Vector gen_2d_blobs(Index h, Index w, Index g, Index blob_size, std::uint64_t seed) {
  if (h < 1 || w < 1 || g < 1 || blob_size < 1 || g * blob_size > h * w)
    throw std::invalid_argument("gen_2d_blobs: bad arguments");
  const Index p = h * w;
  Rng rng(seed);

  auto neighbors = [h, w](Index cell, std::vector<Index>& out) {
    out.clear();
    const Index r = cell / w;
    const Index c = cell % w;
    if (r > 0) out.push_back(cell - w);
    if (r + 1 < h) out.push_back(cell + w);
    if (c > 0) out.push_back(cell - 1);
    if (c + 1 < w) out.push_back(cell + 1);
  };

  for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
    std::vector<char> occupied(static_cast<std::size_t>(p), 0);
    std::vector<char> blocked(static_cast<std::size_t>(p), 0);  // blobs + their halo
    std::vector<std::vector<Index>> blobs;
    std::vector<Index> nbrs;
    bool ok = true;
    for (Index b = 0; b < g && ok; ++b) {
      std::vector<Index> cells;
      const Index start = rng.uniform_int(0, p - 1);
      if (blocked[static_cast<std::size_t>(start)]) {
        ok = false;
        break;
      }
      cells.push_back(start);
      std::vector<Index> frontier;
      auto extend_frontier = [&](Index cell) {
        neighbors(cell, nbrs);
        for (Index u : nbrs)
          if (!blocked[static_cast<std::size_t>(u)] &&
              std::find(cells.begin(), cells.end(), u) == cells.end())
            frontier.push_back(u);
      };
      extend_frontier(start);
      while (static_cast<Index>(cells.size()) < blob_size) {
        // Drop frontier cells grabbed since they were queued.
        std::erase_if(frontier, [&cells](Index u) {
          return std::find(cells.begin(), cells.end(), u) != cells.end();
        });
        if (frontier.empty()) {
          ok = false;
          break;
        }
        const Index pick = rng.uniform_int(0, static_cast<Index>(frontier.size()) - 1);
        const Index cell = frontier[static_cast<std::size_t>(pick)];
        frontier.erase(frontier.begin() + pick);
        cells.push_back(cell);
        extend_frontier(cell);
      }
      if (!ok) break;
      for (Index cell : cells) {
        occupied[static_cast<std::size_t>(cell)] = 1;
        blocked[static_cast<std::size_t>(cell)] = 1;
        neighbors(cell, nbrs);
        for (Index u : nbrs) blocked[static_cast<std::size_t>(u)] = 1;
      }
      blobs.push_back(std::move(cells));
    }
    if (!ok) continue;

    Vector beta = Vector::Zero(p);
    for (const auto& cells : blobs) {
      const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
      for (Index cell : cells) beta[cell] = sign * rng.uniform(0.5, 1.5);
    }
    return beta;
  }
  throw std::runtime_error("gen_2d_blobs: placement failed");
}

Matrix gen_2d_piecewise(Index h, Index w, std::uint64_t seed, bool with_gradient) {
  if (h < 2 || w < 2 || (h & (h - 1)) != 0 || (w & (w - 1)) != 0)
    throw std::invalid_argument("gen_2d_piecewise: dims must be powers of two >= 2");

  for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
    Rng rng(derive_seed(seed, "piecewise", static_cast<std::uint64_t>(attempt)));
    Matrix image = Matrix::Constant(h, w, rng.uniform(0.2, 0.8));
    const Index rect_count = 4 + rng.uniform_int(0, 3);
    for (Index i = 0; i < rect_count; ++i) {
      const Index rh = rng.uniform_int(h / 8 + 1, std::max<Index>(h / 8 + 1, h / 2));
      const Index rw = rng.uniform_int(w / 8 + 1, std::max<Index>(w / 8 + 1, w / 2));
      const Index r0 = rng.uniform_int(0, h - rh);
      const Index c0 = rng.uniform_int(0, w - rw);
      image.block(r0, c0, rh, rw).setConstant(rng.uniform(-1.0, 1.0));
    }
    if (with_gradient) {
      const double ax = rng.uniform(-0.15, 0.15);
      const double ay = rng.uniform(-0.15, 0.15);
      for (Index r = 0; r < h; ++r)
        for (Index c = 0; c < w; ++c)
          image(r, c) += ax * static_cast<double>(c) / static_cast<double>(w) +
                         ay * static_cast<double>(r) / static_cast<double>(h);
    }

    const Matrix coeffs = haar2_forward(image, max_haar_levels(h, w));
    const Index top = std::max<Index>(1, h * w / 10);
    std::vector<double> energy;
    energy.reserve(static_cast<std::size_t>(h * w));
    for (Index r = 0; r < h; ++r)
      for (Index c = 0; c < w; ++c) energy.push_back(coeffs(r, c) * coeffs(r, c));
    std::sort(energy.begin(), energy.end(), std::greater<double>());
    const double total = std::accumulate(energy.begin(), energy.end(), 0.0);
    const double head = std::accumulate(energy.begin(), energy.begin() + top, 0.0);
    if (head >= 0.95 * total) return image;
  }
  throw std::runtime_error("gen_2d_piecewise: could not reach target sparsity");
}

Vector add_noise(const Vector& clean, const NoiseConfig& cfg) {
  if (cfg.sigma < 0.0) throw std::invalid_argument("add_noise: negative sigma");
  if (cfg.sigma == 0.0) return clean;
  Rng rng(cfg.seed);
  Vector noisy = clean;
  for (Index i = 0; i < noisy.size(); ++i) noisy[i] += cfg.sigma * rng.normal();
  return noisy;
}

double recovery_error(const Vector& est, const Vector& truth) {
  if (est.size() != truth.size())
    throw std::invalid_argument("recovery_error: size mismatch");
  const double denom = truth.norm();
  if (denom == 0.0) throw std::invalid_argument("recovery_error: zero truth");
  return (est - truth).norm() / denom;
}

Index effective_sparsity(const Vector& beta, double energy_fraction) {
  return top_energy_support(beta, energy_fraction).size();
}

SupportSet top_energy_support(const Vector& beta, double energy_fraction) {
  if (energy_fraction <= 0.0 || energy_fraction > 1.0)
    throw std::invalid_argument("top_energy_support: fraction must be in (0,1]");
  std::vector<Index> order(static_cast<std::size_t>(beta.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&beta](Index a, Index b) {
    return std::abs(beta[a]) > std::abs(beta[b]);
  });
  const double target = energy_fraction * beta.squaredNorm();
  double cumulative = 0.0;
  std::vector<Index> idx;
  for (Index i : order) {
    if (cumulative >= target) break;
    cumulative += beta[i] * beta[i];
    idx.push_back(i);
  }
  return SupportSet(std::move(idx));
}

}  // namespace structsparse

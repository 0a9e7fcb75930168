#pragma once

#include <cstdint>

#include "structsparse/types.hpp"

namespace structsparse {

struct NoiseConfig {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

/// Gaussian design with rows normalized to unit length (the measurement
/// model used by the experiments).
Matrix gen_design_gaussian(Index n, Index p, std::uint64_t seed);

/// Raw iid N(0,1) design, no normalization (the random-projection model of
/// the RIP checks). Kept separate so the two are never mixed silently.
Matrix gen_design_gaussian_raw(Index n, Index p, std::uint64_t seed);

/// Strongly sparse 1D signal: g disjoint, non-adjacent runs totalling k
/// entries, values +-1. Placement retries up to 100 times before throwing.
Vector gen_1d_strong(Index p, Index k, Index g, std::uint64_t seed);

/// Shape constants of the gen_1d_weak magnitude law: a gently decaying
/// rank-power core carrying the region bumps, times a steeper far-tail
/// rolloff starting at kWeakTailStart. Calibrated together with the default
/// exponent 3.0 so that k_eff(95%) = 32 at p = 512, g = 2 (see the
/// calibration test in test_signals). A single pure power law cannot serve
/// here: with 95% of the energy pinned at rank 32, its tail ratio past the
/// pin is bounded below, and least squares on even the true top-m support
/// then floors near sqrt(tail(m) * (1 + m/(n-m))) > 0.3 at n = 48 for
/// every m; the rolloff removes that floor while keeping the decay gradual.
inline constexpr double kWeakCoreWidth = 10.0;
inline constexpr double kWeakTailStart = 38.0;
inline constexpr double kWeakTailWidth = 6.0;

struct WeakSignal {
  Vector coefficients;
  Index k_eff = 0;  // smallest count of top-magnitude entries with >= 95% energy
};

/// Weakly sparse 1D signal: every entry is nonzero; with rank ordered by
/// distance from g region centers, magnitudes follow
///   (1 + rank / kWeakCoreWidth)^-1
///     * (1 + max(0, rank - kWeakTailStart) / kWeakTailWidth)^-decay_exponent,
/// signs random.
WeakSignal gen_1d_weak(Index p, Index g, double decay_exponent, std::uint64_t seed);

/// g non-touching 4-connected blobs of exactly blob_size cells on an h x w
/// grid; cell magnitudes uniform in [0.5, 1.5], one random sign per blob.
/// Returns the image flattened row-major (index = r * w + c).
Vector gen_2d_blobs(Index h, Index w, Index g, Index blob_size, std::uint64_t seed);

/// Piecewise-constant rectangles (plus an optional mild linear gradient)
/// whose full-depth Haar coefficients carry at least 95% of the energy in
/// the top 10% of entries; regenerates from derived seeds until that holds.
Matrix gen_2d_piecewise(Index h, Index w, std::uint64_t seed,
                        bool with_gradient = true);

Vector add_noise(const Vector& clean, const NoiseConfig& cfg);

/// ||est - truth||_2 / ||truth||_2; throws on zero truth.
double recovery_error(const Vector& est, const Vector& truth);

/// Smallest number of largest-magnitude entries holding at least
/// energy_fraction of ||beta||^2.
Index effective_sparsity(const Vector& beta, double energy_fraction);

/// The entries counted by effective_sparsity, as a support set. Ties are
/// broken toward lower indices.
SupportSet top_energy_support(const Vector& beta, double energy_fraction);

}  // namespace structsparse

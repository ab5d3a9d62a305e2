#pragma once

#include <cstddef>
#include <span>

#include "bsmooth/profiles.hpp"
#include "bsmooth/vectors.hpp"

namespace bsmooth {

/// (n_i + alpha_i) / (n + alpha). Throws AllZero if counts and pseudo-counts
/// are both empty.
ScoringVector dirichlet_posterior_mean(const CountsVector& n, std::span<const double> alpha);

struct SmoothingResult {
  ScoringVector posterior;
  double evidence_weight;   // w2 actually applied
  double evidence_entropy;  // H(y); NaN when the log is empty
  double alpha_scale;       // prior pseudo-count mass; 0 on the pass-through branches
};

/// Bin visits made by one bsmooth call; lets tests check the single-pass bound.
struct SmoothingTrace {
  std::size_t bin_visits = 0;
};

/// Entropy-weighted Dirichlet smoothing of the prior x with feedback counts n.
///
/// The evidence weight comes from the profile evaluated at H(n / |n|); the
/// prior is scaled to alpha = n * w1 / w2 pseudo-counts so the posterior mean
/// is exactly the convex combination w1 x + w2 y.
///
/// Conventions: an empty log returns x with w2 = 0; w2 = 0 returns x; w2 = 1
/// returns the relative frequencies.
SmoothingResult bsmooth(const ScoringVector& x, const CountsVector& n,
                        const WeightingProfile& profile, SmoothingTrace* trace = nullptr);

}  // namespace bsmooth

#include "bsmooth/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bsmooth/error.hpp"

namespace bsmooth {

ScoringVector dirichlet_posterior_mean(const CountsVector& n, std::span<const double> alpha) {
  require_same_size(n.size(), alpha.size(), "dirichlet_posterior_mean");
  double alpha_total = 0.0;
  for (double a : alpha) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw Error(ErrorCode::InvalidArgument, "pseudo-counts must be finite and >= 0");
    }
    alpha_total += a;
  }
  const double denom = static_cast<double>(n.total()) + alpha_total;
  if (!(denom > 0.0)) throw Error(ErrorCode::AllZero, "no counts and no pseudo-counts");

  std::vector<double> theta(n.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    theta[i] = (static_cast<double>(n[i]) + alpha[i]) / denom;
  }
  return ScoringVector::from_weights(theta);
}

SmoothingResult bsmooth(const ScoringVector& x, const CountsVector& n,
                        const WeightingProfile& profile, SmoothingTrace* trace) {
  require_same_size(x.size(), n.size(), "bsmooth");
  const std::size_t k = x.size();
  if (n.total() == 0) return {x, 0.0, std::numeric_limits<double>::quiet_NaN(), 0.0};

  // Entropy of the relative frequencies, accumulated straight from counts.
  const double total = static_cast<double>(n.total());
  std::vector<double> y(k);
  double h = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    y[i] = static_cast<double>(n[i]) / total;
    if (y[i] > 0.0) h -= y[i] * std::log(y[i]);
  }
  h = std::clamp(h / std::log(static_cast<double>(k)), 0.0, 1.0);
  if (trace) trace->bin_visits += k;

  const double w2 = profile.weight_of_evidence(h);
  const double w1 = 1.0 - w2;
  if (w2 <= 0.0) return {x, 0.0, h, 0.0};
  if (w1 <= 0.0) return {ScoringVector::from_weights(y), 1.0, h, 0.0};

  // The posterior mean (n_i + x_i alpha) / (n + alpha) with alpha = n w1 / w2,
  // divided through by n. Working per unit count keeps the result bit-identical
  // when every count is scaled by the same factor.
  const double ratio = w1 / w2;
  if (!std::isfinite(ratio)) return {x, w2, h, 0.0};
  std::vector<double> theta(k);
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    theta[i] = (y[i] + x[i] * ratio) / (1.0 + ratio);
    sum += theta[i];
  }
  for (double& t : theta) t /= sum;
  if (trace) trace->bin_visits += 2 * k;
  return {ScoringVector::from_weights(theta), w2, h, total * ratio};
}

}  // namespace bsmooth

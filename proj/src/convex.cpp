#include "bsmooth/convex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsmooth/error.hpp"

namespace bsmooth {

Weights::Weights(double prior, double evidence) : prior_(prior), evidence_(evidence) {
  if (!(prior >= 0.0) || !(evidence >= 0.0) || std::abs(prior + evidence - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "weights must be nonnegative and sum to 1 (got " +
                                                std::to_string(prior) + ", " +
                                                std::to_string(evidence) + ")");
  }
}

ScoringVector combine(const ScoringVector& x, const ScoringVector& y, const Weights& w) {
  require_same_size(x.size(), y.size(), "combine");
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = w.prior() * x[i] + w.evidence() * y[i];
  return ScoringVector::from_weights(z);
}

std::vector<std::size_t> top_bins(const ScoringVector& x) {
  const double best = *std::max_element(x.begin(), x.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= best - kTieTolerance) out.push_back(i);
  }
  return out;
}

std::optional<DisagreedPair> disagreed_top_bins(const ScoringVector& x, const ScoringVector& y) {
  require_same_size(x.size(), y.size(), "disagreed_top_bins");
  const auto tx = top_bins(x);
  const auto ty = top_bins(y);
  auto contains = [](const std::vector<std::size_t>& s, std::size_t i) {
    return std::binary_search(s.begin(), s.end(), i);
  };
  // First pair in lexicographic (t, u) order. A pair with t == u can never
  // disagree, so every returned witness has t != u.
  for (std::size_t t : tx) {
    for (std::size_t u : ty) {
      if (!contains(ty, t) || !contains(tx, u)) return DisagreedPair{t, u};
    }
  }
  return std::nullopt;
}

Weights balance_pair(const ScoringVector& x, const ScoringVector& y, std::size_t t,
                     std::size_t u) {
  require_same_size(x.size(), y.size(), "balance_pair");
  if (t >= x.size() || u >= x.size()) {
    throw Error(ErrorCode::BadIndex, "bin index outside k=" + std::to_string(x.size()));
  }
  if (t == u) throw Error(ErrorCode::InvalidArgument, "balance_pair needs two distinct bins");

  // Solve w1 + w2 = 1 and dx w1 + dy w2 = 0.
  const double dx = x[t] - x[u];
  const double dy = y[t] - y[u];
  const bool dx_zero = std::abs(dx) <= kTieTolerance;
  const bool dy_zero = std::abs(dy) <= kTieTolerance;
  if (dx_zero && dy_zero) {
    throw Error(ErrorCode::NotUnique, "both sources already tie on the two bins");
  }
  if (dx_zero) return {1.0, 0.0};  // the prior alone ties them
  if (dy_zero) return {0.0, 1.0};  // the evidence alone ties them
  if ((dx > 0.0) == (dy > 0.0)) {
    throw Error(ErrorCode::NoSolution, "both sources rank the two bins the same way");
  }
  const double evidence = dx / (dx - dy);
  return {1.0 - evidence, evidence};
}

Weights balance_top(const ScoringVector& x, const ScoringVector& y) {
  const auto witness = disagreed_top_bins(x, y);
  if (!witness) throw Error(ErrorCode::NotDisagreed, "top bins of the two sources agree");
  return balance_pair(x, y, witness->t, witness->u);
}

}  // namespace bsmooth

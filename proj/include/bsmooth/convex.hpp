#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bsmooth/vectors.hpp"

namespace bsmooth {

// Differences below this are treated as exact ties when solving for balance.
inline constexpr double kTieTolerance = 1e-12;

/// Convex weights (w1 on the prior, w2 on the evidence), w1 + w2 = 1.
class Weights {
 public:
  Weights(double prior, double evidence);

  /// Weights with the given evidence share; the prior gets the rest.
  static Weights from_evidence(double evidence) { return {1.0 - evidence, evidence}; }

  double prior() const noexcept { return prior_; }
  double evidence() const noexcept { return evidence_; }

 private:
  double prior_;
  double evidence_;
};

/// z_i = w1 x_i + w2 y_i.
ScoringVector combine(const ScoringVector& x, const ScoringVector& y, const Weights& w);

/// Indices (0-based, ascending) of every maximal entry.
std::vector<std::size_t> top_bins(const ScoringVector& x);

struct DisagreedPair {
  std::size_t t;  // top bin of x
  std::size_t u;  // top bin of y
};

/// Returns a witness (t, u) when x and y have disagreed top bins.
///
/// The witness is the first pair (t, u) in lexicographic order, with t a top
/// bin of x and u a top bin of y, such that t is not a top bin of y or u is
/// not a top bin of x. Equal top-bin sets never disagree.
std::optional<DisagreedPair> disagreed_top_bins(const ScoringVector& x, const ScoringVector& y);

/// The unique weights that make bins t and u tie in combine(x, y, w).
///
/// Throws NoSolution when x and y order t, u the same way, and NotUnique when
/// both sources already tie on t, u.
Weights balance_pair(const ScoringVector& x, const ScoringVector& y, std::size_t t,
                     std::size_t u);

/// balance_pair on the disagreed_top_bins witness; throws NotDisagreed when
/// the top bins agree.
Weights balance_top(const ScoringVector& x, const ScoringVector& y);

}  // namespace bsmooth

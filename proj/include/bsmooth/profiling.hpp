#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bsmooth/profiles.hpp"
#include "bsmooth/vectors.hpp"

namespace bsmooth {

/// A point (entropy, target weight) the fitted profile should pass through.
struct ConstraintPoint {
  double entropy;
  double weight;

  friend bool operator==(const ConstraintPoint&, const ConstraintPoint&) = default;
};

/// Curve-fitting constraints. Always holds the anchors (0, 1) and (1, 0);
/// the profiling procedure adds the balance point and, when the threshold
/// curve has slope, the neighborhood point.
class ConstraintSet {
 public:
  explicit ConstraintSet(std::vector<ConstraintPoint> points);

  std::size_t size() const noexcept { return points_.size(); }
  std::span<const ConstraintPoint> points() const noexcept { return points_; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

 private:
  std::vector<ConstraintPoint> points_;
};

struct ProfilingConfig {
  double threshold = 0.75;  // D
  double delta = 0.05;
  std::vector<ScoringVector> population;

  /// Throws InvalidArgument unless 0 < D < 1, delta > 0 and D + delta <= 1.
  void validate() const;
};

struct CurveFit {
  double beta0;
  double beta;
  double lack_of_fit;  // sum of squared residuals over the constraint set
};

/// Two-bin vector (p, 1 - p), p <= 1/2, whose normalized entropy is target.
/// Bisection on [0, 1/2], where binary entropy is strictly increasing.
ScoringVector invert_binary_entropy(double target);

/// Mean normalized entropy over a population of intrinsic score vectors.
double mean_intrinsic_entropy(std::span<const ScoringVector> population);

/// Evidence weight that balances a two-bin prior against the two-bin
/// evidence vector of the given entropy: lambda / (1 + lambda) with
/// lambda = |x1 - x2| / |y1 - y2|.
double balance_threshold(const ScoringVector& prior2, double entropy_target);

/// Builds {(0,1), (1,0), (D, w(D)), (D + delta, w')} where w is
/// balance_threshold and w' = w(D) - delta / m for the finite-difference slope
/// m of w over the neighborhood. Falls back to the first three points when
/// the slope vanishes.
ConstraintSet build_constraints(const ProfilingConfig& cfg, const ScoringVector& prior2);

/// Least-squares logistic fit over beta0, beta in (0, 2000].
/// Throws NoConvergence when the best lack of fit exceeds 1e-2.
CurveFit fit_logit(const ConstraintSet& points);

/// Closed-form least squares for the affine model beta0 - beta x.
CurveFit fit_linear(const ConstraintSet& points);

/// Everything the offline procedure derives, for reporting.
struct ProfilingReport {
  double mean_entropy;
  ScoringVector prior2;
  double balance_weight;                     // w(D)
  std::optional<double> neighborhood_weight;  // w' when the 4th point exists
  ConstraintSet constraints;
  CurveFit fit;
  WeightingProfile profile;
};

ProfilingReport priors_profiling_report(const ProfilingConfig& cfg);

/// The fitted LOGIT profile, with D and delta recorded as provenance.
WeightingProfile priors_profiling(const ProfilingConfig& cfg);

}  // namespace bsmooth

#include "bsmooth/profiling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "bsmooth/convex.hpp"
#include "bsmooth/error.hpp"

namespace bsmooth {

namespace {

constexpr int kBisectionIterations = 200;
constexpr double kParamLower = 1e-9;
constexpr double kParamUpper = 2000.0;
constexpr int kStarts = 32;
constexpr double kRelTolerance = 1e-14;
constexpr double kMaxLackOfFit = 1e-2;

double binary_entropy(double p) {
  return normalized_entropy(ScoringVector::from_weights(std::array{p, 1.0 - p}));
}

bool is_anchor(const ConstraintPoint& p, double entropy, double weight) {
  return p.entropy == entropy && p.weight == weight;
}

double logit_lack_of_fit(const ConstraintSet& points, double beta0, double beta) {
  double sum = 0.0;
  for (const auto& p : points) {
    const double r = p.weight - logistic_curve(beta0, beta, p.entropy);
    sum += r * r;
  }
  return sum;
}

// Derivative-free minimization of a 2-parameter objective over a box, using
// Nelder-Mead in log-parameter space with restarts from the incumbent until
// a restart no longer improves the objective.
class BoxedSimplex {
 public:
  using Point = std::array<double, 2>;

  explicit BoxedSimplex(const ConstraintSet& points) : points_(points) {}

  Point clamp(Point p) const {
    const double lo = std::log(kParamLower);
    const double hi = std::log(kParamUpper);
    return {std::clamp(p[0], lo, hi), std::clamp(p[1], lo, hi)};
  }

  double value(const Point& p) const {
    return logit_lack_of_fit(points_, std::exp(p[0]), std::exp(p[1]));
  }

  std::pair<Point, double> minimize(Point start) const {
    Point best = clamp(start);
    double best_value = value(best);
    for (int restart = 0; restart < 50; ++restart) {
      const auto [p, v] = run(best, restart == 0 ? 0.5 : 0.05);
      const bool improved = v < best_value * (1.0 - kRelTolerance);
      if (v < best_value) {
        best = p;
        best_value = v;
      }
      if (!improved || best_value == 0.0) break;
    }
    return {best, best_value};
  }

 private:
  std::pair<Point, double> run(Point start, double step) const {
    std::array<Point, 3> simplex = {start, clamp({start[0] + step, start[1]}),
                                    clamp({start[0], start[1] + step})};
    std::array<double, 3> f = {value(simplex[0]), value(simplex[1]), value(simplex[2])};

    for (int iter = 0; iter < 4000; ++iter) {
      std::array<int, 3> order = {0, 1, 2};
      std::sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
      const int lo = order[0];
      const int mid = order[1];
      const int hi = order[2];

      const double spread = f[hi] - f[lo];
      if (spread <= kRelTolerance * std::abs(f[lo]) + 1e-300) break;

      const Point centroid = {(simplex[lo][0] + simplex[mid][0]) / 2.0,
                              (simplex[lo][1] + simplex[mid][1]) / 2.0};
      auto along = [&](double t) {
        return clamp({centroid[0] + t * (simplex[hi][0] - centroid[0]),
                      centroid[1] + t * (simplex[hi][1] - centroid[1])});
      };

      const Point reflected = along(-1.0);
      const double fr = value(reflected);
      if (fr < f[lo]) {
        const Point expanded = along(-2.0);
        const double fe = value(expanded);
        if (fe < fr) {
          simplex[hi] = expanded;
          f[hi] = fe;
        } else {
          simplex[hi] = reflected;
          f[hi] = fr;
        }
        continue;
      }
      if (fr < f[mid]) {
        simplex[hi] = reflected;
        f[hi] = fr;
        continue;
      }
      const bool outside = fr < f[hi];
      const Point contracted = along(outside ? -0.5 : 0.5);
      const double fc = value(contracted);
      if (fc < (outside ? fr : f[hi])) {
        simplex[hi] = contracted;
        f[hi] = fc;
        continue;
      }
      for (int i : {mid, hi}) {
        simplex[i] = clamp({simplex[lo][0] + 0.5 * (simplex[i][0] - simplex[lo][0]),
                            simplex[lo][1] + 0.5 * (simplex[i][1] - simplex[lo][1])});
        f[i] = value(simplex[i]);
      }
    }
    const auto best = std::min_element(f.begin(), f.end()) - f.begin();
    return {simplex[best], f[best]};
  }

  const ConstraintSet& points_;
};

}  // namespace

ConstraintSet::ConstraintSet(std::vector<ConstraintPoint> points) : points_(std::move(points)) {
  if (points_.size() < 2 || points_.size() > 4) {
    throw Error(ErrorCode::InvalidArgument, "constraint set needs 2 to 4 points, got " +
                                                std::to_string(points_.size()));
  }
  for (const auto& p : points_) {
    if (!(p.entropy >= 0.0 && p.entropy <= 1.0 && p.weight >= 0.0 && p.weight <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "constraint points must lie in [0,1]^2");
    }
  }
  const auto has = [&](double e, double w) {
    return std::any_of(points_.begin(), points_.end(),
                       [&](const ConstraintPoint& p) { return is_anchor(p, e, w); });
  };
  if (!has(0.0, 1.0) || !has(1.0, 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "constraint set must contain (0,1) and (1,0)");
  }
}

void ProfilingConfig::validate() const {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "ambiguity threshold D must lie in (0, 1)");
  }
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  if (threshold + delta > 1.0 + 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "D + delta must not exceed 1");
  }
}

ScoringVector invert_binary_entropy(double target) {
  if (!(target > 0.0 && target <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "target entropy must lie in (0, 1]");
  }
  if (target == 1.0) return ScoringVector{0.5, 0.5};

  double lo = 0.0;
  double hi = 0.5;
  for (int i = 0; i < kBisectionIterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (binary_entropy(mid) < target) lo = mid;
    else hi = mid;
  }
  const double p = std::abs(binary_entropy(lo) - target) <= std::abs(binary_entropy(hi) - target)
                       ? lo
                       : hi;
  return ScoringVector::from_weights(std::array{p, 1.0 - p});
}

double mean_intrinsic_entropy(std::span<const ScoringVector> population) {
  if (population.empty()) throw Error(ErrorCode::EmptyPopulation, "no intrinsic vectors");
  double sum = 0.0;
  for (const auto& v : population) sum += normalized_entropy(v);
  return sum / static_cast<double>(population.size());
}

double balance_threshold(const ScoringVector& prior2, double entropy_target) {
  if (prior2.size() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "balance_threshold needs a two-bin prior");
  }
  const ScoringVector evidence = invert_binary_entropy(entropy_target);
  const double dx = std::abs(prior2[0] - prior2[1]);
  const double dy = std::abs(evidence[0] - evidence[1]);
  if (dy <= kTieTolerance) {
    // Uniform evidence ties by itself: the limit of dx / (dx + dy) is 1.
    if (dx <= kTieTolerance) {
      throw Error(ErrorCode::Degenerate, "prior and evidence are both uniform");
    }
    return 1.0;
  }
  const double lambda = dx / dy;
  return lambda / (1.0 + lambda);
}

ConstraintSet build_constraints(const ProfilingConfig& cfg, const ScoringVector& prior2) {
  cfg.validate();
  const double at_threshold = balance_threshold(prior2, cfg.threshold);
  std::vector<ConstraintPoint> points = {{0.0, 1.0}, {1.0, 0.0}, {cfg.threshold, at_threshold}};

  const double neighbor = std::min(cfg.threshold + cfg.delta, 1.0);
  const double slope = std::abs(balance_threshold(prior2, neighbor) - at_threshold) / cfg.delta;
  if (slope > kTieTolerance) {
    const double w = std::clamp(at_threshold - cfg.delta / slope, 0.0, 1.0);
    points.push_back({neighbor, w});
  }
  return ConstraintSet(std::move(points));
}

CurveFit fit_logit(const ConstraintSet& points) {
  // Start slopes at beta0 / D, where D is the mean entropy of the interior
  // constraint points (0.5 when there are none).
  double interior = 0.0;
  int interior_count = 0;
  for (const auto& p : points) {
    if (p.entropy > 0.0 && p.entropy < 1.0) {
      interior += p.entropy;
      ++interior_count;
    }
  }
  const double pivot = interior_count ? interior / interior_count : 0.5;

  const BoxedSimplex solver(points);
  BoxedSimplex::Point best{};
  double best_value = INFINITY;
  for (int s = 0; s < kStarts; ++s) {
    const double beta0 = std::exp(std::log(kParamUpper) * s / (kStarts - 1));
    const double beta = std::min(beta0 / pivot, kParamUpper);
    const auto [p, v] = solver.minimize({std::log(beta0), std::log(beta)});
    if (v < best_value) {
      best = p;
      best_value = v;
    }
  }
  if (!(best_value <= kMaxLackOfFit)) {
    throw Error(ErrorCode::NoConvergence,
                "best logistic lack of fit " + std::to_string(best_value) + " exceeds 1e-2");
  }
  return {std::exp(best[0]), std::exp(best[1]), best_value};
}

CurveFit fit_linear(const ConstraintSet& points) {
  const double n = static_cast<double>(points.size());
  double sa = 0.0, sb = 0.0, saa = 0.0, sab = 0.0;
  for (const auto& p : points) {
    sa += p.entropy;
    sb += p.weight;
    saa += p.entropy * p.entropy;
    sab += p.entropy * p.weight;
  }
  // Regress weight = c + s * entropy; the profile is written beta0 - beta H.
  const double s = (n * sab - sa * sb) / (n * saa - sa * sa);
  const double c = (sb - s * sa) / n;
  double lack = 0.0;
  for (const auto& p : points) {
    const double r = p.weight - (c + s * p.entropy);
    lack += r * r;
  }
  return {c, -s, lack};
}

ProfilingReport priors_profiling_report(const ProfilingConfig& cfg) {
  cfg.validate();
  const double mean = mean_intrinsic_entropy(cfg.population);
  // A zero-entropy population inverts to the one-hot two-bin prior.
  ScoringVector prior2 = mean > 0.0 ? invert_binary_entropy(mean) : ScoringVector{0.0, 1.0};
  ConstraintSet constraints = build_constraints(cfg, prior2);
  const CurveFit fit = fit_logit(constraints);
  std::optional<double> neighborhood;
  if (constraints.size() == 4) neighborhood = constraints.points()[3].weight;
  const double balance = constraints.points()[2].weight;
  WeightingProfile profile =
      WeightingProfile::logit(fit.beta0, fit.beta).with_provenance(cfg.threshold, cfg.delta);
  return {mean, std::move(prior2), balance, neighborhood, std::move(constraints), fit,
          std::move(profile)};
}

WeightingProfile priors_profiling(const ProfilingConfig& cfg) {
  return priors_profiling_report(cfg).profile;
}

}  // namespace bsmooth

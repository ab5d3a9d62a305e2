#include "bsmooth/vectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bsmooth/error.hpp"

namespace bsmooth {

namespace {

// Sums this close to one are taken as already normalized, so that vectors
// written with 17 significant digits load back bit-for-bit.
constexpr double kAlreadyNormalized = 1e-12;

void renormalize(std::vector<double>& values, double sum) {
  if (std::abs(sum - 1.0) <= kAlreadyNormalized) return;
  for (double& v : values) v /= sum;
}

double entropy_in_nats(std::span<const double> v) {
  double h = 0.0;
  for (double p : v) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

}  // namespace

ScoringVector::ScoringVector(std::vector<double> values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "scoring vector needs k >= 2, got " +
                                                std::to_string(values.size()));
  }
  double sum = 0.0;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "scoring vector entries must be finite and >= 0");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw Error(ErrorCode::InvalidArgument,
                "scoring vector must sum to 1 (got " + std::to_string(sum) + ")");
  }
  renormalize(values, sum);
  values_ = std::move(values);
}

ScoringVector ScoringVector::from_weights(std::span<const double> weights) {
  if (weights.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "scoring vector needs k >= 2");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "weights must be finite and >= 0");
    }
    sum += w;
  }
  if (sum <= 0.0) throw Error(ErrorCode::ZeroTotal, "weights sum to zero");
  std::vector<double> out(weights.begin(), weights.end());
  renormalize(out, sum);
  return ScoringVector(std::move(out), Trusted{});
}

ScoringVector ScoringVector::uniform(std::size_t k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "scoring vector needs k >= 2");
  return ScoringVector(std::vector<double>(k, 1.0 / static_cast<double>(k)), Trusted{});
}

CountsVector::CountsVector(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw Error(ErrorCode::InvalidArgument, "counts vector is empty");
  total_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

CountsVector CountsVector::zeros(std::size_t k) {
  return CountsVector(std::vector<std::uint64_t>(k, 0));
}

CountsVector CountsVector::incremented(std::size_t i, std::uint64_t amount) const {
  if (i >= counts_.size()) {
    throw Error(ErrorCode::BadIndex, "bin " + std::to_string(i) + " outside k=" +
                                         std::to_string(counts_.size()));
  }
  auto copy = counts_;
  copy[i] += amount;
  return CountsVector(std::move(copy));
}

CountsVector CountsVector::scaled(std::uint64_t c) const {
  auto copy = counts_;
  for (auto& n : copy) n *= c;
  return CountsVector(std::move(copy));
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": k=" + std::to_string(a) +
                                                  " vs k=" + std::to_string(b));
  }
}

ScoringVector normalize_counts(const CountsVector& n) {
  if (n.total() == 0) throw Error(ErrorCode::ZeroTotal, "counts vector has no observations");
  std::vector<double> freq(n.size());
  const double total = static_cast<double>(n.total());
  for (std::size_t i = 0; i < n.size(); ++i) freq[i] = static_cast<double>(n[i]) / total;
  return ScoringVector::from_weights(freq);
}

double normalized_entropy(const ScoringVector& v) {
  const double h = entropy_in_nats(v.values()) / std::log(static_cast<double>(v.size()));
  // Rounding can push a uniform vector a hair above 1.
  return std::clamp(h, 0.0, 1.0);
}

double normalized_entropy(const ScoringVector& v, double base) {
  if (!(base > 0.0) || base == 1.0) {
    throw Error(ErrorCode::InvalidArgument, "logarithm base must be positive and != 1");
  }
  double h = 0.0;
  for (double p : v) {
    if (p > 0.0) h -= p * (std::log(p) / std::log(base));
  }
  const double hmax = std::log(static_cast<double>(v.size())) / std::log(base);
  return std::clamp(h / hmax, 0.0, 1.0);
}

}  // namespace bsmooth

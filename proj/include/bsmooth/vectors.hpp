#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace bsmooth {

// Entries of a ScoringVector must sum to one within this tolerance; inputs
// inside the band are renormalized, inputs outside it are rejected.
inline constexpr double kSumTolerance = 1e-9;

/// A probability vector over k >= 2 candidate interpretations.
///
/// Immutable once constructed. The constructor validates non-negativity and
/// the sum-to-one tolerance and renormalizes away floating drift.
class ScoringVector {
 public:
  explicit ScoringVector(std::vector<double> values);
  ScoringVector(std::initializer_list<double> values)
      : ScoringVector(std::vector<double>(values)) {}

  /// Rescales arbitrary nonnegative weights to sum to one. Used for inputs
  /// that are only proportional to a distribution (percent scores, etc).
  static ScoringVector from_weights(std::span<const double> weights);

  /// Uniform vector of size k.
  static ScoringVector uniform(std::size_t k);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const ScoringVector&, const ScoringVector&) = default;

 private:
  struct Trusted {};
  ScoringVector(std::vector<double> values, Trusted) : values_(std::move(values)) {}

  std::vector<double> values_;
};

/// Observed feedback counts, one per candidate interpretation.
class CountsVector {
 public:
  explicit CountsVector(std::vector<std::uint64_t> counts);
  CountsVector(std::initializer_list<std::uint64_t> counts)
      : CountsVector(std::vector<std::uint64_t>(counts)) {}

  /// All-zero counts of size k (a term nobody has given feedback on yet).
  static CountsVector zeros(std::size_t k);

  std::size_t size() const noexcept { return counts_.size(); }
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t operator[](std::size_t i) const { return counts_[i]; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }

  /// Returns a copy with `amount` added to bin i.
  CountsVector incremented(std::size_t i, std::uint64_t amount = 1) const;

  /// Returns a copy with every count multiplied by c.
  CountsVector scaled(std::uint64_t c) const;

  friend bool operator==(const CountsVector&, const CountsVector&) = default;

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Relative frequency n_i / n. Throws ZeroTotal when n = 0.
ScoringVector normalize_counts(const CountsVector& n);

/// Shannon entropy divided by log k, with 0 log 0 = 0. Lies in [0, 1].
double normalized_entropy(const ScoringVector& v);

/// Same quantity computed with an explicit logarithm base; the
/// normalization makes the result base-independent.
double normalized_entropy(const ScoringVector& v, double base);

/// Throws DimensionMismatch unless a and b have equal size.
void require_same_size(std::size_t a, std::size_t b, const char* what);

}  // namespace bsmooth

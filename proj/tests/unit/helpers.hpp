#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "bsmooth/error.hpp"
#include "bsmooth/vectors.hpp"

namespace testing {

// Generators for property tests. Fixed seeds keep failures reproducible.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double real(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }
  std::uint64_t count(std::uint64_t max) {
    return std::uniform_int_distribution<std::uint64_t>(0, max)(engine_);
  }

  /// Random scoring vector; some entries are zeroed to reach the simplex faces.
  bsmooth::ScoringVector scoring(std::size_t k) {
    std::vector<double> w(k);
    for (auto& v : w) v = real() < 0.15 ? 0.0 : -std::log(real(1e-12, 1.0));
    if (std::all_of(w.begin(), w.end(), [](double v) { return v == 0.0; })) w[index(k)] = 1.0;
    return bsmooth::ScoringVector::from_weights(w);
  }

  bsmooth::CountsVector counts(std::size_t k, std::uint64_t max, bool nonempty = true) {
    std::vector<std::uint64_t> c(k);
    for (auto& v : c) v = count(max);
    if (nonempty && std::all_of(c.begin(), c.end(), [](auto v) { return v == 0; })) {
      c[index(k)] = 1;
    }
    return bsmooth::CountsVector(c);
  }

 private:
  std::mt19937_64 engine_;
};

/// Runs fn and returns the code of the bsmooth::Error it throws.
template <class Fn>
bsmooth::ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const bsmooth::Error& e) {
    return e.code();
  }
  FAIL("expected a bsmooth::Error");
  return bsmooth::ErrorCode::InvalidArgument;
}

/// Entropy written out from the definition, independently of the library.
inline double reference_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h += v * std::log2(1.0 / v);
  }
  return h / std::log2(static_cast<double>(p.size()));
}

}  // namespace testing

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>

#include "bsmooth/logstore.hpp"
#include "bsmooth/vectors.hpp"

namespace bsmooth {

/// Seedable generator with portable sampling.
///
/// Raw bits come from std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. The standard distributions are implementation-defined, so
/// integers are drawn by rejection and reals from the top 53 bits instead;
/// the same seed yields the same draws on any conforming toolchain.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for one term: the seed is mixed with a hash of the id.
  static Rng for_term(std::uint64_t seed, std::string_view term);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on {0, ..., bound - 1}.
  std::uint64_t below(std::uint64_t bound);
  /// Index drawn with the given probabilities.
  std::size_t categorical(const ScoringVector& p);

 private:
  std::mt19937_64 engine_;
};

/// Description recorded in generated logs, e.g. "mt19937_64 seed=7".
std::string generator_tag(std::uint64_t seed);

/// One term's user population.
struct SessionModel {
  double abandonment = 0.6;  // P(A); recorded, not used to drop sessions
  double laziness = 0.05;    // P(L)
  ScoringVector preference = ScoringVector::uniform(2);
  std::size_t default_option = 0;
  std::uint64_t sessions = 10;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Per session: with probability `laziness` the default is logged, otherwise
/// an option is drawn from `preference`.
CountsVector simulate_implicit(const SessionModel& model);
CountsVector simulate_implicit(const SessionModel& model, Rng& rng);

/// Each bin uniform on {0, ..., 10}; an all-zero draw is redrawn.
CountsVector simulate_random(std::size_t k, std::uint64_t seed);
CountsVector simulate_random(std::size_t k, Rng& rng);

/// Branch masses of the session probability tree.
struct SessionTree {
  double abandon_satisfied;  // P(A and not L) = a (1 - l)
  double abandon_lazy;       // P(A and L)     = a l
  double interact;           // P(not A)       = 1 - a
};

SessionTree session_tree(double abandonment, double laziness);

struct LazinessEstimate {
  std::map<std::string, double> per_term;  // implicit rate - explicit rate
  double mean;
  double stdev;  // sample standard deviation; 0 for a single term
};

/// Laziness per term as the excess of the implicit default-acceptance rate
/// over the explicit default-selection rate.
LazinessEstimate estimate_laziness(const std::map<std::string, double>& explicit_rates,
                                   const std::map<std::string, double>& implicit_rates);

/// Random log for every catalog term, one stream per term.
FeedbackLog simulate_random_log(const TypeCatalog& catalog, std::uint64_t seed);

/// Implicit log for every catalog term. `preferences` and `defaults` must
/// cover every term; each term gets its own stream from (seed, term).
FeedbackLog simulate_implicit_log(const TypeCatalog& catalog,
                                  const std::map<std::string, ScoringVector>& preferences,
                                  const std::map<std::string, std::size_t>& defaults,
                                  double abandonment, double laziness, std::uint64_t sessions,
                                  std::uint64_t seed);

/// Fraction of a term's counts that landed on the given option.
double option_rate(const CountsVector& n, std::size_t option);

}  // namespace bsmooth

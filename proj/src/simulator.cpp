#include "bsmooth/simulator.hpp"

#include <cmath>
#include <vector>

#include "bsmooth/error.hpp"

namespace bsmooth {

namespace {

constexpr std::uint64_t kRandomMaxCount = 10;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace

Rng Rng::for_term(std::uint64_t seed, std::string_view term) {
  return Rng(splitmix64(seed ^ fnv1a(term)));
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::InvalidArgument, "empty range");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r < limit) return r % bound;
  }
}

std::size_t Rng::categorical(const ScoringVector& p) {
  const double u = uniform();
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    acc += p[i];
    last_positive = i;
    if (u < acc) return i;
  }
  return last_positive;  // u landed in the rounding gap below 1
}

std::string generator_tag(std::uint64_t seed) {
  return std::string(Rng::kAlgorithm) + " seed=" + std::to_string(seed);
}

void SessionModel::validate() const {
  check_probability(abandonment, "abandonment rate");
  check_probability(laziness, "laziness");
  if (default_option >= preference.size()) {
    throw Error(ErrorCode::BadIndex, "default option outside k=" +
                                         std::to_string(preference.size()));
  }
  if (sessions == 0) throw Error(ErrorCode::InvalidArgument, "sessions must be positive");
}

CountsVector simulate_implicit(const SessionModel& model) {
  Rng rng(model.seed);
  return simulate_implicit(model, rng);
}

CountsVector simulate_implicit(const SessionModel& model, Rng& rng) {
  model.validate();
  std::vector<std::uint64_t> counts(model.preference.size(), 0);
  for (std::uint64_t s = 0; s < model.sessions; ++s) {
    const bool lazy = rng.uniform() < model.laziness;
    const std::size_t choice = lazy ? model.default_option : rng.categorical(model.preference);
    ++counts[choice];
  }
  return CountsVector(std::move(counts));
}

CountsVector simulate_random(std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  return simulate_random(k, rng);
}

CountsVector simulate_random(std::size_t k, Rng& rng) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "random logs need k >= 2");
  for (;;) {
    std::vector<std::uint64_t> counts(k);
    for (auto& c : counts) c = rng.below(kRandomMaxCount + 1);
    CountsVector n(std::move(counts));
    if (n.total() > 0) return n;
  }
}

SessionTree session_tree(double abandonment, double laziness) {
  check_probability(abandonment, "abandonment rate");
  check_probability(laziness, "laziness");
  return {abandonment * (1.0 - laziness), abandonment * laziness, 1.0 - abandonment};
}

LazinessEstimate estimate_laziness(const std::map<std::string, double>& explicit_rates,
                                   const std::map<std::string, double>& implicit_rates) {
  if (explicit_rates.size() != implicit_rates.size()) {
    throw Error(ErrorCode::TermSetMismatch, "explicit and implicit rates cover different terms");
  }
  if (explicit_rates.empty()) throw Error(ErrorCode::TermSetMismatch, "no terms to compare");
  LazinessEstimate est{{}, 0.0, 0.0};
  for (const auto& [term, e] : explicit_rates) {
    const auto it = implicit_rates.find(term);
    if (it == implicit_rates.end()) {
      throw Error(ErrorCode::TermSetMismatch, "term '" + term + "' has no implicit rate");
    }
    check_probability(e, "explicit rate");
    check_probability(it->second, "implicit rate");
    est.per_term.emplace(term, it->second - e);
  }
  const double n = static_cast<double>(est.per_term.size());
  for (const auto& [_, l] : est.per_term) est.mean += l;
  est.mean /= n;
  if (est.per_term.size() > 1) {
    double ss = 0.0;
    for (const auto& [_, l] : est.per_term) ss += (l - est.mean) * (l - est.mean);
    est.stdev = std::sqrt(ss / (n - 1.0));
  }
  return est;
}

FeedbackLog simulate_random_log(const TypeCatalog& catalog, std::uint64_t seed) {
  FeedbackLog log(Provenance::Random);
  log.set_generator(generator_tag(seed));
  for (const auto& [term, labels] : catalog.terms()) {
    Rng rng = Rng::for_term(seed, term);
    log.add(catalog, term, simulate_random(labels.size(), rng));
  }
  return log;
}

FeedbackLog simulate_implicit_log(const TypeCatalog& catalog,
                                  const std::map<std::string, ScoringVector>& preferences,
                                  const std::map<std::string, std::size_t>& defaults,
                                  double abandonment, double laziness, std::uint64_t sessions,
                                  std::uint64_t seed) {
  FeedbackLog log(Provenance::Simulated);
  log.set_generator(generator_tag(seed));
  for (const auto& [term, labels] : catalog.terms()) {
    const auto pref = preferences.find(term);
    const auto def = defaults.find(term);
    if (pref == preferences.end() || def == defaults.end()) {
      throw Error(ErrorCode::UnknownTerm, "no preference or default for term '" + term + "'");
    }
    require_same_size(labels.size(), pref->second.size(), "preference");
    SessionModel model{abandonment, laziness, pref->second, def->second, sessions, seed};
    Rng rng = Rng::for_term(seed, term);
    log.add(catalog, term, simulate_implicit(model, rng));
  }
  return log;
}

double option_rate(const CountsVector& n, std::size_t option) {
  if (option >= n.size()) throw Error(ErrorCode::BadIndex, "option outside k");
  if (n.total() == 0) throw Error(ErrorCode::ZeroTotal, "no observations");
  return static_cast<double>(n[option]) / static_cast<double>(n.total());
}

}  // namespace bsmooth

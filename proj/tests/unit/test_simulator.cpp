#include <doctest.h>

#include <cmath>
#include <set>

#include "bsmooth/simulator.hpp"
#include "helpers.hpp"

using namespace bsmooth;
using testing::code_of;

TEST_CASE("rng is reproducible and in range") {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  // The engine is the standard 64-bit Mersenne Twister: its 10000th output
  // for the default seed is fixed by the C++ standard.
  std::mt19937_64 reference;
  reference.discard(9999);
  CHECK(reference() == 9981545732273789042ULL);

  Rng r(1);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const auto v = r.below(11);
    CHECK(v <= 10);
    seen.insert(v);
  }
  CHECK(seen.size() == 11);

  CHECK(Rng::for_term(3, "a").next() == Rng::for_term(3, "a").next());
  CHECK(Rng::for_term(3, "a").next() != Rng::for_term(3, "b").next());
}

TEST_CASE("uniform draws are unbiased") {
  Rng r(99);
  std::vector<int> hist(11, 0);
  const int draws = 110000;
  for (int i = 0; i < draws; ++i) ++hist[r.below(11)];
  for (int h : hist) CHECK(std::abs(h - draws / 11) < 5 * std::sqrt(draws / 11.0));
}

TEST_CASE("implicit sessions") {
  SessionModel m{0.6, 0.0, ScoringVector{0, 1, 0, 0, 0}, 0, 10, 5};
  CHECK(simulate_implicit(m) == CountsVector{0, 10, 0, 0, 0});

  m.laziness = 1.0;
  m.preference = ScoringVector::uniform(5);
  CHECK(simulate_implicit(m) == CountsVector{10, 0, 0, 0, 0});

  m.laziness = 0.3;
  m.sessions = 1234;
  CHECK(simulate_implicit(m).total() == 1234);
  CHECK(simulate_implicit(m) == simulate_implicit(m));

  m.default_option = 5;
  CHECK(code_of([&] { simulate_implicit(m); }) == ErrorCode::BadIndex);
  m.default_option = 0;
  m.laziness = 1.5;
  CHECK(code_of([&] { simulate_implicit(m); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("default-option rate follows the mixture") {
  const ScoringVector pref{0.71, 0.19, 0.05, 0.03, 0.02};
  SessionModel m{0.6, 0.05, pref, 0, 100000, 17};
  const auto n = simulate_implicit(m);
  const double expected = 0.71 * (1 - 0.05) + 0.05;
  CHECK(std::abs(option_rate(n, 0) - expected) <= 0.01);
}

TEST_CASE("random logs") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto n = simulate_random(5, seed);
    CHECK(n.total() > 0);
    for (std::size_t i = 0; i < 5; ++i) CHECK(n[i] <= 10);
  }
  CHECK(simulate_random(5, 7) == simulate_random(5, 7));
  CHECK(code_of([] { simulate_random(1, 7); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("random log entropy matches the uniform-count setting") {
  double sum = 0.0;
  int terms = 0;
  for (std::uint64_t seed = 0; seed < 62 * 20; ++seed) {
    sum += normalized_entropy(normalize_counts(simulate_random(5, seed)));
    ++terms;
  }
  CHECK(std::abs(sum / terms - 0.886) <= 0.03);
}

TEST_CASE("session tree") {
  const auto t = session_tree(0.6, 0.1);
  CHECK(t.abandon_satisfied == 0.54);
  CHECK(t.abandon_lazy == 0.06);
  CHECK(t.interact == 0.4);
  CHECK(t.abandon_satisfied + t.abandon_lazy + t.interact == doctest::Approx(1.0));
  CHECK(code_of([] { session_tree(1.2, 0.1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("laziness estimate") {
  const auto one = estimate_laziness({{"tom hanks", 0.71}}, {{"tom hanks", 0.80}});
  CHECK(one.per_term.at("tom hanks") == doctest::Approx(0.09));
  CHECK(one.stdev == 0.0);
  CHECK(estimate_laziness({{"t", 0.0}}, {{"t", 0.10}}).mean == doctest::Approx(0.10));
  CHECK(estimate_laziness({{"t", 0.4}}, {{"t", 0.4}}).mean == 0.0);

  const auto two = estimate_laziness({{"a", 0.1}, {"b", 0.2}}, {{"a", 0.2}, {"b", 0.2}});
  CHECK(two.mean == doctest::Approx(0.05));
  CHECK(two.stdev == doctest::Approx(std::sqrt(0.005)));

  CHECK(code_of([] { estimate_laziness({{"a", 0.1}}, {{"b", 0.1}}); }) == ErrorCode::TermSetMismatch);
  CHECK(code_of([] { estimate_laziness({{"a", 0.1}}, {{"a", 0.1}, {"b", 0.1}}); }) ==
        ErrorCode::TermSetMismatch);
}

TEST_CASE("laziness recovery is statistically consistent") {
  // The default is an option users never pick on their own, so the implicit
  // rate is exactly the laziness in expectation.
  const double laziness = 0.05;
  const std::uint64_t sessions = 10000;
  std::map<std::string, double> explicit_rates, implicit_rates;
  for (int t = 0; t < 20; ++t) {
    const std::string term = "term" + std::to_string(t);
    const ScoringVector pref{0.0, 0.6, 0.3, 0.1};
    Rng rng = Rng::for_term(123, term);
    const auto n = simulate_implicit({0.6, laziness, pref, 0, sessions, 0}, rng);
    explicit_rates[term] = pref[0];
    implicit_rates[term] = option_rate(n, 0);
  }
  const auto est = estimate_laziness(explicit_rates, implicit_rates);
  const double se = std::sqrt(laziness * (1 - laziness) / sessions);
  for (const auto& [_, l] : est.per_term) CHECK(std::abs(l - laziness) <= 3 * se + 1e-12);
}

TEST_CASE("logs for a catalog") {
  TypeCatalog c;
  c.add_term("a", {"x", "y", "z"});
  c.add_term("b", {"x", "y"});
  const auto log = simulate_random_log(c, 7);
  CHECK(log.provenance() == Provenance::Random);
  CHECK(log.generator() == std::string("mt19937_64 seed=7"));
  CHECK(log == simulate_random_log(c, 7));
  CHECK(log.counts(c, "a").size() == 3);

  const std::map<std::string, ScoringVector> prefs{{"a", ScoringVector{0.2, 0.3, 0.5}},
                                                   {"b", ScoringVector{0.5, 0.5}}};
  const std::map<std::string, std::size_t> defaults{{"a", 2}, {"b", 0}};
  const auto sim = simulate_implicit_log(c, prefs, defaults, 0.6, 0.05, 50, 9);
  CHECK(sim.counts(c, "a").total() == 50);
  CHECK(sim == simulate_implicit_log(c, prefs, defaults, 0.6, 0.05, 50, 9));
  CHECK(code_of([&] { simulate_implicit_log(c, {}, defaults, 0.6, 0.05, 50, 9); }) ==
        ErrorCode::UnknownTerm);
}

#include <doctest.h>

#include "bsmooth/eval.hpp"
#include "bsmooth/simulator.hpp"
#include "helpers.hpp"

using namespace bsmooth;
using testing::code_of;

namespace {

const ScoringVector kTomHanks{0.2793 / 0.9999, 0.2346 / 0.9999, 0.2207 / 0.9999, 0.1508 / 0.9999,
                              0.1145 / 0.9999};

std::vector<std::size_t> positions(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

TEST_CASE("ranking and tie break") {
  const auto r = rank("t", ScoringVector{0.2, 0.5, 0.3});
  CHECK(r.ranking == std::vector<std::size_t>{1, 2, 0});
  const auto tie = rank("t", ScoringVector{0.4, 0.4, 0.2});
  CHECK(tie.ranking == std::vector<std::size_t>{0, 1, 2});
  CHECK(rank("t", ScoringVector::uniform(4)).ranking == positions(4));
}

TEST_CASE("precision at one and reciprocal rank") {
  const AnswerKey key{{"tom hanks", 1}, {"t", 1}};
  const auto intr = rank("tom hanks", kTomHanks);
  CHECK(precision_at_1(intr, key) == 0);
  CHECK(reciprocal_rank(intr, key) == 0.5);

  CHECK(precision_at_1(rank("t", ScoringVector{0, 1, 0}), key) == 1);
  CHECK(reciprocal_rank(rank("t", ScoringVector{0, 1, 0}), key) == 1.0);
  CHECK(precision_at_1(rank("t", ScoringVector{0.5, 0.5, 0}), key) == 0);
  CHECK(reciprocal_rank(rank("t", ScoringVector{0.3, 0.0, 0.25, 0.25, 0.2}), key) == 0.2);

  CHECK(code_of([&] { precision_at_1(rank("other", kTomHanks), key); }) == ErrorCode::UnknownTerm);
  CHECK(code_of([&] { reciprocal_rank(rank("other", kTomHanks), key); }) == ErrorCode::UnknownTerm);
}

TEST_CASE("mean reciprocal rank") {
  const AnswerKey key{{"a", 0}, {"b", 1}};
  const std::vector<RankedResult> rs{rank("a", ScoringVector{0.9, 0.1}), rank("b", ScoringVector{0.9, 0.1})};
  CHECK(mrr(rs, key) == 0.75);
  CHECK(code_of([&] { mrr({}, key); }) == ErrorCode::EmptyResults);
}

TEST_CASE("metric invariants on random rankings") {
  testing::Gen gen(61);
  for (int trial = 0; trial < 200; ++trial) {
    AnswerKey key;
    std::vector<RankedResult> rs;
    int hits = 0;
    for (int t = 0; t < 10; ++t) {
      const std::string term = "t" + std::to_string(t);
      const std::size_t k = 2 + gen.index(5);
      key[term] = gen.index(k);
      rs.push_back(rank(term, gen.scoring(k)));
      const int hit = precision_at_1(rs.back(), key);
      CHECK((reciprocal_rank(rs.back(), key) == 1.0) == (hit == 1));
      hits += hit;
    }
    CHECK(mrr(rs, key) >= hits / 10.0);
  }
}

TEST_CASE("bucket sizes") {
  CHECK(bucket_sizes(62, 5) == std::vector<std::size_t>{12, 12, 12, 13, 13});
  CHECK(bucket_sizes(10, 5) == std::vector<std::size_t>{2, 2, 2, 2, 2});
  for (std::size_t n = 5; n < 200; ++n) {
    const auto s = bucket_sizes(n, 5);
    std::size_t sum = 0;
    for (auto v : s) sum += v;
    CHECK(sum == n);
    CHECK(s.back() - s.front() <= 1);
  }
}

TEST_CASE("entropy histogram") {
  std::map<std::string, ScoringVector> vectors;
  std::map<std::string, int> hits;
  for (int i = 0; i < 10; ++i) {
    const std::string term = "t" + std::to_string(i);
    const double p = 0.5 + 0.05 * i;
    vectors.emplace(term, ScoringVector{p, 1 - p});
    hits[term] = i < 5 ? 0 : 1;
  }
  const auto buckets = entropy_histogram(vectors, hits);
  REQUIRE(buckets.size() == 5);
  // Higher p means lower entropy, so the hits land in the first buckets.
  CHECK(buckets[0].hits == 2);
  CHECK(buckets[4].hits == 0);
  CHECK(buckets[0].terms == std::vector<std::string>{"t9", "t8"});
  for (std::size_t i = 1; i < 5; ++i) CHECK(buckets[i].min_entropy >= buckets[i - 1].max_entropy);

  std::map<std::string, ScoringVector> few{{"a", ScoringVector::uniform(2)}};
  CHECK(code_of([&] { entropy_histogram(few, {{"a", 1}}); }) == ErrorCode::TooFewTerms);

  // Equal entropies keep term-id order.
  std::map<std::string, ScoringVector> same;
  std::map<std::string, int> none;
  for (const char* t : {"e", "d", "c", "b", "a"}) {
    same.emplace(t, ScoringVector::uniform(3));
    none[t] = 0;
  }
  const auto ordered = entropy_histogram(same, none);
  CHECK(ordered[0].terms == std::vector<std::string>{"a"});
  CHECK(ordered[4].terms == std::vector<std::string>{"e"});
}

TEST_CASE("query level projection") {
  const AnswerKey key{{"a", 0}, {"b", 1}, {"c", 0}};
  const auto a = rank("a", ScoringVector{0.9, 0.1});
  const auto b_miss = rank("b", ScoringVector{0.9, 0.1});
  const auto c = rank("c", ScoringVector{0.7, 0.3});
  const std::map<std::string, std::vector<RankedResult>> queries{
      {"both hit", {a, c}}, {"one miss", {a, b_miss}}, {"single", {b_miss}}};
  const auto out = project_query_level(queries, key);
  CHECK(out.at("both hit").precision == 1);
  CHECK(out.at("both hit").rr == 1.0);
  CHECK(out.at("one miss").precision == 0);
  CHECK(out.at("one miss").rr == 0.5);
  CHECK(out.at("single").precision == precision_at_1(b_miss, key));
  CHECK(out.at("single").rr == reciprocal_rank(b_miss, key));
  CHECK(code_of([&] { project_query_level({{"empty", {}}}, key); }) == ErrorCode::EmptyQuery);
}

TEST_CASE("strategies") {
  CHECK(parse_strategy("LOGIT") == Strategy::Logit);
  CHECK(code_of([] { parse_strategy("cubic"); }) == ErrorCode::InvalidArgument);

  IntrinsicScores intrinsic{{"tom hanks", kTomHanks}, {"b", ScoringVector{0.6, 0.4}}};
  AnswerKey key{{"tom hanks", 1}, {"b", 0}};
  TypeCatalog catalog;
  catalog.add_term("tom hanks", {"c", "n", "t", "m", "r"});
  catalog.add_term("b", {"x", "y"});
  const StrategyConfig cfg{};  // LOGIT is fitted from the intrinsic population

  FeedbackLog log;
  log.add(catalog, "tom hanks", {1, 8, 0, 1, 0});
  const auto report = compare_strategies(intrinsic, log, key, cfg);
  REQUIRE(report.strategies.size() == 5);
  CHECK(report.at(Strategy::Intr).precision == 0.5);
  CHECK(report.at(Strategy::Mle).skipped);
  CHECK(report.at(Strategy::Logit).precision == 1.0);

  const auto text = format_report(report);
  CHECK(text.find("intr,P@1,50.0\n") != std::string::npos);
  CHECK(text.find("mle,P@1,skipped\n") != std::string::npos);
  CHECK(text.find("logit,MRR,100.0\n") != std::string::npos);

  // INTR ignores feedback; with no feedback every other strategy reduces to it.
  const auto empty = compare_strategies(intrinsic, FeedbackLog{}, key, cfg);
  CHECK(empty.at(Strategy::Intr).precision == report.at(Strategy::Intr).precision);
  for (Strategy s : {Strategy::Step, Strategy::Linear, Strategy::Logit}) {
    CHECK(empty.at(s).precision == empty.at(Strategy::Intr).precision);
    CHECK(empty.at(s).mean_rr == empty.at(Strategy::Intr).mean_rr);
  }

  CHECK(code_of([&] { apply_strategy(Strategy::Mle, nullptr, kTomHanks, CountsVector::zeros(5)); }) ==
        ErrorCode::EmptyEvidence);
}

TEST_CASE("random logs hurt MLE but not LOGIT") {
  TypeCatalog catalog;
  IntrinsicScores intrinsic;
  AnswerKey key;
  testing::Gen gen(62);
  for (int t = 0; t < 62; ++t) {
    const std::string term = "t" + std::to_string(t);
    catalog.add_term(term, {"a", "b", "c", "d", "e"});
    std::vector<double> w(5);
    for (auto& v : w) v = gen.real(0.8, 1.1);
    const std::size_t answer = gen.index(5);
    w[answer] = 1.6;
    intrinsic.emplace(term, ScoringVector::from_weights(w));
    key[term] = answer;
  }
  const StrategyConfig cfg{};  // LOGIT is fitted from the intrinsic population
  const auto report = compare_strategies(intrinsic, simulate_random_log(catalog, 3), key, cfg);
  CHECK(report.at(Strategy::Intr).precision == 1.0);
  CHECK(report.at(Strategy::Mle).precision < 0.5);
  INFO("LOGIT " << report.at(Strategy::Logit).precision << " MLE " << report.at(Strategy::Mle).precision);
  CHECK(report.at(Strategy::Logit).precision >= 0.8);
  CHECK(report.at(Strategy::Logit).precision >= report.at(Strategy::Mle).precision + 0.3);
}

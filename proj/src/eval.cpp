#include "bsmooth/eval.hpp"

#include <algorithm>
#include <numeric>

#include "bsmooth/error.hpp"
#include "bsmooth/profiling.hpp"
#include "bsmooth/smoothing.hpp"
#include "text.hpp"

namespace bsmooth {

namespace {

std::size_t relevant_option(const RankedResult& r, const AnswerKey& key) {
  const auto it = key.find(r.term);
  if (it == key.end()) throw Error(ErrorCode::UnknownTerm, "no answer for term '" + r.term + "'");
  if (it->second >= r.posterior.size()) {
    throw Error(ErrorCode::BadIndex, "answer for '" + r.term + "' is outside k");
  }
  return it->second;
}

const ScoringVector& intrinsic_of(const IntrinsicScores& intrinsic, const std::string& term) {
  const auto it = intrinsic.find(term);
  if (it == intrinsic.end()) {
    throw Error(ErrorCode::UnknownTerm, "no intrinsic scores for term '" + term + "'");
  }
  return it->second;
}

CountsVector counts_of(const FeedbackLog& log, const std::string& term, std::size_t k) {
  const auto it = log.entries().find(term);
  if (it == log.entries().end()) return CountsVector::zeros(k);
  require_same_size(it->second.size(), k, "feedback counts");
  return it->second;
}

}  // namespace

RankedResult rank(std::string term, ScoringVector posterior, std::string strategy) {
  std::vector<std::size_t> order(posterior.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return posterior[a] > posterior[b]; });
  return {std::move(term), std::move(posterior), std::move(order), std::move(strategy)};
}

int precision_at_1(const RankedResult& r, const AnswerKey& key) {
  return r.ranking.front() == relevant_option(r, key) ? 1 : 0;
}

double reciprocal_rank(const RankedResult& r, const AnswerKey& key) {
  const std::size_t relevant = relevant_option(r, key);
  const auto pos = std::find(r.ranking.begin(), r.ranking.end(), relevant);
  return 1.0 / static_cast<double>(pos - r.ranking.begin() + 1);
}

double mrr(std::span<const RankedResult> results, const AnswerKey& key) {
  if (results.empty()) throw Error(ErrorCode::EmptyResults, "no results to average");
  double sum = 0.0;
  for (const auto& r : results) sum += reciprocal_rank(r, key);
  return sum / static_cast<double>(results.size());
}

std::vector<std::size_t> bucket_sizes(std::size_t n, std::size_t buckets) {
  std::vector<std::size_t> sizes(buckets, n / buckets);
  // The remainder goes to the last buckets.
  for (std::size_t i = 0; i < n % buckets; ++i) ++sizes[buckets - 1 - i];
  return sizes;
}

std::vector<HistogramBucket> entropy_histogram(const std::map<std::string, ScoringVector>& vectors,
                                               const std::map<std::string, int>& hits) {
  if (vectors.size() < kHistogramBuckets) {
    throw Error(ErrorCode::TooFewTerms, "need at least 5 terms, got " +
                                            std::to_string(vectors.size()));
  }
  std::vector<std::pair<double, std::string>> order;
  order.reserve(vectors.size());
  for (const auto& [term, v] : vectors) order.emplace_back(normalized_entropy(v), term);
  // The map iterates by term id, so a stable sort keeps equal entropies in id order.
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<HistogramBucket> buckets;
  std::size_t next = 0;
  for (std::size_t size : bucket_sizes(order.size(), kHistogramBuckets)) {
    HistogramBucket b{{}, order[next].first, order[next + size - 1].first, 0};
    for (std::size_t i = next; i < next + size; ++i) {
      const auto& term = order[i].second;
      const auto h = hits.find(term);
      if (h == hits.end()) throw Error(ErrorCode::UnknownTerm, "no hit flag for '" + term + "'");
      b.hits += h->second != 0 ? 1 : 0;
      b.terms.push_back(term);
    }
    next += size;
    buckets.push_back(std::move(b));
  }
  return buckets;
}

std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::Intr: return "intr";
    case Strategy::Mle: return "mle";
    case Strategy::Step: return "step";
    case Strategy::Linear: return "linear";
    case Strategy::Logit: return "logit";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  const std::string lower = detail::to_lower(name);
  for (Strategy s : kAllStrategies) {
    if (lower == to_string(s)) return s;
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown strategy '" + std::string(name) + "' (intr|mle|step|linear|logit)");
}

std::optional<WeightingProfile> profile_for(Strategy s, const StrategyConfig& cfg,
                                            const IntrinsicScores& intrinsic) {
  switch (s) {
    case Strategy::Intr: return std::nullopt;
    case Strategy::Mle: return WeightingProfile::mle();
    case Strategy::Step: return WeightingProfile::step(cfg.threshold);
    case Strategy::Linear: return WeightingProfile::linear();
    case Strategy::Logit: {
      if (cfg.logit) return cfg.logit;
      ProfilingConfig pc{cfg.threshold, cfg.delta, {}};
      for (const auto& [_, v] : intrinsic) pc.population.push_back(v);
      return priors_profiling(pc);
    }
  }
  return std::nullopt;
}

ScoringVector apply_strategy(Strategy s, const WeightingProfile* profile, const ScoringVector& x,
                             const CountsVector& n) {
  if (s == Strategy::Mle && n.total() == 0) {
    throw Error(ErrorCode::EmptyEvidence, "MLE is undefined for an empty feedback log");
  }
  if (s == Strategy::Intr || profile == nullptr) return x;
  return bsmooth(x, n, *profile).posterior;
}

StrategyOutcome evaluate_strategy(Strategy s, const WeightingProfile* profile,
                                  const IntrinsicScores& intrinsic, const FeedbackLog& feedback,
                                  const AnswerKey& answers) {
  if (answers.empty()) throw Error(ErrorCode::EmptyResults, "answer key is empty");
  StrategyOutcome out{s, std::nullopt, 0.0, 0.0, {}};
  int hits = 0;
  for (const auto& [term, _] : answers) {
    const ScoringVector& x = intrinsic_of(intrinsic, term);
    const CountsVector n = counts_of(feedback, term, x.size());
    out.results.push_back(
        rank(term, apply_strategy(s, profile, x, n), std::string(to_string(s))));
    hits += precision_at_1(out.results.back(), answers);
  }
  out.precision = static_cast<double>(hits) / static_cast<double>(answers.size());
  out.mean_rr = mrr(out.results, answers);
  return out;
}

EvalReport compare_strategies(const IntrinsicScores& intrinsic, const FeedbackLog& feedback,
                              const AnswerKey& answers, const StrategyConfig& cfg) {
  EvalReport report;
  for (Strategy s : kAllStrategies) {
    if (s == Strategy::Mle) {
      const bool has_empty = std::any_of(answers.begin(), answers.end(), [&](const auto& kv) {
        const auto it = feedback.entries().find(kv.first);
        return it == feedback.entries().end() || it->second.total() == 0;
      });
      if (has_empty) {
        report.strategies.push_back({s, "empty feedback log for at least one term", 0.0, 0.0, {}});
        continue;
      }
    }
    const auto profile = profile_for(s, cfg, intrinsic);
    report.strategies.push_back(
        evaluate_strategy(s, profile ? &*profile : nullptr, intrinsic, feedback, answers));
  }
  return report;
}

const StrategyOutcome& EvalReport::at(Strategy s) const {
  for (const auto& o : strategies) {
    if (o.strategy == s) return o;
  }
  throw Error(ErrorCode::InvalidArgument, "strategy not in report");
}

std::map<std::string, QueryOutcome> project_query_level(
    const std::map<std::string, std::vector<RankedResult>>& queries, const AnswerKey& key) {
  std::map<std::string, QueryOutcome> out;
  for (const auto& [query, terms] : queries) {
    if (terms.empty()) throw Error(ErrorCode::EmptyQuery, "query '" + query + "' has no terms");
    QueryOutcome q{1, 1.0};
    double least = 1.0;
    for (const auto& r : terms) {
      q.precision *= precision_at_1(r, key);
      least = std::min(least, reciprocal_rank(r, key));
    }
    q.rr = q.precision == 1 ? 1.0 : least;
    out.emplace(query, q);
  }
  return out;
}

std::string format_report(const EvalReport& report) {
  std::string out = "strategy,metric,value\n";
  for (const auto& o : report.strategies) {
    const std::string name(to_string(o.strategy));
    if (o.skipped) {
      out += name + ",P@1,skipped\n" + name + ",MRR,skipped\n";
      continue;
    }
    out += name + ",P@1," + detail::format_percent(o.precision) + "\n";
    out += name + ",MRR," + detail::format_percent(o.mean_rr) + "\n";
  }
  return out;
}

std::string format_histogram(const std::vector<HistogramBucket>& buckets) {
  std::string out = "bucket,size,min_entropy,max_entropy,hits\n";
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    const auto& b = buckets[i];
    out += std::to_string(i + 1) + "," + std::to_string(b.terms.size()) + "," +
           detail::format_real(b.min_entropy) + "," + detail::format_real(b.max_entropy) + "," +
           std::to_string(b.hits) + "\n";
  }
  return out;
}

}  // namespace bsmooth

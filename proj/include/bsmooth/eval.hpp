#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bsmooth/logstore.hpp"
#include "bsmooth/profiles.hpp"
#include "bsmooth/vectors.hpp"

namespace bsmooth {

/// A term's posterior together with its option ranking.
///
/// Options are ordered by descending score; equal scores keep ascending
/// option index, so rankings are reproducible byte for byte.
struct RankedResult {
  std::string term;
  ScoringVector posterior;
  std::vector<std::size_t> ranking;
  std::string strategy;
};

RankedResult rank(std::string term, ScoringVector posterior, std::string strategy = {});

/// 1 when the top-ranked option is the relevant one, else 0.
int precision_at_1(const RankedResult& r, const AnswerKey& key);
/// 1 / position of the relevant option.
double reciprocal_rank(const RankedResult& r, const AnswerKey& key);
double mrr(std::span<const RankedResult> results, const AnswerKey& key);

struct HistogramBucket {
  std::vector<std::string> terms;  // ascending entropy
  double min_entropy;
  double max_entropy;
  std::size_t hits;
};

inline constexpr std::size_t kHistogramBuckets = 5;

/// Sorts terms by entropy (ties by term id) and splits them into five
/// contiguous buckets whose sizes differ by at most one, smaller first.
std::vector<HistogramBucket> entropy_histogram(const std::map<std::string, ScoringVector>& vectors,
                                               const std::map<std::string, int>& hits);

/// Sizes of n items split into `buckets` parts, smaller parts first.
std::vector<std::size_t> bucket_sizes(std::size_t n, std::size_t buckets);

enum class Strategy { Intr, Mle, Step, Linear, Logit };

inline constexpr Strategy kAllStrategies[] = {Strategy::Intr, Strategy::Mle, Strategy::Step,
                                              Strategy::Linear, Strategy::Logit};

std::string_view to_string(Strategy s) noexcept;
/// Accepts the lowercase names; throws InvalidArgument otherwise.
Strategy parse_strategy(std::string_view name);

struct StrategyConfig {
  double threshold = 0.75;  // D for STEP and for fitting LOGIT
  double delta = 0.05;
  /// Fitted LOGIT profile; fitted from the intrinsic population when absent.
  std::optional<WeightingProfile> logit;
};

/// Posterior for one term under a strategy. INTR returns the prior as is.
/// MLE on an empty log throws EmptyEvidence.
ScoringVector apply_strategy(Strategy s, const WeightingProfile* profile, const ScoringVector& x,
                             const CountsVector& n);

/// The profile a strategy smooths with; null for INTR.
std::optional<WeightingProfile> profile_for(Strategy s, const StrategyConfig& cfg,
                                            const IntrinsicScores& intrinsic);

struct StrategyOutcome {
  Strategy strategy;
  std::optional<std::string> skipped;  // reason, when the strategy could not run
  double precision = 0.0;               // mean P@1 in [0, 1]
  double mean_rr = 0.0;
  std::vector<RankedResult> results;   // answer-key order
};

struct EvalReport {
  std::vector<StrategyOutcome> strategies;

  const StrategyOutcome& at(Strategy s) const;
};

/// Runs every strategy over the answer-key terms. Terms without feedback
/// get an empty log. MLE is reported as skipped if any such term exists.
EvalReport compare_strategies(const IntrinsicScores& intrinsic, const FeedbackLog& feedback,
                              const AnswerKey& answers, const StrategyConfig& cfg);

/// Metrics for a single strategy over the answer-key terms.
StrategyOutcome evaluate_strategy(Strategy s, const WeightingProfile* profile,
                                  const IntrinsicScores& intrinsic, const FeedbackLog& feedback,
                                  const AnswerKey& answers);

struct QueryOutcome {
  int precision;  // 1 only if every term hits
  double rr;      // 1 if every term hits, otherwise the smallest term RR
};

/// Query-level metrics for terms grouped by query id.
std::map<std::string, QueryOutcome> project_query_level(
    const std::map<std::string, std::vector<RankedResult>>& queries, const AnswerKey& key);

/// `strategy,metric,value` rows; percentages with one decimal.
std::string format_report(const EvalReport& report);
/// `bucket,size,min_entropy,max_entropy,hits` rows.
std::string format_histogram(const std::vector<HistogramBucket>& buckets);

}  // namespace bsmooth

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bsmooth/vectors.hpp"

namespace bsmooth {

// On-disk datasets are comma-separated text with a mandatory header row and
// one row per (term, option); option indices are 1-based in files. Term ids
// may contain spaces but not commas. In memory every index is 0-based.
//
//   catalog     term_id,option_index,label
//   intrinsic   term_id,option_index,value      (probability)
//   feedback    term_id,option_index,value      (count)
//   answers     term_id,option_index
//
// Lines starting with '#' before the header carry `key=value` metadata.

/// Ordered candidate type labels per term.
class TypeCatalog {
 public:
  void add_term(const std::string& term, std::vector<std::string> labels);

  bool contains(const std::string& term) const { return terms_.count(term) != 0; }
  const std::vector<std::string>& labels(const std::string& term) const;
  std::size_t k(const std::string& term) const { return labels(term).size(); }
  const std::map<std::string, std::vector<std::string>>& terms() const noexcept { return terms_; }
  std::vector<std::string> term_ids() const;

  friend bool operator==(const TypeCatalog&, const TypeCatalog&) = default;

 private:
  std::map<std::string, std::vector<std::string>> terms_;
};

/// The system's own score vector per term (the prior).
using IntrinsicScores = std::map<std::string, ScoringVector>;

/// The single relevant option per term.
using AnswerKey = std::map<std::string, std::size_t>;

enum class Provenance { Explicit, Implicit, Random, Simulated };

std::string to_string(Provenance p);
Provenance parse_provenance(const std::string& name);

/// Append-only feedback counts per term, aligned to the catalog order.
class FeedbackLog {
 public:
  explicit FeedbackLog(Provenance provenance = Provenance::Implicit) : provenance_(provenance) {}

  Provenance provenance() const noexcept { return provenance_; }
  void set_provenance(Provenance p) noexcept { provenance_ = p; }

  /// Free-form generator description recorded next to the provenance tag.
  const std::optional<std::string>& generator() const noexcept { return generator_; }
  void set_generator(std::string g) { generator_ = std::move(g); }

  /// Counts for a term; all zeros if nothing has been logged for it yet.
  CountsVector counts(const TypeCatalog& catalog, const std::string& term) const;
  bool has(const std::string& term) const { return counts_.count(term) != 0; }
  const std::map<std::string, CountsVector>& entries() const noexcept { return counts_; }

  /// Adds counts to a term. Counts never decrease.
  void add(const TypeCatalog& catalog, const std::string& term, const CountsVector& delta);

  /// Multi-choice explicit feedback: each selected option gets one count.
  void ingest_explicit(const TypeCatalog& catalog, const std::string& term,
                       const std::set<std::size_t>& selections);

  /// Single-choice implicit feedback: the chosen option gets one count,
  /// whether the user kept the default or changed it.
  void ingest_implicit(const TypeCatalog& catalog, const std::string& term, std::size_t chosen);

  friend bool operator==(const FeedbackLog&, const FeedbackLog&) = default;

 private:
  Provenance provenance_;
  std::optional<std::string> generator_;
  std::map<std::string, CountsVector> counts_;
};

// Band inside which intrinsic rows are renormalized on load.
inline constexpr double kIntrinsicSumLow = 0.98;
inline constexpr double kIntrinsicSumHigh = 1.02;

std::string serialize_catalog(const TypeCatalog& catalog);
std::string serialize_intrinsic(const IntrinsicScores& scores);
std::string serialize_feedback(const FeedbackLog& log);
std::string serialize_answers(const AnswerKey& answers);

TypeCatalog parse_catalog(const std::string& text);
/// Validates every term against the catalog (SchemaMismatch otherwise).
IntrinsicScores parse_intrinsic(const std::string& text, const TypeCatalog& catalog);
FeedbackLog parse_feedback(const std::string& text, const TypeCatalog& catalog);
AnswerKey parse_answers(const std::string& text, const TypeCatalog& catalog);

TypeCatalog load_catalog(const std::string& path);
IntrinsicScores load_intrinsic(const std::string& path, const TypeCatalog& catalog);
FeedbackLog load_feedback(const std::string& path, const TypeCatalog& catalog);
AnswerKey load_answers(const std::string& path, const TypeCatalog& catalog);

void save_catalog(const TypeCatalog& catalog, const std::string& path);
void save_intrinsic(const IntrinsicScores& scores, const std::string& path);
void save_feedback(const FeedbackLog& log, const std::string& path);
void save_answers(const AnswerKey& answers, const std::string& path);

}  // namespace bsmooth

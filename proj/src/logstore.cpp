#include "bsmooth/logstore.hpp"

#include <cmath>
#include <string_view>

#include "bsmooth/error.hpp"
#include "text.hpp"

namespace bsmooth {

namespace {

struct Row {
  std::size_t line;
  std::vector<std::string> fields;
};

struct Table {
  std::map<std::string, std::string> metadata;
  std::vector<Row> rows;
};

std::string at_line(std::string_view kind, std::size_t line) {
  return std::string(kind) + " line " + std::to_string(line);
}

Table read_table(const std::string& text, std::string_view kind,
                 const std::vector<std::string>& header) {
  Table table;
  bool seen_header = false;
  std::size_t line_no = 0;
  for (const auto& raw : detail::split_lines(text)) {
    ++line_no;
    const std::string line = detail::trim(raw);
    if (line.empty()) continue;
    if (!seen_header) {
      if (line.front() == '#') {
        const std::string body = detail::trim(std::string_view(line).substr(1));
        const auto eq = body.find('=');
        if (eq != std::string::npos) {
          table.metadata[detail::trim(body.substr(0, eq))] = detail::trim(body.substr(eq + 1));
        }
        continue;
      }
      if (detail::split_fields(line, ',') != header) {
        std::string expected;
        for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
        throw Error(ErrorCode::ParseError,
                    at_line(kind, line_no) + ": expected header '" + expected + "'");
      }
      seen_header = true;
      continue;
    }
    auto fields = detail::split_fields(line, ',');
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::ParseError, at_line(kind, line_no) + ": expected " +
                                             std::to_string(header.size()) + " fields, got " +
                                             std::to_string(fields.size()) + " in '" + line +
                                             "'");
    }
    if (fields[0].empty()) {
      throw Error(ErrorCode::ParseError, at_line(kind, line_no) + ": empty term_id");
    }
    table.rows.push_back({line_no, std::move(fields)});
  }
  if (!seen_header) throw Error(ErrorCode::ParseError, std::string(kind) + ": missing header row");
  return table;
}

void check_term_id(const std::string& term) {
  if (term.empty() || term.find_first_of(",\n\r") != std::string::npos ||
      detail::trim(term) != term || term.front() == '#') {
    throw Error(ErrorCode::InvalidArgument, "term id '" + term +
                                                "' must be non-empty, trimmed, and free of "
                                                "commas, newlines and a leading '#'");
  }
}

std::size_t option_of(const Row& row, std::string_view kind, const TypeCatalog& catalog) {
  const std::string& term = row.fields[0];
  if (!catalog.contains(term)) {
    throw Error(ErrorCode::SchemaMismatch,
                at_line(kind, row.line) + ": term '" + term + "' is not in the catalog");
  }
  const auto index = detail::parse_index(row.fields[1], at_line(kind, row.line));
  const auto k = catalog.k(term);
  if (index > k) {
    throw Error(ErrorCode::SchemaMismatch, at_line(kind, row.line) + ": option " +
                                               std::to_string(index) + " outside k=" +
                                               std::to_string(k) + " for term '" + term + "'");
  }
  return index - 1;
}

std::string header_line(std::initializer_list<std::string_view> cols) {
  std::string out;
  for (auto c : cols) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out + "\n";
}

}  // namespace

void TypeCatalog::add_term(const std::string& term, std::vector<std::string> labels) {
  check_term_id(term);
  if (labels.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "term '" + term + "' needs at least 2 options");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty() || labels[i].find_first_of(",\n\r") != std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "bad option label for term '" + term + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (labels[i] == labels[j]) {
        throw Error(ErrorCode::InvalidArgument,
                    "duplicate option '" + labels[i] + "' for term '" + term + "'");
      }
    }
  }
  if (!terms_.emplace(term, std::move(labels)).second) {
    throw Error(ErrorCode::InvalidArgument, "term '" + term + "' already in catalog");
  }
}

const std::vector<std::string>& TypeCatalog::labels(const std::string& term) const {
  const auto it = terms_.find(term);
  if (it == terms_.end()) throw Error(ErrorCode::UnknownTerm, "unknown term '" + term + "'");
  return it->second;
}

std::vector<std::string> TypeCatalog::term_ids() const {
  std::vector<std::string> ids;
  ids.reserve(terms_.size());
  for (const auto& [term, _] : terms_) ids.push_back(term);
  return ids;
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Explicit: return "explicit";
    case Provenance::Implicit: return "implicit";
    case Provenance::Random: return "random";
    case Provenance::Simulated: return "simulated";
  }
  return "implicit";
}

Provenance parse_provenance(const std::string& name) {
  const auto lower = detail::to_lower(name);
  if (lower == "explicit") return Provenance::Explicit;
  if (lower == "implicit") return Provenance::Implicit;
  if (lower == "random") return Provenance::Random;
  if (lower == "simulated") return Provenance::Simulated;
  throw Error(ErrorCode::ParseError, "unknown provenance '" + name + "'");
}

CountsVector FeedbackLog::counts(const TypeCatalog& catalog, const std::string& term) const {
  const auto k = catalog.k(term);
  const auto it = counts_.find(term);
  if (it == counts_.end()) return CountsVector::zeros(k);
  return it->second;
}

void FeedbackLog::add(const TypeCatalog& catalog, const std::string& term,
                      const CountsVector& delta) {
  const auto k = catalog.k(term);
  require_same_size(k, delta.size(), "feedback counts");
  auto it = counts_.find(term);
  if (it == counts_.end()) {
    counts_.emplace(term, delta);
    return;
  }
  std::vector<std::uint64_t> sum(it->second.counts().begin(), it->second.counts().end());
  for (std::size_t i = 0; i < k; ++i) sum[i] += delta[i];
  it->second = CountsVector(std::move(sum));
}

void FeedbackLog::ingest_explicit(const TypeCatalog& catalog, const std::string& term,
                                  const std::set<std::size_t>& selections) {
  const auto k = catalog.k(term);
  if (selections.empty()) {
    throw Error(ErrorCode::EmptySelection, "explicit feedback needs at least one selection");
  }
  std::vector<std::uint64_t> delta(k, 0);
  for (auto s : selections) {
    if (s >= k) {
      throw Error(ErrorCode::BadIndex, "option " + std::to_string(s + 1) + " outside k=" +
                                           std::to_string(k) + " for term '" + term + "'");
    }
    delta[s] = 1;
  }
  add(catalog, term, CountsVector(std::move(delta)));
}

void FeedbackLog::ingest_implicit(const TypeCatalog& catalog, const std::string& term,
                                  std::size_t chosen) {
  const auto k = catalog.k(term);
  if (chosen >= k) {
    throw Error(ErrorCode::BadIndex, "option " + std::to_string(chosen + 1) + " outside k=" +
                                         std::to_string(k) + " for term '" + term + "'");
  }
  add(catalog, term, CountsVector::zeros(k).incremented(chosen));
}

std::string serialize_catalog(const TypeCatalog& catalog) {
  std::string out = header_line({"term_id", "option_index", "label"});
  for (const auto& [term, labels] : catalog.terms()) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      out += term + "," + std::to_string(i + 1) + "," + labels[i] + "\n";
    }
  }
  return out;
}

std::string serialize_intrinsic(const IntrinsicScores& scores) {
  std::string out = header_line({"term_id", "option_index", "value"});
  for (const auto& [term, v] : scores) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      out += term + "," + std::to_string(i + 1) + "," + detail::format_real(v[i]) + "\n";
    }
  }
  return out;
}

std::string serialize_feedback(const FeedbackLog& log) {
  std::string out = "# provenance=" + to_string(log.provenance()) + "\n";
  if (log.generator()) out += "# generator=" + *log.generator() + "\n";
  out += header_line({"term_id", "option_index", "value"});
  for (const auto& [term, n] : log.entries()) {
    for (std::size_t i = 0; i < n.size(); ++i) {
      out += term + "," + std::to_string(i + 1) + "," + std::to_string(n[i]) + "\n";
    }
  }
  return out;
}

std::string serialize_answers(const AnswerKey& answers) {
  std::string out = header_line({"term_id", "option_index"});
  for (const auto& [term, option] : answers) {
    out += term + "," + std::to_string(option + 1) + "\n";
  }
  return out;
}

TypeCatalog parse_catalog(const std::string& text) {
  const auto table = read_table(text, "catalog", {"term_id", "option_index", "label"});
  std::map<std::string, std::map<std::size_t, std::string>> staged;
  for (const auto& row : table.rows) {
    const auto index = detail::parse_index(row.fields[1], at_line("catalog", row.line));
    if (row.fields[2].empty()) {
      throw Error(ErrorCode::ParseError, at_line("catalog", row.line) + ": empty label");
    }
    if (!staged[row.fields[0]].emplace(index, row.fields[2]).second) {
      throw Error(ErrorCode::ParseError, at_line("catalog", row.line) + ": duplicate option " +
                                             std::to_string(index));
    }
  }
  TypeCatalog catalog;
  for (auto& [term, options] : staged) {
    std::vector<std::string> labels;
    std::size_t expected = 1;
    for (auto& [index, label] : options) {
      if (index != expected) {
        throw Error(ErrorCode::ParseError, "catalog: term '" + term + "' is missing option " +
                                               std::to_string(expected));
      }
      labels.push_back(std::move(label));
      ++expected;
    }
    try {
      catalog.add_term(term, std::move(labels));
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, std::string("catalog: ") + e.what());
    }
  }
  return catalog;
}

IntrinsicScores parse_intrinsic(const std::string& text, const TypeCatalog& catalog) {
  const auto table = read_table(text, "intrinsic", {"term_id", "option_index", "value"});
  std::map<std::string, std::vector<std::optional<double>>> staged;
  for (const auto& row : table.rows) {
    const auto option = option_of(row, "intrinsic", catalog);
    auto& slots = staged[row.fields[0]];
    slots.resize(catalog.k(row.fields[0]));
    if (slots[option]) {
      throw Error(ErrorCode::ParseError, at_line("intrinsic", row.line) + ": duplicate option");
    }
    const double v = detail::parse_real(row.fields[2], at_line("intrinsic", row.line));
    if (v < 0.0) {
      throw Error(ErrorCode::ParseError, at_line("intrinsic", row.line) + ": negative score");
    }
    slots[option] = v;
  }
  IntrinsicScores scores;
  for (const auto& [term, slots] : staged) {
    std::vector<double> values;
    double sum = 0.0;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (!slots[i]) {
        throw Error(ErrorCode::SchemaMismatch, "intrinsic: term '" + term +
                                                   "' has no score for option " +
                                                   std::to_string(i + 1));
      }
      values.push_back(*slots[i]);
      sum += *slots[i];
    }
    if (sum < kIntrinsicSumLow || sum > kIntrinsicSumHigh) {
      throw Error(ErrorCode::ParseError, "intrinsic: scores for term '" + term + "' sum to " +
                                             detail::format_real(sum) + ", outside [0.98, 1.02]");
    }
    scores.emplace(term, ScoringVector::from_weights(values));
  }
  return scores;
}

FeedbackLog parse_feedback(const std::string& text, const TypeCatalog& catalog) {
  const auto table = read_table(text, "feedback", {"term_id", "option_index", "value"});
  FeedbackLog log;
  if (auto it = table.metadata.find("provenance"); it != table.metadata.end()) {
    log.set_provenance(parse_provenance(it->second));
  }
  if (auto it = table.metadata.find("generator"); it != table.metadata.end()) {
    log.set_generator(it->second);
  }
  std::map<std::string, std::vector<std::optional<std::uint64_t>>> staged;
  for (const auto& row : table.rows) {
    const auto option = option_of(row, "feedback", catalog);
    auto& slots = staged[row.fields[0]];
    slots.resize(catalog.k(row.fields[0]));
    if (slots[option]) {
      throw Error(ErrorCode::ParseError, at_line("feedback", row.line) + ": duplicate option");
    }
    slots[option] = detail::parse_count(row.fields[2], at_line("feedback", row.line));
  }
  for (const auto& [term, slots] : staged) {
    std::vector<std::uint64_t> counts;
    for (const auto& s : slots) counts.push_back(s.value_or(0));
    log.add(catalog, term, CountsVector(std::move(counts)));
  }
  return log;
}

AnswerKey parse_answers(const std::string& text, const TypeCatalog& catalog) {
  const auto table = read_table(text, "answers", {"term_id", "option_index"});
  AnswerKey answers;
  for (const auto& row : table.rows) {
    const auto option = option_of(row, "answers", catalog);
    if (!answers.emplace(row.fields[0], option).second) {
      throw Error(ErrorCode::ParseError, at_line("answers", row.line) + ": term '" +
                                             row.fields[0] + "' has more than one answer");
    }
  }
  return answers;
}

TypeCatalog load_catalog(const std::string& path) {
  return parse_catalog(detail::read_file(path));
}

IntrinsicScores load_intrinsic(const std::string& path, const TypeCatalog& catalog) {
  return parse_intrinsic(detail::read_file(path), catalog);
}

FeedbackLog load_feedback(const std::string& path, const TypeCatalog& catalog) {
  return parse_feedback(detail::read_file(path), catalog);
}

AnswerKey load_answers(const std::string& path, const TypeCatalog& catalog) {
  return parse_answers(detail::read_file(path), catalog);
}

void save_catalog(const TypeCatalog& catalog, const std::string& path) {
  detail::write_file_atomic(path, serialize_catalog(catalog));
}

void save_intrinsic(const IntrinsicScores& scores, const std::string& path) {
  detail::write_file_atomic(path, serialize_intrinsic(scores));
}

void save_feedback(const FeedbackLog& log, const std::string& path) {
  detail::write_file_atomic(path, serialize_feedback(log));
}

void save_answers(const AnswerKey& answers, const std::string& path) {
  detail::write_file_atomic(path, serialize_answers(answers));
}

}  // namespace bsmooth

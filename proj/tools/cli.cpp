#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "bsmooth/error.hpp"
#include "bsmooth/eval.hpp"
#include "bsmooth/logstore.hpp"
#include "bsmooth/profiles.hpp"
#include "bsmooth/profiling.hpp"
#include "bsmooth/simulator.hpp"
#include "bsmooth/smoothing.hpp"

namespace bsmooth::cli {

namespace {

struct Options {
  std::string catalog;
  std::string intrinsic;
  std::string feedback;
  std::string answers;
  std::string profile;
  std::string out;
  std::string histogram;
  std::string strategy;
  std::string term;
  double threshold = 0.75;
  double delta = 0.05;
  std::uint64_t seed = 42;
  std::uint64_t sessions = 10;
  double alpha_abandon = 0.6;
  double laziness = 0.05;
  bool random = false;
  bool implicit_mode = false;
  std::string default_choice = "top";
  std::string explicit_choices;
  std::size_t implicit_choice = 0;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void emit(const Options& o, const std::string& document, std::ostream& out) {
  if (o.out.empty()) {
    out << document;
    return;
  }
  std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
  if (!f || !(f << document)) throw Error(ErrorCode::IoError, "cannot write '" + o.out + "'");
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw Error(ErrorCode::InvalidArgument, std::string(flag) + " is required");
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::IoError:
    case ErrorCode::SchemaMismatch:
      return kExitIo;
    case ErrorCode::UnknownTerm:
    case ErrorCode::BadIndex:
      return kExitUnknownEntity;
    case ErrorCode::InvalidArgument:
    case ErrorCode::EmptyEvidence:
    case ErrorCode::OutOfRange:
    case ErrorCode::EmptySelection:
      return kExitConfig;
    default:
      return kExitFailure;
  }
}

ProfilingConfig profiling_config(const Options& o, const IntrinsicScores& intrinsic) {
  ProfilingConfig cfg{o.threshold, o.delta, {}};
  cfg.validate();
  for (const auto& [_, v] : intrinsic) cfg.population.push_back(v);
  return cfg;
}

void validate_threshold(const Options& o) { ProfilingConfig{o.threshold, o.delta, {}}.validate(); }

int profile_fit(const Options& o, std::ostream& out) {
  validate_threshold(o);
  require(o.catalog, "--catalog");
  require(o.intrinsic, "--intrinsic");
  const auto catalog = load_catalog(o.catalog);
  const auto intrinsic = load_intrinsic(o.intrinsic, catalog);
  const auto report = priors_profiling_report(profiling_config(o, intrinsic));

  out << "terms=" << intrinsic.size() << "\n";
  out << "mean_entropy=" << fmt(report.mean_entropy) << "\n";
  out << "prior2=(" << fmt(report.prior2[0]) << ", " << fmt(report.prior2[1]) << ")\n";
  out << "balance_weight=" << fmt(report.balance_weight) << "\n";
  out << "neighborhood_weight="
      << (report.neighborhood_weight ? fmt(*report.neighborhood_weight) : std::string("none"))
      << "\n";
  out << "beta0=" << fmt(report.fit.beta0) << "\n";
  out << "beta=" << fmt(report.fit.beta) << "\n";
  char lof[32];
  std::snprintf(lof, sizeof lof, "%.3e", report.fit.lack_of_fit);
  out << "lack_of_fit=" << lof << "\n";
  if (!o.out.empty()) {
    save_profile(report.profile, o.out);
    out << "profile written to " << o.out << "\n";
  }
  return kExitOk;
}

FeedbackLog load_feedback_or_empty(const Options& o, const TypeCatalog& catalog) {
  if (o.feedback.empty()) return FeedbackLog(Provenance::Implicit);
  return load_feedback(o.feedback, catalog);
}

int smooth(const Options& o, std::ostream& out) {
  require(o.catalog, "--catalog");
  require(o.intrinsic, "--intrinsic");
  require(o.term, "--term");
  validate_threshold(o);
  const auto catalog = load_catalog(o.catalog);
  if (!catalog.contains(o.term)) throw Error(ErrorCode::UnknownTerm, "unknown term '" + o.term + "'");
  const auto intrinsic = load_intrinsic(o.intrinsic, catalog);
  const auto it = intrinsic.find(o.term);
  if (it == intrinsic.end()) {
    throw Error(ErrorCode::UnknownTerm, "no intrinsic scores for '" + o.term + "'");
  }
  const auto log = load_feedback_or_empty(o, catalog);
  const CountsVector n = log.counts(catalog, o.term);

  // An explicit --strategy wins; otherwise a --profile file, otherwise LOGIT.
  Strategy strategy = Strategy::Logit;
  std::optional<WeightingProfile> profile;
  if (!o.strategy.empty()) strategy = parse_strategy(o.strategy);
  if (!o.profile.empty() && (o.strategy.empty() || strategy == Strategy::Logit)) {
    profile = load_profile(o.profile);
    if (o.strategy.empty()) {
      switch (profile->kind()) {
        case WeightingProfile::Kind::Mle: strategy = Strategy::Mle; break;
        case WeightingProfile::Kind::Step: strategy = Strategy::Step; break;
        case WeightingProfile::Kind::Linear: strategy = Strategy::Linear; break;
        case WeightingProfile::Kind::Logit: strategy = Strategy::Logit; break;
      }
    }
  } else {
    profile = profile_for(strategy, StrategyConfig{o.threshold, o.delta, std::nullopt}, intrinsic);
  }

  if (strategy == Strategy::Mle && n.total() == 0) {
    throw Error(ErrorCode::EmptyEvidence,
                "MLE needs feedback: the log for '" + o.term +
                    "' is empty, so the relative frequencies are undefined");
  }
  double entropy = std::nan("");
  double weight = 0.0;
  ScoringVector posterior = it->second;
  if (strategy != Strategy::Intr) {
    const auto result = bsmooth(it->second, n, *profile);
    posterior = result.posterior;
    entropy = result.evidence_entropy;
    weight = result.evidence_weight;
  }
  const auto ranked = rank(o.term, posterior, std::string(to_string(strategy)));
  const auto& labels = catalog.labels(o.term);

  out << "term=" << o.term << "\n";
  out << "strategy=" << to_string(strategy) << "\n";
  out << "feedback_total=" << n.total() << "\n";
  out << "entropy=" << (std::isnan(entropy) ? std::string("none") : fmt(entropy)) << "\n";
  out << "evidence_weight=" << fmt(weight) << "\n";
  out << "rank,option_index,label,score\n";
  for (std::size_t r = 0; r < ranked.ranking.size(); ++r) {
    const std::size_t i = ranked.ranking[r];
    out << r + 1 << "," << i + 1 << "," << labels[i] << "," << fmt(posterior[i]) << "\n";
  }
  return kExitOk;
}

int simulate(const Options& o, std::ostream& out) {
  require(o.catalog, "--catalog");
  if (o.random == o.implicit_mode) {
    throw Error(ErrorCode::InvalidArgument, "choose exactly one of --random or --implicit");
  }
  const auto catalog = load_catalog(o.catalog);
  if (o.random) {
    emit(o, serialize_feedback(simulate_random_log(catalog, o.seed)), out);
    return kExitOk;
  }

  require(o.intrinsic, "--intrinsic");
  require(o.feedback, "--feedback");
  if (o.default_choice != "top" && o.default_choice != "worst") {
    throw Error(ErrorCode::InvalidArgument, "--default must be 'top' or 'worst'");
  }
  const auto intrinsic = load_intrinsic(o.intrinsic, catalog);
  const auto explicit_log = load_feedback(o.feedback, catalog);
  std::map<std::string, ScoringVector> preferences;
  std::map<std::string, std::size_t> defaults;
  for (const auto& term : catalog.term_ids()) {
    const auto x = intrinsic.find(term);
    if (x == intrinsic.end()) throw Error(ErrorCode::UnknownTerm, "no intrinsic scores for '" + term + "'");
    const auto ranked = rank(term, x->second);
    defaults.emplace(term, o.default_choice == "top" ? ranked.ranking.front() : ranked.ranking.back());
    const CountsVector n = explicit_log.counts(catalog, term);
    if (n.total() == 0) throw Error(ErrorCode::EmptyEvidence, "no explicit feedback for '" + term + "'");
    preferences.emplace(term, normalize_counts(n));
  }
  emit(o,
       serialize_feedback(simulate_implicit_log(catalog, preferences, defaults, o.alpha_abandon,
                                                o.laziness, o.sessions, o.seed)),
       out);
  return kExitOk;
}

std::set<std::size_t> parse_choices(const std::string& text) {
  std::set<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || v == 0) throw Error(ErrorCode::InvalidArgument, "bad option index '" + item + "'");
    out.insert(v - 1);
  }
  return out;
}

int ingest(const Options& o, std::ostream& out) {
  require(o.catalog, "--catalog");
  require(o.feedback, "--feedback");
  require(o.term, "--term");
  const bool has_explicit = !o.explicit_choices.empty();
  const bool has_implicit = o.implicit_choice != 0;
  if (has_explicit == has_implicit) {
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --explicit or --implicit");
  }
  const auto catalog = load_catalog(o.catalog);
  const Provenance provenance = has_explicit ? Provenance::Explicit : Provenance::Implicit;
  FeedbackLog log = std::filesystem::exists(o.feedback) ? load_feedback(o.feedback, catalog)
                                                        : FeedbackLog(provenance);
  if (has_explicit) {
    log.ingest_explicit(catalog, o.term, parse_choices(o.explicit_choices));
  } else {
    log.ingest_implicit(catalog, o.term, o.implicit_choice - 1);
  }
  const std::string target = o.out.empty() ? o.feedback : o.out;
  save_feedback(log, target);
  const CountsVector n = log.counts(catalog, o.term);
  out << "term=" << o.term << " counts=";
  for (std::size_t i = 0; i < n.size(); ++i) out << (i ? "," : "") << n[i];
  out << " written to " << target << "\n";
  return kExitOk;
}

int evaluate(const Options& o, std::ostream& out) {
  require(o.catalog, "--catalog");
  require(o.intrinsic, "--intrinsic");
  require(o.answers, "--answers");
  validate_threshold(o);
  const auto catalog = load_catalog(o.catalog);
  const auto intrinsic = load_intrinsic(o.intrinsic, catalog);
  const auto answers = load_answers(o.answers, catalog);
  const auto log = load_feedback_or_empty(o, catalog);

  StrategyConfig cfg{o.threshold, o.delta, std::nullopt};
  if (!o.profile.empty()) cfg.logit = load_profile(o.profile);
  const auto report = compare_strategies(intrinsic, log, answers, cfg);
  emit(o, format_report(report), out);

  if (!o.histogram.empty()) {
    // Terms bucketed by the entropy of their feedback frequencies; a hit means
    // the feedback alone ranks the relevant option first. Terms without
    // feedback fall back to the intrinsic scores.
    std::map<std::string, ScoringVector> vectors;
    std::map<std::string, int> hits;
    for (const auto& [term, _] : answers) {
      const CountsVector n = log.counts(catalog, term);
      ScoringVector v = n.total() > 0 ? normalize_counts(n) : intrinsic.at(term);
      hits[term] = precision_at_1(rank(term, v), answers);
      vectors.emplace(term, std::move(v));
    }
    const auto doc = format_histogram(entropy_histogram(vectors, hits));
    std::ofstream f(o.histogram, std::ios::binary | std::ios::trunc);
    if (!f || !(f << doc)) throw Error(ErrorCode::IoError, "cannot write '" + o.histogram + "'");
  }
  return kExitOk;
}

void add_datasets(CLI::App* cmd, Options& o, bool feedback, bool answers) {
  cmd->add_option("--catalog", o.catalog, "Catalog file (term_id,option_index,label)");
  cmd->add_option("--intrinsic", o.intrinsic, "Intrinsic scores file (term_id,option_index,value)");
  if (feedback) cmd->add_option("--feedback", o.feedback, "Feedback counts file (term_id,option_index,value)");
  if (answers) cmd->add_option("--answers", o.answers, "Answer key file (term_id,option_index)");
}

void add_tuning(CLI::App* cmd, Options& o) {
  cmd->add_option("--ambiguity-threshold", o.threshold, "Ambiguity threshold D")->capture_default_str();
  cmd->add_option("--delta", o.delta, "Neighborhood width for the fourth constraint")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Entropy-weighted smoothing of intrinsic scores with feedback logs", "bsmooth"};
  app.require_subcommand(1);

  auto* fit = app.add_subcommand("profile-fit", "Fit the LOGIT weighting profile from intrinsic scores");
  add_datasets(fit, o, false, false);
  add_tuning(fit, o);
  fit->add_option("--out", o.out, "Where to write the profile document");

  auto* sm = app.add_subcommand("smooth", "Rank one term's options under a strategy or profile");
  add_datasets(sm, o, true, false);
  add_tuning(sm, o);
  sm->add_option("--term", o.term, "Term id")->required();
  sm->add_option("--profile", o.profile, "Profile document from profile-fit");
  sm->add_option("--strategy", o.strategy, "intr|mle|step|linear|logit (default: profile kind, else logit)");

  auto* sim = app.add_subcommand("simulate", "Generate a synthetic feedback log");
  add_datasets(sim, o, true, false);
  sim->add_flag("--random", o.random, "Uniform integer counts 0..10 per option");
  sim->add_flag("--implicit", o.implicit_mode,
                "Sessions drawn from the --feedback preferences with lazy default acceptance");
  sim->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  sim->add_option("--sessions", o.sessions, "Sessions per term")->capture_default_str();
  sim->add_option("--alpha-abandon", o.alpha_abandon, "Abandonment rate")->capture_default_str();
  sim->add_option("--laziness", o.laziness, "Probability of accepting the default")->capture_default_str();
  sim->add_option("--default", o.default_choice, "Default option shown: top|worst intrinsic option")
      ->capture_default_str();
  sim->add_option("--out", o.out, "Output feedback file (standard output if absent)");

  auto* ing = app.add_subcommand("ingest", "Add one feedback event to a feedback file");
  ing->add_option("--catalog", o.catalog, "Catalog file");
  ing->add_option("--feedback", o.feedback, "Feedback file to update (created if missing)");
  ing->add_option("--term", o.term, "Term id")->required();
  auto* ex = ing->add_option("--explicit", o.explicit_choices, "Selected options, 1-based, comma separated");
  ing->add_option("--implicit", o.implicit_choice, "Chosen option, 1-based")->excludes(ex);
  ing->add_option("--out", o.out, "Write the updated log here instead of in place");

  auto* ev = app.add_subcommand("evaluate", "P@1 and MRR for every strategy");
  add_datasets(ev, o, true, true);
  add_tuning(ev, o);
  ev->add_option("--profile", o.profile, "LOGIT profile document (fitted from --intrinsic if absent)");
  ev->add_option("--histogram", o.histogram, "Write the entropy-range histogram here");
  ev->add_option("--out", o.out, "Write the report here instead of standard output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*fit) return profile_fit(o, out);
    if (*sm) return smooth(o, out);
    if (*sim) return simulate(o, out);
    if (*ing) return ingest(o, out);
    if (*ev) return evaluate(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace bsmooth::cli

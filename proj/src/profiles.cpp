#include "bsmooth/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bsmooth/error.hpp"
#include "text.hpp"

namespace bsmooth {

WeightingProfile WeightingProfile::mle() { return {}; }

WeightingProfile WeightingProfile::step(double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "STEP threshold must lie in [0, 1]");
  }
  WeightingProfile p;
  p.kind_ = Kind::Step;
  p.threshold_ = threshold;
  return p;
}

WeightingProfile WeightingProfile::linear() {
  WeightingProfile p;
  p.kind_ = Kind::Linear;
  return p;
}

WeightingProfile WeightingProfile::logit(double beta0, double beta) {
  if (!(beta0 > 0.0) || !(beta > 0.0) || !std::isfinite(beta0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::InvalidArgument, "LOGIT needs finite beta0 > 0 and beta > 0");
  }
  WeightingProfile p;
  p.kind_ = Kind::Logit;
  p.beta0_ = beta0;
  p.beta_ = beta;
  return p;
}

WeightingProfile WeightingProfile::with_provenance(double threshold,
                                                   std::optional<double> delta) const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "ambiguity threshold must lie in [0, 1]");
  }
  WeightingProfile p = *this;
  p.threshold_ = threshold;
  p.delta_ = delta;
  return p;
}

double logistic_curve(double beta0, double beta, double x) noexcept {
  const double exponent = std::clamp(-(beta0 - beta * x), -kLogitExponentClamp,
                                     kLogitExponentClamp);
  return 1.0 / (1.0 + std::exp(exponent));
}

double WeightingProfile::weight_of_evidence(double entropy) const {
  if (!(entropy >= 0.0 && entropy <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "entropy must lie in [0, 1]");
  }
  switch (kind_) {
    case Kind::Mle: return 1.0;
    case Kind::Step: return entropy <= threshold_ ? 1.0 : 0.0;
    case Kind::Linear: return 1.0 - entropy;
    case Kind::Logit: return logistic_curve(beta0_, beta_, entropy);
  }
  return 1.0;
}

std::string_view to_string(WeightingProfile::Kind kind) noexcept {
  switch (kind) {
    case WeightingProfile::Kind::Mle: return "mle";
    case WeightingProfile::Kind::Step: return "step";
    case WeightingProfile::Kind::Linear: return "linear";
    case WeightingProfile::Kind::Logit: return "logit";
  }
  return "mle";
}

WeightingProfile::Kind parse_kind(std::string_view name) {
  const std::string lower = detail::to_lower(name);
  if (lower == "mle") return WeightingProfile::Kind::Mle;
  if (lower == "step") return WeightingProfile::Kind::Step;
  if (lower == "linear") return WeightingProfile::Kind::Linear;
  if (lower == "logit") return WeightingProfile::Kind::Logit;
  throw Error(ErrorCode::InvalidArgument, "unknown profile kind '" + std::string(name) + "'");
}

std::string serialize_profile(const WeightingProfile& profile) {
  std::string out;
  out += "kind=" + std::string(to_string(profile.kind())) + "\n";
  out += "D=" + detail::format_real(profile.threshold()) + "\n";
  out += "delta=" + (profile.delta() ? detail::format_real(*profile.delta()) : std::string()) +
         "\n";
  out += "beta0=" + detail::format_real(profile.beta0()) + "\n";
  out += "beta=" + detail::format_real(profile.beta()) + "\n";
  return out;
}

WeightingProfile parse_profile(std::string_view document) {
  static constexpr std::string_view kKeys[] = {"kind", "D", "delta", "beta0", "beta"};
  std::map<std::string, std::string, std::less<>> values;
  std::size_t line_no = 0;
  for (const auto& raw : detail::split_lines(document)) {
    ++line_no;
    const std::string line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ParseError,
                  "profile line " + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = detail::trim(line.substr(0, eq));
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      throw Error(ErrorCode::ParseError,
                  "profile line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (values.count(key)) {
      throw Error(ErrorCode::ParseError,
                  "profile line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    values.emplace(std::move(key), detail::trim(line.substr(eq + 1)));
  }
  for (auto key : kKeys) {
    if (!values.count(key)) {
      throw Error(ErrorCode::ParseError, "profile is missing key '" + std::string(key) + "'");
    }
  }
  auto real = [&](std::string_view key) {
    return detail::parse_real(values.find(key)->second, std::string("profile key ") +
                                                             std::string(key));
  };
  WeightingProfile::Kind kind;
  try {
    kind = parse_kind(values.find("kind")->second);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, std::string("profile key kind: ") + e.what());
  }
  const double threshold = real("D");
  WeightingProfile profile = WeightingProfile::mle();
  switch (kind) {
    case WeightingProfile::Kind::Mle: break;
    case WeightingProfile::Kind::Step: profile = WeightingProfile::step(threshold); break;
    case WeightingProfile::Kind::Linear: profile = WeightingProfile::linear(); break;
    case WeightingProfile::Kind::Logit:
      profile = WeightingProfile::logit(real("beta0"), real("beta"));
      break;
  }
  const std::string& delta = values.find("delta")->second;
  std::optional<double> parsed_delta;
  if (!delta.empty()) parsed_delta = real("delta");
  return profile.with_provenance(threshold, parsed_delta);
}

void save_profile(const WeightingProfile& profile, const std::string& path) {
  detail::write_file_atomic(path, serialize_profile(profile));
}

WeightingProfile load_profile(const std::string& path) {
  return parse_profile(detail::read_file(path));
}

}  // namespace bsmooth

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace bsmooth {

/// How much weight the feedback log gets as a function of its entropy.
///
///   MLE     always 1
///   STEP    1 if H <= D else 0
///   LINEAR  1 - H
///   LOGIT   1 / (1 + exp(-(beta0 - beta H)))
class WeightingProfile {
 public:
  enum class Kind { Mle, Step, Linear, Logit };

  static WeightingProfile mle();
  static WeightingProfile step(double threshold);
  static WeightingProfile linear();
  static WeightingProfile logit(double beta0, double beta);

  Kind kind() const noexcept { return kind_; }
  double threshold() const noexcept { return threshold_; }
  double beta0() const noexcept { return beta0_; }
  double beta() const noexcept { return beta_; }

  /// Neighborhood width used when the profile was fitted. Carried along for
  /// the serialized document only; evaluation ignores it.
  std::optional<double> delta() const noexcept { return delta_; }
  WeightingProfile with_provenance(double threshold, std::optional<double> delta) const;

  /// Weight of evidence for entropy H in [0, 1].
  double weight_of_evidence(double entropy) const;

  friend bool operator==(const WeightingProfile&, const WeightingProfile&) = default;

 private:
  WeightingProfile() = default;

  Kind kind_ = Kind::Mle;
  double threshold_ = 0.0;
  double beta0_ = 0.0;
  double beta_ = 0.0;
  std::optional<double> delta_;
};

std::string_view to_string(WeightingProfile::Kind kind) noexcept;
WeightingProfile::Kind parse_kind(std::string_view name);

// Exponent clamp for the logistic; keeps steep fitted profiles finite.
inline constexpr double kLogitExponentClamp = 700.0;

/// Logistic 1 / (1 + exp(-(beta0 - beta x))) with the exponent clamped.
double logistic_curve(double beta0, double beta, double x) noexcept;

// Profile documents are `key=value` lines in the fixed order
// kind, D, delta, beta0, beta; reals use 17 significant digits.
std::string serialize_profile(const WeightingProfile& profile);
WeightingProfile parse_profile(std::string_view document);

void save_profile(const WeightingProfile& profile, const std::string& path);
WeightingProfile load_profile(const std::string& path);

}  // namespace bsmooth

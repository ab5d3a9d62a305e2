#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "bsmooth/profiles.hpp"
#include "helpers.hpp"

using namespace bsmooth;
using testing::code_of;

TEST_CASE("weight of evidence per kind") {
  CHECK(WeightingProfile::mle().weight_of_evidence(0.9) == 1.0);
  CHECK(WeightingProfile::linear().weight_of_evidence(0.75) == doctest::Approx(0.25));

  const auto step = WeightingProfile::step(0.75);
  CHECK(step.weight_of_evidence(0.75) == 1.0);
  CHECK(step.weight_of_evidence(0.7501) == 0.0);

  const auto logit = WeightingProfile::logit(19.654, 27.994);
  const double expected = 1.0 / (1.0 + std::exp(-(19.654 - 27.994 * 0.397)));
  CHECK(logit.weight_of_evidence(0.397) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(logit.weight_of_evidence(0.397) == doctest::Approx(0.9998).epsilon(1e-4));

  CHECK(code_of([&] { logit.weight_of_evidence(1.2); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { WeightingProfile::logit(0.0, 1.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { WeightingProfile::logit(1.0, -1.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { WeightingProfile::step(1.5); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("fitted rows stay finite and hit the anchors") {
  // Three-point fits for every prior, plus the four-point fits for x1 and x0.
  // The remaining four-point rows leave up to 0.07 weight at H = 1.
  const double rows[][2] = {{244.559, 324.925}, {253.127, 336.633}, {261.633, 348.343},
                            {181.671, 242.399}, {162.432, 217.703}, {50.270, 68.766},
                            {138.507, 188.908}, {19.654, 27.994},   {842.59, 1126.5}};
  for (const auto& r : rows) {
    const auto p = WeightingProfile::logit(r[0], r[1]);
    CHECK(std::abs(p.weight_of_evidence(0.0) - 1.0) <= 1e-3);
    CHECK(std::abs(p.weight_of_evidence(1.0)) <= 1e-3);
    for (int i = 0; i <= 100; ++i) {
      const double h = i / 100.0;
      const double w = p.weight_of_evidence(h);
      CHECK(std::isfinite(w));
      CHECK(w >= 0.0);
      CHECK(w <= 1.0);
    }
  }
}

TEST_CASE("monotonicity") {
  const WeightingProfile profiles[] = {WeightingProfile::logit(19.654, 27.994),
                                       WeightingProfile::logit(1.0, 1.0),
                                       WeightingProfile::linear()};
  for (const auto& p : profiles) {
    double prev = p.weight_of_evidence(0.0);
    for (int i = 1; i <= 1000; ++i) {
      const double w = p.weight_of_evidence(i / 1000.0);
      CHECK(w < prev);
      prev = w;
    }
  }
  // A moderate logit never reaches the closed endpoints.
  const auto soft = WeightingProfile::logit(2.0, 3.0);
  CHECK(soft.weight_of_evidence(0.0) < 1.0);
  CHECK(soft.weight_of_evidence(1.0) > 0.0);
}

TEST_CASE("logistic clamp avoids overflow") {
  CHECK(logistic_curve(842.59, 1126.5, 0.0) == 1.0);
  CHECK(logistic_curve(-5000.0, 0.0, 0.0) >= 0.0);
  CHECK(std::isfinite(logistic_curve(-5000.0, 0.0, 0.0)));
}

TEST_CASE("profile documents round trip") {
  const auto fitted = WeightingProfile::logit(19.654000000000001, 27.993999999999).with_provenance(0.75, 0.05);
  const auto doc = serialize_profile(fitted);
  CHECK(doc.find("kind=logit\n") == 0);
  CHECK(parse_profile(doc) == fitted);

  for (const auto& p : {WeightingProfile::mle(), WeightingProfile::step(0.75), WeightingProfile::linear()}) {
    CHECK(parse_profile(serialize_profile(p)) == p);
  }

  const auto path = std::filesystem::temp_directory_path() / "bsmooth_profile_test.txt";
  save_profile(fitted, path.string());
  CHECK(load_profile(path.string()) == fitted);
  std::filesystem::remove(path);
}

TEST_CASE("profile parse errors") {
  CHECK(code_of([] { parse_profile("kind=logit\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_profile("kind=cubic\nD=\ndelta=\nbeta0=\nbeta=\n"); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { parse_profile("kind=mle\nkind=mle\nD=\ndelta=\nbeta0=\nbeta=\n"); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { load_profile("/nonexistent/profile.txt"); }) == ErrorCode::ParseError);
  CHECK(parse_kind("LOGIT") == WeightingProfile::Kind::Logit);
}

TEST_CASE("soft four-point rows keep visible weight at maximal entropy") {
  CHECK(WeightingProfile::logit(9.628, 12.272).weight_of_evidence(1.0) == doctest::Approx(0.0663).epsilon(0.01));
  CHECK(WeightingProfile::logit(10.854, 15.841).weight_of_evidence(1.0) > 1e-3);
}

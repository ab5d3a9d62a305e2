#include <doctest.h>

#include <filesystem>

#include "bsmooth/logstore.hpp"
#include "helpers.hpp"

using namespace bsmooth;
using testing::code_of;

namespace {

const std::string kData = BSMOOTH_DATA_DIR;

TypeCatalog small_catalog() {
  TypeCatalog c;
  c.add_term("tom hanks", {"CHAR_NAME.name", "NAME.name", "TITLE.title", "MOVIE_INFO.info",
                           "ROLE_TYPE.role"});
  c.add_term("Q7", {"a", "b", "c"});
  return c;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("bsmooth_logstore_" + name);
}

}  // namespace

TEST_CASE("catalog validation") {
  TypeCatalog c;
  CHECK(code_of([&] { c.add_term("x", {"only"}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { c.add_term("x", {"a", "a"}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { c.add_term("a,b", {"a", "b"}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { c.add_term(" padded", {"a", "b"}); }) == ErrorCode::InvalidArgument);
  c.add_term("x", {"a", "b"});
  CHECK(code_of([&] { c.add_term("x", {"a", "b"}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { c.labels("y"); }) == ErrorCode::UnknownTerm);
}

TEST_CASE("explicit ingestion") {
  const auto c = small_catalog();
  FeedbackLog log(Provenance::Explicit);
  log.ingest_explicit(c, "tom hanks", {1, 2});
  CHECK(log.counts(c, "tom hanks") == CountsVector{0, 1, 1, 0, 0});

  FeedbackLog workers(Provenance::Explicit);
  for (int i = 0; i < 10; ++i) workers.ingest_explicit(c, "tom hanks", {1});
  CHECK(workers.counts(c, "tom hanks") == CountsVector{0, 10, 0, 0, 0});

  CHECK(code_of([&] { log.ingest_explicit(c, "tom hanks", {}); }) == ErrorCode::EmptySelection);
  CHECK(code_of([&] { log.ingest_explicit(c, "tom hanks", {7}); }) == ErrorCode::BadIndex);
  CHECK(code_of([&] { log.ingest_explicit(c, "nobody", {0}); }) == ErrorCode::UnknownTerm);
}

TEST_CASE("implicit ingestion") {
  const auto c = small_catalog();
  FeedbackLog log;
  log.add(c, "tom hanks", {1, 7, 0, 1, 0});
  log.ingest_implicit(c, "tom hanks", 1);
  CHECK(log.counts(c, "tom hanks") == CountsVector{1, 8, 0, 1, 0});

  log.ingest_implicit(c, "Q7", 0);
  CHECK(log.counts(c, "Q7") == CountsVector{1, 0, 0});
  CHECK(code_of([&] { log.ingest_implicit(c, "tom hanks", 8); }) == ErrorCode::BadIndex);
  CHECK(code_of([&] { log.add(c, "Q7", {1, 1}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("ingestion order does not matter") {
  const auto c = small_catalog();
  testing::Gen gen(51);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::size_t> events(20);
    std::vector<std::uint64_t> tally(5, 0);
    for (auto& e : events) {
      e = gen.index(5);
      ++tally[e];
    }
    FeedbackLog forward, backward;
    const CountsVector start{3, 1, 4, 1, 5};
    forward.add(c, "tom hanks", start);
    backward.add(c, "tom hanks", start);
    for (auto e : events) forward.ingest_implicit(c, "tom hanks", e);
    for (auto it = events.rbegin(); it != events.rend(); ++it) backward.ingest_implicit(c, "tom hanks", *it);
    CHECK(forward == backward);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(forward.counts(c, "tom hanks")[i] == start[i] + tally[i]);
    }
  }
}

TEST_CASE("parsing errors") {
  const auto c = small_catalog();
  const std::string header = "term_id,option_index,value\n";
  CHECK(code_of([&] { parse_feedback("term,option,value\n", c); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { parse_feedback(header + "Q7,1\n", c); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { parse_feedback(header + "Q7,1,many\n", c); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { parse_feedback(header + "Q8,1,1\n", c); }) == ErrorCode::SchemaMismatch);
  CHECK(code_of([&] { parse_feedback(header + "Q7,4,1\n", c); }) == ErrorCode::SchemaMismatch);
  CHECK(code_of([&] { parse_feedback(header + "Q7,0,1\n", c); }) == ErrorCode::ParseError);

  try {
    parse_feedback(header + "Q7,1,1\nQ7,2\n", c);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  CHECK(code_of([&] { parse_intrinsic(header + "Q7,1,0.5\nQ7,2,0.5\n", c); }) ==
        ErrorCode::SchemaMismatch);
  CHECK(code_of([&] { parse_intrinsic(header + "Q7,1,0.5\nQ7,2,0.3\nQ7,3,0.1\n", c); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([&] { parse_answers("term_id,option_index\nQ7,1\nQ7,2\n", c); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { parse_catalog("term_id,option_index,label\nx,1,a\nx,3,c\n"); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { load_catalog("/nonexistent/catalog.csv"); }) == ErrorCode::ParseError);
}

TEST_CASE("intrinsic rows are renormalized inside the band") {
  const auto c = small_catalog();
  const auto scores = parse_intrinsic(
      "term_id,option_index,value\n"
      "tom hanks,1,0.2793\ntom hanks,2,0.2346\ntom hanks,3,0.2207\ntom hanks,4,0.1508\n"
      "tom hanks,5,0.1145\n",
      c);
  const auto& v = scores.at("tom hanks");
  CHECK(v[0] == doctest::Approx(0.2793 / 0.9999).epsilon(1e-15));
}

TEST_CASE("feedback metadata and missing options") {
  const auto c = small_catalog();
  const auto log = parse_feedback(
      "# provenance=random\n# generator=mt19937_64 seed=7\nterm_id,option_index,value\nQ7,2,4\n", c);
  CHECK(log.provenance() == Provenance::Random);
  CHECK(log.generator() == std::string("mt19937_64 seed=7"));
  CHECK(log.counts(c, "Q7") == CountsVector{0, 4, 0});
  CHECK(log.counts(c, "tom hanks") == CountsVector::zeros(5));
}

TEST_CASE("round trip of the shipped fixture") {
  const auto catalog = load_catalog(kData + "/catalog.csv");
  const auto intrinsic = load_intrinsic(kData + "/intrinsic.csv", catalog);
  const auto feedback = load_feedback(kData + "/feedback.csv", catalog);
  const auto explicit_log = load_feedback(kData + "/explicit.csv", catalog);
  const auto answers = load_answers(kData + "/answers.csv", catalog);
  CHECK(catalog.terms().size() == 62);
  CHECK(intrinsic.size() == 62);
  CHECK(answers.size() == 62);
  CHECK(feedback.provenance() == Provenance::Implicit);
  CHECK(explicit_log.provenance() == Provenance::Explicit);
  CHECK(feedback.counts(catalog, "tom hanks") == CountsVector{1, 8, 0, 1, 0});
  CHECK(answers.at("tom hanks") == 1);

  const auto dir = temp_file("roundtrip");
  std::filesystem::create_directories(dir);
  save_catalog(catalog, (dir / "c.csv").string());
  save_intrinsic(intrinsic, (dir / "i.csv").string());
  save_feedback(feedback, (dir / "f.csv").string());
  save_answers(answers, (dir / "a.csv").string());
  const auto catalog2 = load_catalog((dir / "c.csv").string());
  CHECK(catalog2 == catalog);
  CHECK(load_intrinsic((dir / "i.csv").string(), catalog2) == intrinsic);
  CHECK(load_feedback((dir / "f.csv").string(), catalog2) == feedback);
  CHECK(load_answers((dir / "a.csv").string(), catalog2) == answers);
  std::filesystem::remove_all(dir);
}

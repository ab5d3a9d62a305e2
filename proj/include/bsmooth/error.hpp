#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bsmooth {

enum class ErrorCode {
  InvalidArgument,
  ZeroTotal,
  DimensionMismatch,
  NoSolution,
  NotUnique,
  NotDisagreed,
  OutOfRange,
  EmptyPopulation,
  Degenerate,
  NoConvergence,
  AllZero,
  EmptyEvidence,
  UnknownTerm,
  BadIndex,
  EmptySelection,
  ParseError,
  SchemaMismatch,
  IoError,
  TermSetMismatch,
  TooFewTerms,
  EmptyResults,
  EmptyQuery,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure in the library is reported through this one exception type;
// callers that need to branch (CLI exit codes, Python bindings) use code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bsmooth

#include "bsmooth/error.hpp"

namespace bsmooth {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroTotal: return "ZeroTotal";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::NotUnique: return "NotUnique";
    case ErrorCode::NotDisagreed: return "NotDisagreed";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::EmptyPopulation: return "EmptyPopulation";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::EmptyEvidence: return "EmptyEvidence";
    case ErrorCode::UnknownTerm: return "UnknownTerm";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::TermSetMismatch: return "TermSetMismatch";
    case ErrorCode::TooFewTerms: return "TooFewTerms";
    case ErrorCode::EmptyResults: return "EmptyResults";
    case ErrorCode::EmptyQuery: return "EmptyQuery";
  }
  return "Unknown";
}

}  // namespace bsmooth

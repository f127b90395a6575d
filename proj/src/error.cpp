#include "msq/error.hpp"

namespace msq {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::UnknownAspect: return "UnknownAspect";
    case ErrorCode::UnknownCommunityId: return "UnknownCommunityId";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::OverlappingDimensions: return "OverlappingDimensions";
    case ErrorCode::OverlappingAspects: return "OverlappingAspects";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::DuplicateReviewId: return "DuplicateReviewId";
    case ErrorCode::TranslationFailure: return "TranslationFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::ZeroNormVector: return "ZeroNormVector";
    case ErrorCode::EmptyVocabulary: return "EmptyVocabulary";
    case ErrorCode::NoReviews: return "NoReviews";
    case ErrorCode::PartitionMismatch: return "PartitionMismatch";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::UnknownAspect:
    case ErrorCode::UnknownCommunityId:
    case ErrorCode::DuplicateLabel:
    case ErrorCode::OverlappingDimensions:
    case ErrorCode::OverlappingAspects:
      return ErrorCategory::Config;
    case ErrorCode::PartitionMismatch:
    case ErrorCode::InvariantViolation:
      return ErrorCategory::Internal;
    default:
      return ErrorCategory::Data;
  }
}

int exit_code_for(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Config: return 2;
    case ErrorCategory::Data: return 3;
    case ErrorCategory::Internal: return 4;
  }
  return 4;
}

namespace {
std::string decorate(ErrorCode code, const std::string& message,
                     std::optional<std::size_t> line) {
  std::string out(to_string(code));
  if (line) out += " (line " + std::to_string(*line) + ")";
  out += ": ";
  out += message;
  return out;
}
}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(decorate(code, message, line)),
      code_(code),
      line_(line) {}

}  // namespace msq

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace msq {

enum class ErrorCode {
  // configuration
  ConfigError,
  UnknownAspect,
  UnknownCommunityId,
  DuplicateLabel,
  OverlappingDimensions,
  OverlappingAspects,
  // data
  IoError,
  MalformedRecord,
  MissingField,
  DuplicateReviewId,
  TranslationFailure,
  DimensionMismatch,
  NonFiniteValue,
  EmptyFile,
  ZeroNormVector,
  EmptyVocabulary,
  NoReviews,
  // internal
  PartitionMismatch,
  InvariantViolation,
};

enum class ErrorCategory { Config, Data, Internal };

std::string_view to_string(ErrorCode code);
ErrorCategory category_of(ErrorCode code);

/// Process exit status for an error category: 2 config, 3 data, 4 internal.
int exit_code_for(ErrorCategory category);

/// The single exception type thrown by the library. `line` is set for
/// errors tied to a physical input line (1-based).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace msq

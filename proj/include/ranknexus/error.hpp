#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ranknexus {

enum class ErrorCode {
  kDuplicateIndex,
  kOutOfRange,
  kWrongLength,
  kLengthMismatch,
  kDimensionMismatch,
  kZeroVector,
  kEmptyCollection,
  kTooLarge,
  kKTooLarge,
  kNonPositiveTemperature,
  kTooFewDocs,
  kMissingModality,
  kUnparseable,
  kStrictRepair,
  kBackendError,
  kMissingDoc,
  kScriptExhausted,
  kMalformedLine,
  kInvariantViolation,
  kTooShort,
  kInvalidArgument,
  kIo,
};

std::string_view ToString(ErrorCode code);

// Single exception type for the library. `position` carries a 1-based
// location when the error refers to one (sequence index, line number).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

}  // namespace ranknexus

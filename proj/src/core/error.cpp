#include "ranknexus/error.hpp"

namespace ranknexus {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateIndex: return "DuplicateIndex";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kWrongLength: return "WrongLength";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kEmptyCollection: return "EmptyCollection";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kKTooLarge: return "KTooLarge";
    case ErrorCode::kNonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorCode::kTooFewDocs: return "TooFewDocs";
    case ErrorCode::kMissingModality: return "MissingModality";
    case ErrorCode::kUnparseable: return "Unparseable";
    case ErrorCode::kStrictRepair: return "StrictRepair";
    case ErrorCode::kBackendError: return "BackendError";
    case ErrorCode::kMissingDoc: return "MissingDoc";
    case ErrorCode::kScriptExhausted: return "ScriptExhausted";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kTooShort: return "TooShort";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

namespace {

std::string Format(ErrorCode code, const std::string& message,
                   std::optional<std::size_t> position) {
  std::string out(ToString(code));
  if (position) {
    out += code == ErrorCode::kMalformedLine ? " at line " : " at position ";
    out += std::to_string(*position);
  }
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> position)
    : std::runtime_error(Format(code, message, position)),
      code_(code),
      position_(position) {}

}  // namespace ranknexus

#include "sigmarev/error.hpp"

namespace sigmarev {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::DuplicateDate: return "DuplicateDate";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidTicker: return "InvalidTicker";
    case ErrorCode::TransportError: return "TransportError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::InsufficientHistory: return "InsufficientHistory";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::NoOverlap: return "NoOverlap";
    case ErrorCode::SampleTooSmall: return "SampleTooSmall";
    case ErrorCode::SampleTooLarge: return "SampleTooLarge";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::UnknownDate: return "UnknownDate";
    case ErrorCode::EmptyUniverse: return "EmptyUniverse";
    case ErrorCode::DuplicateTicker: return "DuplicateTicker";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : Error(code, message, std::nullopt, std::nullopt) {}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> line,
             std::optional<int> status)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      line_(line),
      status_(status) {}

Error Error::at_line(ErrorCode code, std::size_t line, const std::string& message) {
  return Error(code, "line " + std::to_string(line) + ": " + message, line, std::nullopt);
}

Error Error::transport(const std::string& message, std::optional<int> status) {
  std::string text = message;
  if (status) text += " (HTTP " + std::to_string(*status) + ")";
  return Error(ErrorCode::TransportError, text, std::nullopt, status);
}

}  // namespace sigmarev

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sigmarev {

enum class ErrorCode {
  MalformedHeader,
  MalformedRow,
  DuplicateDate,
  EmptyInput,
  InvalidTicker,
  TransportError,
  IoError,
  InsufficientData,
  InsufficientHistory,
  LengthMismatch,
  ZeroVariance,
  NoOverlap,
  SampleTooSmall,
  SampleTooLarge,
  DegenerateSample,
  UnknownDate,
  EmptyUniverse,
  DuplicateTicker,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library-wide exception. Carries a machine-readable code plus the optional
/// 1-based input line (CSV parsing) or HTTP status (remote fetch).
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, std::optional<std::size_t> line,
        std::optional<int> status);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }
  std::optional<int> status() const noexcept { return status_; }

  static Error at_line(ErrorCode code, std::size_t line, const std::string& message);
  static Error transport(const std::string& message, std::optional<int> status);

private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
  std::optional<int> status_;
};

}  // namespace sigmarev

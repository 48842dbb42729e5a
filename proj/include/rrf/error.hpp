#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rrf {

enum class ErrorCode {
  DimensionMismatch,
  NonFiniteEntry,
  PsdDimInvalid,
  NotSymmetric,
  NoConvergence,
  DykstraNoConvergence,
  WrongCone,
  DimensionTooLarge,
  UnboundedEstimate,
  BadLabels,
  RaggedRows,
  SchemaError,
  UnsupportedBase,
  InvalidArgument,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::PsdDimInvalid: return "PsdDimInvalid";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DykstraNoConvergence: return "DykstraNoConvergence";
    case ErrorCode::WrongCone: return "WrongCone";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::UnboundedEstimate: return "UnboundedEstimate";
    case ErrorCode::BadLabels: return "BadLabels";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::UnsupportedBase: return "UnsupportedBase";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rrf

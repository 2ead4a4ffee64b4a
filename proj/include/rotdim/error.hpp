#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rotdim {

enum class ErrorCode {
  DuplicateEdge,
  SelfLoop,
  NonPositiveParameter,
  VertexOutOfRange,
  Disconnected,
  MissingEdge,
  NotIsolated,
  NotASeparator,
  LengthMismatch,
  NoConvergence,
  DisconnectedSupport,
  LPInfeasible,
  DegenerateSpectrum,
  ParameterOutOfRange,
  TooLarge,
  Parse,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::MissingEdge: return "MissingEdge";
    case ErrorCode::NotIsolated: return "NotIsolated";
    case ErrorCode::NotASeparator: return "NotASeparator";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DisconnectedSupport: return "DisconnectedSupport";
    case ErrorCode::LPInfeasible: return "LPInfeasible";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

/// Exception type thrown by every fallible operation in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rotdim

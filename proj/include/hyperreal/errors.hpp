#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperreal {

enum class ErrorCode {
  PositionOutOfRegion,
  KineticOnNonPhysical,
  KinematicOnPhysical,
  InvalidParameter,
  UnknownObject,
  UnknownDemo,
  IncompleteProfile,
  InvalidProfile,
  ScenarioError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PositionOutOfRegion: return "PositionOutOfRegion";
    case ErrorCode::KineticOnNonPhysical: return "KineticOnNonPhysical";
    case ErrorCode::KinematicOnPhysical: return "KinematicOnPhysical";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::UnknownObject: return "UnknownObject";
    case ErrorCode::UnknownDemo: return "UnknownDemo";
    case ErrorCode::IncompleteProfile: return "IncompleteProfile";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::ScenarioError: return "ScenarioError";
  }
  return "Unknown";
}

/// Engine error carrying a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hyperreal

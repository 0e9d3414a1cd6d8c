#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hyperreal/errors.hpp"
#include "hyperreal/script/ast.hpp"

namespace hyperreal::script {

enum class ScriptErrorKind { SyntaxError, UnknownBuiltin, TypeError, RuntimeFault, BudgetExceeded };

std::string_view to_string(ScriptErrorKind kind);

/// Compile-time or run-time script failure with its source location.
/// Gating faults also carry the engine error code behind them.
class ScriptError : public std::runtime_error {
 public:
  ScriptError(ScriptErrorKind kind, SourceLoc loc, const std::string& message,
              std::optional<ErrorCode> cause = std::nullopt)
      : std::runtime_error(message), kind_(kind), loc_(loc), cause_(cause) {}

  ScriptErrorKind kind() const noexcept { return kind_; }
  SourceLoc location() const noexcept { return loc_; }
  std::optional<ErrorCode> cause() const noexcept { return cause_; }

  /// `file:line:col: Kind: message`
  std::string format(std::string_view file) const;

 private:
  ScriptErrorKind kind_;
  SourceLoc loc_;
  std::optional<ErrorCode> cause_;
};

}  // namespace hyperreal::script

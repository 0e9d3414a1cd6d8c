#include "hyperreal/script/ast.hpp"

#include <sstream>

#include "hyperreal/script/diagnostics.hpp"
#include "hyperreal/script/value.hpp"

namespace hyperreal::script {

std::string_view to_string(ValueType type) {
  switch (type) {
    case ValueType::Void: return "void";
    case ValueType::Integer: return "integer";
    case ValueType::Float: return "float";
    case ValueType::Vector: return "vector";
    case ValueType::Rotation: return "rotation";
    case ValueType::String: return "string";
  }
  return "void";
}

std::string_view to_string(UnaryOp op) { return op == UnaryOp::Negate ? "-" : "!"; }

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

std::string_view to_string(AssignOp op) {
  switch (op) {
    case AssignOp::Set: return "=";
    case AssignOp::Add: return "+=";
    case AssignOp::Sub: return "-=";
    case AssignOp::Mul: return "*=";
    case AssignOp::Div: return "/=";
  }
  return "=";
}

const Handler* State::find(std::string_view event) const {
  for (const Handler& h : handlers) {
    if (h.event == event) return &h;
  }
  return nullptr;
}

const State* Script::find_state(std::string_view name) const {
  for (const State& s : states) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::size_t Script::state_index(std::string_view name) const {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].name == name) return i;
  }
  return states.size();
}

std::string_view to_string(ScriptErrorKind kind) {
  switch (kind) {
    case ScriptErrorKind::SyntaxError: return "SyntaxError";
    case ScriptErrorKind::UnknownBuiltin: return "UnknownBuiltin";
    case ScriptErrorKind::TypeError: return "TypeError";
    case ScriptErrorKind::RuntimeFault: return "RuntimeFault";
    case ScriptErrorKind::BudgetExceeded: return "BudgetExceeded";
  }
  return "ScriptError";
}

std::string ScriptError::format(std::string_view file) const {
  std::ostringstream out;
  out << file << ":" << loc_.line << ":" << loc_.column << ": " << to_string(kind_);
  if (cause_) out << "(" << to_string(*cause_) << ")";
  out << ": " << what();
  return out.str();
}

Value default_value(ValueType type) {
  switch (type) {
    case ValueType::Void: return std::monostate{};
    case ValueType::Integer: return std::int32_t{0};
    case ValueType::Float: return 0.0;
    case ValueType::Vector: return Vec3{};
    case ValueType::Rotation: return Quat{};
    case ValueType::String: return std::string{};
  }
  return std::monostate{};
}

Value coerce(const Value& v, ValueType target) {
  if (target == ValueType::Float && std::holds_alternative<std::int32_t>(v)) {
    return static_cast<double>(std::get<std::int32_t>(v));
  }
  return v;
}

std::string to_display(const Value& v) {
  std::ostringstream out;
  out.precision(9);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          out << "";
        } else if constexpr (std::is_same_v<T, Vec3>) {
          out << "<" << x.x << ", " << x.y << ", " << x.z << ">";
        } else if constexpr (std::is_same_v<T, Quat>) {
          out << "<" << x.x << ", " << x.y << ", " << x.z << ", " << x.s << ">";
        } else {
          out << x;
        }
      },
      v);
  return out.str();
}

}  // namespace hyperreal::script

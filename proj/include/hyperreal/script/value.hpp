#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "hyperreal/script/ast.hpp"
#include "hyperreal/vec3.hpp"

namespace hyperreal::script {

/// Runtime value; alternative index matches ValueType.
using Value = std::variant<std::monostate, std::int32_t, double, Vec3, Quat, std::string>;

inline ValueType type_of(const Value& v) { return static_cast<ValueType>(v.index()); }

Value default_value(ValueType type);
std::string to_display(const Value& v);

/// Integer-to-float promotion where the target type asks for it.
Value coerce(const Value& v, ValueType target);

}  // namespace hyperreal::script

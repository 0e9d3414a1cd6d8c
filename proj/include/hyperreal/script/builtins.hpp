#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "hyperreal/ids.hpp"
#include "hyperreal/script/value.hpp"

namespace hyperreal {
class World;
}

namespace hyperreal::script {

struct ScriptInstance;

/// Kinematic calls only work on non-physical objects, kinetic calls only on
/// physical ones. Query and world calls work on both.
enum class BuiltinCategory { Kinematic, Kinetic, Query, World };

std::string_view to_string(BuiltinCategory category);

struct BuiltinContext {
  hyperreal::World& world;
  ObjectId self;
  ScriptInstance& instance;
};

using BuiltinFn = Value (*)(BuiltinContext&, std::span<const Value>);

struct BuiltinSpec {
  std::string_view name;
  BuiltinCategory category;
  ValueType result;
  std::vector<ValueType> params;
  std::size_t min_args;
  double energy_cost;  // default cost per 100 units of demanded change; 0 if free
  BuiltinFn fn;
};

const std::vector<BuiltinSpec>& builtin_table();
const BuiltinSpec* find_builtin(std::string_view name);

struct ConstantSpec {
  std::string_view name;
  Value value;
};

/// Named constants visible to every script (TRUE, PI, ZERO_VECTOR, ...).
const std::vector<ConstantSpec>& constant_table();
const ConstantSpec* find_constant(std::string_view name);

inline constexpr std::int32_t kStatusPhysics = 1;

}  // namespace hyperreal::script

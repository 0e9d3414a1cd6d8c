#include "hyperreal/script/builtins.hpp"

#include <numbers>

#include "hyperreal/dynamics.hpp"
#include "hyperreal/script/engine.hpp"
#include "hyperreal/world.hpp"

namespace hyperreal::script {
namespace {

using T = ValueType;
using Args = std::span<const Value>;

Vec3 vec(const Value& v) { return std::get<Vec3>(v); }
double num(const Value& v) { return std::get<double>(v); }
std::int32_t integer(const Value& v) { return std::get<std::int32_t>(v); }

PrimObject& self(BuiltinContext& ctx) { return ctx.world.object(ctx.self); }

// Optional trailing flag: TRUE means the vector is in the object's local frame.
Vec3 region_frame(BuiltinContext& ctx, Args args) {
  const Vec3 v = vec(args[0]);
  if (args.size() > 1 && integer(args[1]) != 0) return rotate(v, self(ctx).dynamics.rotation);
  return v;
}

Value get_pos(BuiltinContext& ctx, Args) { return self(ctx).dynamics.position; }
Value get_vel(BuiltinContext& ctx, Args) { return self(ctx).dynamics.velocity; }
Value get_omega(BuiltinContext& ctx, Args) {
  const PrimObject& obj = self(ctx);
  return obj.physical ? obj.dynamics.omega : obj.visual_omega;
}
Value get_mass(BuiltinContext& ctx, Args) { return ctx.world.mass(ctx.self); }
Value get_sun(BuiltinContext& ctx, Args) { return ctx.world.sun_direction(); }
Value get_dilation(BuiltinContext& ctx, Args) { return ctx.world.clock().dilation; }
Value wind(BuiltinContext& ctx, Args args) { return ctx.world.wind_at(self(ctx).dynamics.position + vec(args[0])); }

Value set_force(BuiltinContext& ctx, Args args) {
  dynamics::apply_force(ctx.world, ctx.self, region_frame(ctx, args));
  return {};
}
Value apply_impulse(BuiltinContext& ctx, Args args) {
  dynamics::apply_impulse(ctx.world, ctx.self, region_frame(ctx, args));
  return {};
}
Value set_torque(BuiltinContext& ctx, Args args) {
  dynamics::apply_torque(ctx.world, ctx.self, region_frame(ctx, args));
  return {};
}
Value set_pos(BuiltinContext& ctx, Args args) {
  dynamics::set_position(ctx.world, ctx.self, vec(args[0]));
  return {};
}
Value set_rot(BuiltinContext& ctx, Args args) {
  dynamics::set_rotation(ctx.world, ctx.self, std::get<Quat>(args[0]));
  return {};
}

Value set_buoyancy(BuiltinContext& ctx, Args args) {
  const double b = num(args[0]);
  if (!std::isfinite(b)) throw Error(ErrorCode::InvalidParameter, "buoyancy must be finite");
  self(ctx).buoyancy = b;
  return {};
}

Value set_status(BuiltinContext& ctx, Args args) {
  if (integer(args[0]) & kStatusPhysics) ctx.world.set_physical(ctx.self, integer(args[1]) != 0);
  return {};
}

Value set_timer(BuiltinContext& ctx, Args args) {
  const double interval = num(args[0]);
  if (!std::isfinite(interval)) throw Error(ErrorCode::InvalidParameter, "timer interval must be finite");
  if (interval <= 0.0) {
    ctx.instance.timer_interval.reset();
  } else {
    ctx.instance.timer_interval = interval;
    ctx.instance.next_timer = ctx.world.clock().sim_time + interval;
  }
  return {};
}

// Rezzed objects are unit prims of the named shape, stationary and non-physical.
Value rez_object(BuiltinContext& ctx, Args args) {
  const ShapeKind kind = parse_shape_kind(std::get<std::string>(args[0]));
  PrimObject obj = ctx.world.create_object(PrimShape{kind, {1.0, 1.0, 1.0}}, Material::standard(MaterialKind::Wood),
                                           vec(args[1]));
  dynamics::set_rotation(ctx.world, obj.id, std::get<Quat>(args[3]));
  return static_cast<std::int32_t>(obj.id.value);
}

Value target_omega(BuiltinContext& ctx, Args args) {
  const double spin = args.size() > 1 ? num(args[1]) : 1.0;
  const Vec3 omega = vec(args[0]) * spin;
  if (!is_finite(omega)) throw Error(ErrorCode::InvalidParameter, "omega must be finite");
  PrimObject& obj = self(ctx);
  if (obj.physical) {
    obj.dynamics.omega = omega;
  } else {
    obj.visual_omega = omega;
  }
  return {};
}

}  // namespace

std::string_view to_string(BuiltinCategory category) {
  switch (category) {
    case BuiltinCategory::Kinematic: return "kinematic";
    case BuiltinCategory::Kinetic: return "kinetic";
    case BuiltinCategory::Query: return "query";
    case BuiltinCategory::World: return "world";
  }
  return "?";
}

const std::vector<BuiltinSpec>& builtin_table() {
  using C = BuiltinCategory;
  static const std::vector<BuiltinSpec> table{
      {"llGetPos", C::Query, T::Vector, {}, 0, 0.0, get_pos},
      {"llGetVel", C::Query, T::Vector, {}, 0, 0.0, get_vel},
      {"llGetOmega", C::Query, T::Vector, {}, 0, 0.0, get_omega},
      {"llGetMass", C::Query, T::Float, {}, 0, 0.0, get_mass},
      {"llGetSunDirection", C::Query, T::Vector, {}, 0, 0.0, get_sun},
      {"llGetRegionTimeDilation", C::Query, T::Float, {}, 0, 0.0, get_dilation},
      {"llWind", C::Query, T::Vector, {T::Vector}, 1, 0.0, wind},
      {"llSetForce", C::Kinetic, T::Void, {T::Vector, T::Integer}, 1, 1.0, set_force},
      {"llApplyImpulse", C::Kinetic, T::Void, {T::Vector, T::Integer}, 1, 2.0, apply_impulse},
      {"llSetTorque", C::Kinetic, T::Void, {T::Vector, T::Integer}, 1, 1.0, set_torque},
      {"llSetPos", C::Kinematic, T::Void, {T::Vector}, 1, 0.0, set_pos},
      {"llSetRot", C::Kinematic, T::Void, {T::Rotation}, 1, 0.0, set_rot},
      {"llSetBuoyancy", C::World, T::Void, {T::Float}, 1, 0.0, set_buoyancy},
      {"llSetStatus", C::World, T::Void, {T::Integer, T::Integer}, 2, 0.0, set_status},
      {"llSetTimerEvent", C::World, T::Void, {T::Float}, 1, 0.0, set_timer},
      {"llRezObject", C::World, T::Integer, {T::String, T::Vector, T::Vector, T::Rotation, T::Integer}, 5, 0.0,
       rez_object},
      {"llTargetOmega", C::World, T::Void, {T::Vector, T::Float, T::Float}, 1, 0.0, target_omega},
  };
  return table;
}

const BuiltinSpec* find_builtin(std::string_view name) {
  for (const BuiltinSpec& spec : builtin_table()) {
    if (spec.name == name) return &spec;
  }
  return nullptr;
}

const std::vector<ConstantSpec>& constant_table() {
  static const std::vector<ConstantSpec> table{
      {"TRUE", std::int32_t{1}},
      {"FALSE", std::int32_t{0}},
      {"PI", std::numbers::pi},
      {"TWO_PI", 2.0 * std::numbers::pi},
      {"STATUS_PHYSICS", kStatusPhysics},
      {"ZERO_VECTOR", Vec3{}},
      {"ZERO_ROTATION", Quat{}},
  };
  return table;
}

const ConstantSpec* find_constant(std::string_view name) {
  for (const ConstantSpec& c : constant_table()) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace hyperreal::script

#include "hyperreal/laws.hpp"

#include <cmath>
#include <string>

#include "hyperreal/dynamics.hpp"
#include "hyperreal/world.hpp"

namespace hyperreal {

std::string_view to_string(LawKind kind) {
  switch (kind) {
    case LawKind::Newtonian: return "newtonian";
    case LawKind::Impetus: return "impetus";
    case LawKind::Aristotelian: return "aristotelian";
  }
  return "newtonian";
}

LawKind parse_law_kind(std::string_view name) {
  for (auto kind : {LawKind::Newtonian, LawKind::Impetus, LawKind::Aristotelian}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorCode::InvalidParameter, "unknown law of motion '" + std::string(name) + "'");
}

void validate(const LawOfMotion& law) {
  if (!(law.impetus_decay >= 0.0) || !std::isfinite(law.impetus_decay)) {
    throw Error(ErrorCode::InvalidParameter, "impetus decay must be >= 0");
  }
  if (!(law.mobility > 0.0) || !std::isfinite(law.mobility)) {
    throw Error(ErrorCode::InvalidParameter, "mobility must be > 0");
  }
}

namespace laws {

void set_law(World& world, const LawOfMotion& law) {
  validate(law);
  world.region().default_law = law;
}

void set_law(World& world, ObjectId id, std::optional<LawOfMotion> law) {
  if (law) validate(*law);
  world.object(id).law = law;
}

const LawOfMotion& effective_law(const World& world, ObjectId id) {
  const PrimObject& obj = world.object(id);
  return obj.law ? *obj.law : world.region().default_law;
}

void launch(World& world, ObjectId id, double speed, Vec3 direction) {
  PrimObject& obj = world.object(id);
  if (!obj.physical) {
    throw Error(ErrorCode::KineticOnNonPhysical, "launch on non-physical object " + std::to_string(id.value));
  }
  if (!(speed >= 0.0) || !std::isfinite(speed) || !is_finite(direction)) {
    throw Error(ErrorCode::InvalidParameter, "launch speed must be finite and >= 0");
  }
  const double length = norm(direction);
  if (length == 0.0) {
    if (speed != 0.0) throw Error(ErrorCode::InvalidParameter, "launch direction must be non-zero");
    direction = {1.0, 0.0, 0.0};
  } else {
    direction = direction / length;
  }

  const LawOfMotion& law = effective_law(world, id);
  const double mass = world.mass(id);
  switch (law.kind) {
    case LawKind::Newtonian:
      dynamics::apply_impulse(world, id, direction * (mass * speed));
      break;
    case LawKind::Impetus:
      if (speed == 0.0) return;
      obj.impetus = {direction, mass * speed};
      obj.dynamics.velocity = direction * speed;
      break;
    case LawKind::Aristotelian:
      dynamics::apply_force(world, id, direction * (speed / law.mobility));
      break;
  }
}

}  // namespace laws
}  // namespace hyperreal

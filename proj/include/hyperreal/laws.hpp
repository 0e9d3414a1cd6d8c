#pragma once

#include <optional>
#include <string_view>

#include "hyperreal/ids.hpp"
#include "hyperreal/vec3.hpp"

namespace hyperreal {

class World;

enum class LawKind { Newtonian, Impetus, Aristotelian };

std::string_view to_string(LawKind kind);
/// Parses "newtonian" / "impetus" / "aristotelian"; throws InvalidParameter otherwise.
LawKind parse_law_kind(std::string_view name);

/// A selectable law of motion.
///
/// Impetus: a launch stores an impetus of m * speed along the launch direction.
/// While it lasts the body moves in a straight line at the launch velocity with
/// gravity suspended; the impetus is consumed at `impetus_decay * m` per second,
/// after which the body starts from rest and falls under the ordinary rules.
///
/// Aristotelian: no inertia. Velocity is `mobility * F` for the delivered motive
/// (script-applied) force, and zero the moment that force is zero.
struct LawOfMotion {
  LawKind kind = LawKind::Newtonian;
  double impetus_decay = 5.0;  // lambda
  double mobility = 0.1;       // mu, m/s per N

  friend bool operator==(const LawOfMotion&, const LawOfMotion&) = default;

  static LawOfMotion newtonian() { return {}; }
  static LawOfMotion impetus(double decay) { return {LawKind::Impetus, decay, 0.1}; }
  static LawOfMotion aristotelian(double mobility) { return {LawKind::Aristotelian, 5.0, mobility}; }
};

/// Throws InvalidParameter unless decay >= 0 and mobility > 0 (both finite).
void validate(const LawOfMotion& law);

struct ImpetusState {
  Vec3 direction;
  double magnitude = 0.0;  // kg m/s remaining

  bool active() const { return magnitude > 0.0; }
};

namespace laws {

/// Sets the world default law. Positions and velocities are untouched.
void set_law(World& world, const LawOfMotion& law);
/// Per-object override; std::nullopt falls back to the world default.
void set_law(World& world, ObjectId id, std::optional<LawOfMotion> law);

/// The law governing `id`: its override, else the world default.
const LawOfMotion& effective_law(const World& world, ObjectId id);

/// Fires the object along `direction` at `speed` under its effective law.
/// Newtonian launches go through the energy-gated impulse path; impetus
/// launches load the impetus store; Aristotelian launches install the
/// motive force speed / mobility.
void launch(World& world, ObjectId id, double speed, Vec3 direction);

}  // namespace laws
}  // namespace hyperreal

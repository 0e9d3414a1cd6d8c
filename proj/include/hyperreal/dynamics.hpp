#pragma once

#include <optional>
#include <vector>

#include "hyperreal/world.hpp"

namespace hyperreal {

/// Forces evaluated at the start of a step, before integration.
struct ForceBreakdown {
  Vec3 gravity;
  Vec3 buoyancy;
  Vec3 drag;
  Vec3 applied;  // script force actually delivered after energy gating
  Vec3 net;
  double delivered_fraction = 1.0;
};

struct ObjectStepRecord {
  ObjectId id;
  ForceBreakdown forces;
  double energy_spent = 0.0;
  double energy_refilled = 0.0;
  double energy_after = 0.0;
};

enum class ContactKind { Object, Ground, Wall };

/// A contact that began during the step. `other` is empty for ground and walls.
struct CollisionEvent {
  ObjectId a;
  std::optional<ObjectId> other;
  ContactKind kind = ContactKind::Object;
  Vec3 normal;   // from a toward the other body or out of the surface
  Vec3 impulse;  // applied to a
  double restitution = 1.0;
};

struct StepReport {
  double sim_time = 0.0;  // after the step
  double dt = 0.0;        // dilation * step_size
  double dilation = 1.0;
  std::vector<CollisionEvent> collisions;
  std::vector<ObjectStepRecord> objects;
  /// Momentum handed to bodies by ground, walls and enclosure this step.
  Vec3 external_impulse;
};

namespace dynamics {

/// energy per second granted to an object of mass m: refill / m.
double refill_rate(double mass, const RegionConfig& region);

/// Principal moments of inertia, shape axes aligned with the region axes.
Vec3 inertia_diagonal(const PrimShape& shape, double mass);

/// delta = min(1, budget / load) from the physical-object count and the
/// script operations executed during the previous step.
double region_time_dilation(const World& world);

/// One fixed step of size delta * step_size: forces, integration under each
/// object's law, collision resolution, energy refill, wind, clock.
/// Non-physical objects are not touched.
StepReport step(World& world);

/// Runs as many fixed steps as fit in `wall_seconds` (at least one).
/// Throws InvalidParameter unless wall_seconds > 0.
std::vector<StepReport> advance(World& world, double wall_seconds);

/// Immediate velocity change scale * impulse / m, where scale < 1 only when
/// the object lacks the energy the impulse demands. Returns the scale.
/// Throws KineticOnNonPhysical.
double apply_impulse(World& world, ObjectId id, const Vec3& impulse);

/// Sets the persistent force (llSetForce semantics). It is delivered every
/// step, scaled down once the object's energy runs short.
void apply_force(World& world, ObjectId id, const Vec3& force);
void apply_torque(World& world, ObjectId id, const Vec3& torque);

/// Kinematic teleport / reorientation; only non-physical objects.
/// Throws KinematicOnPhysical or PositionOutOfRegion.
void set_position(World& world, ObjectId id, const Vec3& position);
void set_rotation(World& world, ObjectId id, const Quat& rotation);

/// Resolves sphere-sphere, ground, enclosure and region-edge contacts for
/// the current positions. Called by step(); exposed for tests.
std::vector<CollisionEvent> resolve_collisions(World& world, Vec3* external_impulse = nullptr);

}  // namespace dynamics
}  // namespace hyperreal

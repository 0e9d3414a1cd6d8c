#include "hyperreal/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hyperreal::dynamics {
namespace {

constexpr std::uint32_t kGroundId = 0;
constexpr std::uint32_t kWallId = std::numeric_limits<std::uint32_t>::max();

void require_physical(const PrimObject& obj, const char* what) {
  if (!obj.physical) {
    throw Error(ErrorCode::KineticOnNonPhysical,
                std::string(what) + " on non-physical object " + std::to_string(obj.id.value));
  }
}

void require_non_physical(const PrimObject& obj, const char* what) {
  if (obj.physical) {
    throw Error(ErrorCode::KinematicOnPhysical,
                std::string(what) + " on physical object " + std::to_string(obj.id.value));
  }
}

void require_finite(const Vec3& v, const char* what) {
  if (!is_finite(v)) throw Error(ErrorCode::InvalidParameter, std::string(what) + " must be finite");
}

/// Spends energy for a demand; returns the fraction of the effect delivered.
double spend_energy(double& energy, double demand, double& spent) {
  if (demand <= 0.0) return 1.0;
  if (energy >= demand) {
    energy -= demand;
    spent += demand;
    return 1.0;
  }
  const double fraction = energy / demand;
  spent += energy;
  energy = 0.0;
  return fraction;
}

void integrate_rotation(ObjectDynamics& dyn, const Vec3& torque, const Vec3& inertia, double dt) {
  dyn.omega += Vec3{torque.x / inertia.x, torque.y / inertia.y, torque.z / inertia.z} * dt;
  if (dyn.omega == Vec3{}) return;
  const Quat spin{dyn.omega.x, dyn.omega.y, dyn.omega.z, 0.0};
  const Quat dq = spin * dyn.rotation;
  dyn.rotation = normalized({dyn.rotation.x + 0.5 * dt * dq.x, dyn.rotation.y + 0.5 * dt * dq.y,
                             dyn.rotation.z + 0.5 * dt * dq.z, dyn.rotation.s + 0.5 * dt * dq.s});
}

/// Gravity, buoyancy, vertical drag and the delivered script force.
/// Vertical velocity relaxes exactly toward its terminal value for the step's
/// constant forces, so it can never overshoot it; position uses the mean of
/// the old and new velocity, which is exact for constant acceleration.
void integrate_newtonian(const RegionConfig& region, PrimObject& obj, double mass, const Vec3& applied,
                         ForceBreakdown& forces, double dt) {
  ObjectDynamics& dyn = obj.dynamics;
  const double g_eff = obj.gravity_multiplier * region.gravity;
  const double weight = g_eff * mass;
  const double net_gravity = (obj.buoyancy - 1.0) * weight;
  const double drag_rate = region.drag_enabled ? std::abs(g_eff) / region.terminal_velocity : 0.0;
  const double drag_coeff = drag_rate * mass;

  forces.gravity = {0.0, 0.0, -weight};
  forces.buoyancy = {0.0, 0.0, obj.buoyancy * weight};
  forces.drag = {0.0, 0.0, -drag_coeff * dyn.velocity.z};
  forces.net = Vec3{0.0, 0.0, net_gravity} + forces.drag + applied;

  const Vec3 v_old = dyn.velocity;
  dyn.velocity.x += applied.x / mass * dt;
  dyn.velocity.y += applied.y / mass * dt;
  const double vertical = net_gravity + applied.z;
  if (drag_coeff > 0.0) {
    const double v_terminal = vertical / drag_coeff;
    dyn.velocity.z = v_terminal + (dyn.velocity.z - v_terminal) * std::exp(-drag_rate * dt);
  } else {
    dyn.velocity.z += vertical / mass * dt;
  }
  dyn.position += (v_old + dyn.velocity) * (0.5 * dt);
}

void integrate_object(const World& world, PrimObject& obj, ObjectStepRecord& record, double dt) {
  const RegionConfig& region = world.region();
  ObjectDynamics& dyn = obj.dynamics;
  const double mass = compute_mass(obj.shape, region.density);
  const LawOfMotion& law = obj.law ? *obj.law : region.default_law;

  if (law.kind == LawKind::Impetus && obj.impetus.active()) {
    // Rectilinear phase: no forces act, the impetus is consumed.
    const double consumption = law.impetus_decay * mass;
    const double remaining = consumption > 0.0 ? obj.impetus.magnitude / consumption
                                               : std::numeric_limits<double>::infinity();
    if (remaining > dt * (1.0 + 1e-9)) {
      dyn.position += dyn.velocity * dt;
      obj.impetus.magnitude -= consumption * dt;
      return;
    }
    dyn.position += dyn.velocity * remaining;
    obj.impetus = {};
    dyn.velocity = {};
    dt -= remaining;
    if (dt <= 0.0) return;
  }

  double energy = dyn.energy;
  const double force_demand = region.energy_costs.force * norm(dyn.pending_force) * dt / 100.0;
  const double force_fraction = spend_energy(energy, force_demand, record.energy_spent);
  const double torque_demand = region.energy_costs.torque * norm(dyn.pending_torque) * dt / 100.0;
  const double torque_fraction = spend_energy(energy, torque_demand, record.energy_spent);
  dyn.energy = energy;

  const Vec3 applied = dyn.pending_force * force_fraction;
  record.forces.applied = applied;
  record.forces.delivered_fraction = force_fraction;

  if (law.kind == LawKind::Aristotelian) {
    dyn.velocity = applied * law.mobility;
    dyn.position += dyn.velocity * dt;
    record.forces.net = applied;
  } else {
    integrate_newtonian(region, obj, mass, applied, record.forces, dt);
  }
  integrate_rotation(dyn, dyn.pending_torque * torque_fraction, inertia_diagonal(obj.shape, mass), dt);
}

World::ContactKey pair_key(ObjectId a, ObjectId b) {
  return {std::min(a.value, b.value), std::max(a.value, b.value), 0};
}

struct ContactTracker {
  const std::set<World::ContactKey>& previous;
  std::set<World::ContactKey> current;
  std::vector<CollisionEvent> events;

  void touch(const World::ContactKey& key, CollisionEvent event) {
    current.insert(key);
    if (!previous.contains(key)) events.push_back(event);
  }
};

/// Pushes an object back inside a half-space along `axis`; returns true on contact.
bool resolve_plane(PrimObject& obj, double mass, int axis, double sign, double limit, double surface_restitution,
                   Vec3& external) {
  auto component = [](Vec3& v, int a) -> double& { return a == 0 ? v.x : (a == 1 ? v.y : v.z); };
  ObjectDynamics& dyn = obj.dynamics;
  const Vec3 half = obj.shape.half_extents();
  const double extent = axis == 0 ? half.x : (axis == 1 ? half.y : half.z);
  double& p = component(dyn.position, axis);
  double& v = component(dyn.velocity, axis);
  // sign = +1: surface below/behind (p - extent >= limit); sign = -1: above/ahead.
  const double gap = sign * (p - limit) - extent;
  if (gap > 0.0) return false;
  p = limit + sign * extent;
  if (sign * v < 0.0) {
    const double e = std::min(obj.material.restitution, surface_restitution);
    const double v_new = -e * v;
    Vec3 impulse;
    component(impulse, axis) = mass * (v_new - v);
    external += impulse;
    v = v_new;
  }
  return true;
}

}  // namespace

double refill_rate(double mass, const RegionConfig& region) { return region.energy_refill / mass; }

Vec3 inertia_diagonal(const PrimShape& shape, double mass) {
  const Vec3& s = shape.size;
  switch (shape.kind) {
    case ShapeKind::Box:
      return {mass * (s.y * s.y + s.z * s.z) / 12.0, mass * (s.x * s.x + s.z * s.z) / 12.0,
              mass * (s.x * s.x + s.y * s.y) / 12.0};
    case ShapeKind::Sphere: {
      // Solid ellipsoid with semi-axes s/2.
      const Vec3 a = s * 0.5;
      return {mass * (a.y * a.y + a.z * a.z) / 5.0, mass * (a.x * a.x + a.z * a.z) / 5.0,
              mass * (a.x * a.x + a.y * a.y) / 5.0};
    }
    case ShapeKind::Cylinder: {
      // Axis along z, elliptical cross-section with semi-axes s.x/2, s.y/2.
      const double rx = 0.5 * s.x;
      const double ry = 0.5 * s.y;
      return {mass * (3.0 * ry * ry + s.z * s.z) / 12.0, mass * (3.0 * rx * rx + s.z * s.z) / 12.0,
              mass * (rx * rx + ry * ry) / 4.0};
    }
  }
  return {mass, mass, mass};
}

double region_time_dilation(const World& world) {
  const DilationModel& model = world.region().dilation;
  const double load = model.per_physical_object * static_cast<double>(world.physical_count()) +
                      model.per_script_op * static_cast<double>(world.script_ops_last_step());
  if (load <= model.budget) return 1.0;
  return model.budget / load;
}

StepReport step(World& world) {
  const RegionConfig& region = world.region();
  StepReport report;
  report.dilation = region_time_dilation(world);
  report.dt = report.dilation * region.step_size;

  for (PrimObject& obj : world.objects()) {
    if (!obj.physical) continue;
    ObjectStepRecord record;
    record.id = obj.id;
    integrate_object(world, obj, record, report.dt);
    report.objects.push_back(record);
  }

  report.collisions = resolve_collisions(world, &report.external_impulse);

  auto record_it = report.objects.begin();
  for (PrimObject& obj : world.objects()) {
    if (!obj.physical) continue;
    const double mass = compute_mass(obj.shape, region.density);
    const double before = obj.dynamics.energy;
    obj.dynamics.energy = std::min(region.energy_cap, before + refill_rate(mass, region) * report.dt);
    record_it->energy_refilled = obj.dynamics.energy - before;
    record_it->energy_after = obj.dynamics.energy;
    ++record_it;
  }

  if (region.wind_enabled) world.wind().accumulate(report.dt);

  SimClock& clock = world.clock();
  clock.sim_time += report.dt;
  clock.dilation = report.dilation;
  clock.step_size = region.step_size;
  ++clock.steps;
  report.sim_time = clock.sim_time;
  return report;
}

std::vector<StepReport> advance(World& world, double wall_seconds) {
  if (!(wall_seconds > 0.0) || !std::isfinite(wall_seconds)) {
    throw Error(ErrorCode::InvalidParameter, "wall_dt must be > 0");
  }
  const double steps = std::max(1.0, std::round(wall_seconds / world.region().step_size));
  std::vector<StepReport> reports;
  reports.reserve(static_cast<std::size_t>(steps));
  for (double i = 0; i < steps; i += 1.0) reports.push_back(step(world));
  return reports;
}

double apply_impulse(World& world, ObjectId id, const Vec3& impulse) {
  PrimObject& obj = world.object(id);
  require_physical(obj, "apply_impulse");
  require_finite(impulse, "impulse");
  const RegionConfig& region = world.region();
  const double mass = compute_mass(obj.shape, region.density);
  double spent = 0.0;
  const double scale = spend_energy(obj.dynamics.energy, region.energy_costs.impulse * norm(impulse) / 100.0, spent);
  obj.dynamics.velocity += impulse * (scale / mass);
  return scale;
}

void apply_force(World& world, ObjectId id, const Vec3& force) {
  PrimObject& obj = world.object(id);
  require_physical(obj, "apply_force");
  require_finite(force, "force");
  obj.dynamics.pending_force = force;
}

void apply_torque(World& world, ObjectId id, const Vec3& torque) {
  PrimObject& obj = world.object(id);
  require_physical(obj, "apply_torque");
  require_finite(torque, "torque");
  obj.dynamics.pending_torque = torque;
}

void set_position(World& world, ObjectId id, const Vec3& position) {
  PrimObject& obj = world.object(id);
  require_non_physical(obj, "set_position");
  if (!is_finite(position) || !inside_region(position)) {
    throw Error(ErrorCode::PositionOutOfRegion, "set_position outside the region column");
  }
  obj.dynamics.position = position;
}

void set_rotation(World& world, ObjectId id, const Quat& rotation) {
  PrimObject& obj = world.object(id);
  require_non_physical(obj, "set_rotation");
  if (!is_finite(rotation)) throw Error(ErrorCode::InvalidParameter, "rotation must be finite");
  obj.dynamics.rotation = normalized(rotation);
}

std::vector<CollisionEvent> resolve_collisions(World& world, Vec3* external_impulse) {
  const RegionConfig& region = world.region();
  ContactTracker tracker{world.active_contacts(), {}, {}};
  Vec3 external;
  auto objects = world.objects();

  // Sphere pairs; non-physical spheres are immovable obstacles.
  for (std::size_t i = 0; i < objects.size(); ++i) {
    PrimObject& a = objects[i];
    if (a.shape.kind != ShapeKind::Sphere) continue;
    for (std::size_t j = i + 1; j < objects.size(); ++j) {
      PrimObject& b = objects[j];
      if (b.shape.kind != ShapeKind::Sphere) continue;
      if (!a.physical && !b.physical) continue;
      const Vec3 d = b.dynamics.position - a.dynamics.position;
      const double reach = a.shape.radius() + b.shape.radius();
      const double dist2 = dot(d, d);
      if (dist2 >= reach * reach) continue;
      const double dist = std::sqrt(dist2);
      const Vec3 n = dist > 0.0 ? d / dist : Vec3{1.0, 0.0, 0.0};
      const double wa = a.physical ? 1.0 / compute_mass(a.shape, region.density) : 0.0;
      const double wb = b.physical ? 1.0 / compute_mass(b.shape, region.density) : 0.0;
      const double w = wa + wb;

      const double penetration = reach - dist;
      a.dynamics.position -= n * (penetration * wa / w);
      b.dynamics.position += n * (penetration * wb / w);

      const double e = std::min(a.material.restitution, b.material.restitution);
      const double approach = dot(b.dynamics.velocity - a.dynamics.velocity, n);
      Vec3 impulse_on_a;
      if (approach < 0.0) {
        const double j_mag = -(1.0 + e) * approach / w;
        a.dynamics.velocity -= n * (j_mag * wa);
        b.dynamics.velocity += n * (j_mag * wb);
        impulse_on_a = n * -j_mag;
        if (!a.physical || !b.physical) external += n * (a.physical ? -j_mag : j_mag);
      }
      const CollisionEvent event{a.id, b.id, ContactKind::Object, n, impulse_on_a, e};
      tracker.touch(pair_key(a.id, b.id), event);
    }
  }

  // Ground, enclosure walls and region edges.
  for (PrimObject& obj : objects) {
    if (!obj.physical) continue;
    const double mass = compute_mass(obj.shape, region.density);
    auto check = [&](int axis, double sign, double limit, double restitution, std::uint32_t other, int face,
                     ContactKind kind) {
      Vec3 before = external;
      if (!resolve_plane(obj, mass, axis, sign, limit, restitution, external)) return;
      Vec3 normal;
      (axis == 0 ? normal.x : (axis == 1 ? normal.y : normal.z)) = sign;
      const double e = std::min(obj.material.restitution, restitution);
      tracker.touch({obj.id.value, other, face}, CollisionEvent{obj.id, std::nullopt, kind, normal, external - before, e});
    };
    check(2, +1.0, region.ground_height, region.ground_restitution, kGroundId, 1, ContactKind::Ground);
    if (region.enclosure) {
      const Enclosure& box = *region.enclosure;
      check(0, +1.0, box.min.x, 1.0, kWallId, 2, ContactKind::Wall);
      check(0, -1.0, box.max.x, 1.0, kWallId, 3, ContactKind::Wall);
      check(1, +1.0, box.min.y, 1.0, kWallId, 4, ContactKind::Wall);
      check(1, -1.0, box.max.y, 1.0, kWallId, 5, ContactKind::Wall);
      check(2, +1.0, box.min.z, 1.0, kWallId, 6, ContactKind::Wall);
      check(2, -1.0, box.max.z, 1.0, kWallId, 7, ContactKind::Wall);
    }
    check(0, +1.0, 0.0, 1.0, kWallId, 8, ContactKind::Wall);
    check(0, -1.0, kRegionSide, 1.0, kWallId, 9, ContactKind::Wall);
    check(1, +1.0, 0.0, 1.0, kWallId, 10, ContactKind::Wall);
    check(1, -1.0, kRegionSide, 1.0, kWallId, 11, ContactKind::Wall);
  }

  world.active_contacts() = std::move(tracker.current);
  if (external_impulse) *external_impulse += external;
  return std::move(tracker.events);
}

}  // namespace hyperreal::dynamics

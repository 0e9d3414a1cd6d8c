#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <tuple>
#include <vector>

#include "hyperreal/errors.hpp"
#include "hyperreal/ids.hpp"
#include "hyperreal/laws.hpp"
#include "hyperreal/vec3.hpp"
#include "hyperreal/wind.hpp"

namespace hyperreal {

inline constexpr double kRegionSide = 256.0;
inline constexpr double kDefaultDensity = 10.0;  // kg/m^3, engine-wide
inline constexpr double kDefaultDayPeriod = 14400.0;
inline constexpr double kMinPrimSize = 0.01;
inline constexpr double kMaxPrimSize = 64.0;

enum class MaterialKind { Wood, Stone, Metal, Glass, Rubber, Flesh };

std::string_view to_string(MaterialKind kind);
MaterialKind parse_material_kind(std::string_view name);

/// Surface properties. Never consulted for mass.
struct Material {
  MaterialKind kind = MaterialKind::Wood;
  double restitution = 0.5;
  double friction = 0.6;

  static Material standard(MaterialKind kind);
  friend bool operator==(const Material&, const Material&) = default;
};

enum class ShapeKind { Box, Sphere, Cylinder };

std::string_view to_string(ShapeKind kind);
ShapeKind parse_shape_kind(std::string_view name);

/// Size is the bounding extent along each axis (diameter for spheres).
struct PrimShape {
  ShapeKind kind = ShapeKind::Box;
  Vec3 size{1.0, 1.0, 1.0};

  /// Throws InvalidParameter if any size component is outside [0.01, 64].
  void validate() const;
  double volume() const;
  /// Radius used for sphere contacts; half the largest extent.
  double radius() const;
  /// Half extents used for ground and wall contacts (rotation ignored).
  Vec3 half_extents() const;

  friend bool operator==(const PrimShape&, const PrimShape&) = default;
};

double compute_mass(const PrimShape& shape, double density = kDefaultDensity);

struct ObjectDynamics {
  Vec3 position;
  Vec3 velocity;
  Vec3 omega;
  Quat rotation;
  Vec3 pending_force;
  Vec3 pending_torque;
  double energy = 100.0;
};

struct PrimObject {
  ObjectId id;
  PrimShape shape;
  Material material;
  bool physical = false;
  double buoyancy = 0.0;
  double gravity_multiplier = 1.0;
  Vec3 visual_omega;
  ObjectDynamics dynamics;
  std::optional<LawOfMotion> law;
  ImpetusState impetus;
};

struct EnergyCosts {
  double force = 1.0;    // per 100 N per second
  double impulse = 2.0;  // per 100 N s
  double torque = 1.0;   // per 100 N m per second
};

/// delta = min(1, budget / (per_physical_object * N + per_script_op * ops)).
struct DilationModel {
  double budget = 1.0;
  double per_physical_object = 1e-3;
  double per_script_op = 1e-5;
};

/// Axis-aligned static container whose inner faces act as walls.
struct Enclosure {
  Vec3 min;
  Vec3 max;
};

struct RegionConfig {
  double water_level = 20.0;
  double gravity = 9.8;
  double day_period = kDefaultDayPeriod;
  double density = kDefaultDensity;
  double terminal_velocity = 50.0;
  bool drag_enabled = true;
  double step_size = 1.0 / 45.0;
  double energy_cap = 100.0;
  double energy_refill = 200.0;  // energy per second is energy_refill / mass
  EnergyCosts energy_costs;
  DilationModel dilation;
  double ground_height = 0.0;
  double ground_restitution = 1.0;
  std::optional<Enclosure> enclosure;
  bool wind_enabled = true;
  WindConfig wind;
  LawOfMotion default_law;

  /// Throws InvalidParameter on out-of-range settings.
  void validate() const;
};

struct SimClock {
  double sim_time = 0.0;
  double dilation = 1.0;
  double step_size = 1.0 / 45.0;
  std::uint64_t steps = 0;
};

/// Unit vector toward the sun: (cos t, 0, sin t), t = 2 pi (time mod period) / period.
Vec3 sun_direction(double sim_time, double period = kDefaultDayPeriod);
inline Vec3 moon_direction(double sim_time, double period = kDefaultDayPeriod) {
  return -sun_direction(sim_time, period);
}

/// True if x and y lie in [0, 256).
bool inside_region(const Vec3& p);

/// One 256 m region: configuration, clock, objects, and the wind field.
///
/// Objects are kept sorted by id; ids are never reused. Copying a World
/// yields an independent snapshot.
class World {
 public:
  explicit World(RegionConfig config = {});

  const RegionConfig& region() const { return config_; }
  RegionConfig& region() { return config_; }
  const SimClock& clock() const { return clock_; }
  SimClock& clock() { return clock_; }

  /// New objects are non-physical, stationary, with full energy, b = 0, gamma = 1.
  PrimObject create_object(const PrimShape& shape, const Material& material, const Vec3& position);
  void delete_object(ObjectId id);

  bool contains(ObjectId id) const;
  PrimObject& object(ObjectId id);
  const PrimObject& object(ObjectId id) const;
  std::span<PrimObject> objects() { return objects_; }
  std::span<const PrimObject> objects() const { return objects_; }
  std::size_t physical_count() const;

  /// Enrolling in dynamics takes effect from the next step. Leaving it
  /// freezes the object where it is with zero velocity and force.
  void set_physical(ObjectId id, bool physical);

  double mass(ObjectId id) const;

  Vec3 sun_direction() const;
  Vec3 moon_direction() const;
  /// Wind at a position; throws PositionOutOfRegion outside the region.
  Vec3 wind_at(const Vec3& position) const;
  double water_level_at(const Vec3& position) const;

  const WindField& wind() const { return wind_; }
  WindField& wind() { return wind_; }

  void record_script_ops(std::uint64_t ops) { script_ops_last_step_ = ops; }
  std::uint64_t script_ops_last_step() const { return script_ops_last_step_; }

  using ContactKey = std::tuple<std::uint32_t, std::uint32_t, int>;
  std::set<ContactKey>& active_contacts() { return contacts_; }

 private:
  std::vector<PrimObject>::iterator find(ObjectId id);
  std::vector<PrimObject>::const_iterator find(ObjectId id) const;

  RegionConfig config_;
  SimClock clock_;
  WindField wind_;
  std::vector<PrimObject> objects_;
  std::uint32_t next_id_ = 1;
  std::uint64_t script_ops_last_step_ = 0;
  std::set<ContactKey> contacts_;
};

}  // namespace hyperreal

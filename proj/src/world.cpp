#include "hyperreal/world.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hyperreal {

std::string_view to_string(MaterialKind kind) {
  switch (kind) {
    case MaterialKind::Wood: return "wood";
    case MaterialKind::Stone: return "stone";
    case MaterialKind::Metal: return "metal";
    case MaterialKind::Glass: return "glass";
    case MaterialKind::Rubber: return "rubber";
    case MaterialKind::Flesh: return "flesh";
  }
  return "wood";
}

MaterialKind parse_material_kind(std::string_view name) {
  for (auto kind : {MaterialKind::Wood, MaterialKind::Stone, MaterialKind::Metal, MaterialKind::Glass,
                    MaterialKind::Rubber, MaterialKind::Flesh}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorCode::InvalidParameter, "unknown material '" + std::string(name) + "'");
}

Material Material::standard(MaterialKind kind) {
  switch (kind) {
    case MaterialKind::Wood: return {kind, 0.5, 0.6};
    case MaterialKind::Stone: return {kind, 0.2, 0.8};
    case MaterialKind::Metal: return {kind, 0.4, 0.3};
    case MaterialKind::Glass: return {kind, 0.6, 0.2};
    case MaterialKind::Rubber: return {kind, 0.9, 0.9};
    case MaterialKind::Flesh: return {kind, 0.1, 0.6};
  }
  return {};
}

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Box: return "box";
    case ShapeKind::Sphere: return "sphere";
    case ShapeKind::Cylinder: return "cylinder";
  }
  return "box";
}

ShapeKind parse_shape_kind(std::string_view name) {
  for (auto kind : {ShapeKind::Box, ShapeKind::Sphere, ShapeKind::Cylinder}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorCode::InvalidParameter, "unknown shape '" + std::string(name) + "'");
}

void PrimShape::validate() const {
  for (double s : {size.x, size.y, size.z}) {
    if (!(s >= kMinPrimSize && s <= kMaxPrimSize)) {
      throw Error(ErrorCode::InvalidParameter, "prim size component " + std::to_string(s) + " outside [0.01, 64]");
    }
  }
}

double PrimShape::volume() const {
  const double product = size.x * size.y * size.z;
  switch (kind) {
    case ShapeKind::Box: return product;
    case ShapeKind::Sphere: return std::numbers::pi / 6.0 * product;
    case ShapeKind::Cylinder: return std::numbers::pi / 4.0 * product;
  }
  return product;
}

double PrimShape::radius() const { return 0.5 * std::max({size.x, size.y, size.z}); }

Vec3 PrimShape::half_extents() const {
  if (kind == ShapeKind::Sphere) {
    const double r = radius();
    return {r, r, r};
  }
  return size * 0.5;
}

double compute_mass(const PrimShape& shape, double density) { return density * shape.volume(); }

void RegionConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidParameter, what);
  };
  require(water_level >= 0.0 && std::isfinite(water_level), "water_level must be >= 0");
  require(std::isfinite(gravity), "gravity must be finite");
  require(day_period > 0.0 && std::isfinite(day_period), "day_period must be > 0");
  require(density > 0.0 && std::isfinite(density), "density must be > 0");
  require(terminal_velocity > 0.0 && std::isfinite(terminal_velocity), "terminal_velocity must be > 0");
  require(step_size > 0.0 && std::isfinite(step_size), "step_size must be > 0");
  require(energy_cap > 0.0 && energy_refill >= 0.0, "energy model must be non-negative");
  require(energy_costs.force >= 0.0 && energy_costs.impulse >= 0.0 && energy_costs.torque >= 0.0,
          "energy costs must be >= 0");
  require(dilation.budget > 0.0 && dilation.per_physical_object >= 0.0 && dilation.per_script_op >= 0.0,
          "dilation model must be positive");
  require(ground_restitution >= 0.0 && ground_restitution <= 1.0, "ground_restitution must be in [0, 1]");
  if (enclosure) {
    require(enclosure->min.x < enclosure->max.x && enclosure->min.y < enclosure->max.y &&
                enclosure->min.z < enclosure->max.z,
            "enclosure min must be below max");
  }
  require(wind.resolution >= 4, "wind resolution must be >= 4");
  hyperreal::validate(default_law);
}

Vec3 sun_direction(double sim_time, double period) {
  const double phase = std::fmod(sim_time, period);
  const double theta = 2.0 * std::numbers::pi * phase / period;
  return {std::cos(theta), 0.0, std::sin(theta)};
}

bool inside_region(const Vec3& p) {
  return p.x >= 0.0 && p.x < kRegionSide && p.y >= 0.0 && p.y < kRegionSide && std::isfinite(p.z);
}

World::World(RegionConfig config) : config_(std::move(config)), wind_(config_.wind) {
  config_.validate();
  clock_.step_size = config_.step_size;
}

PrimObject World::create_object(const PrimShape& shape, const Material& material, const Vec3& position) {
  shape.validate();
  if (!is_finite(position) || !inside_region(position)) {
    throw Error(ErrorCode::PositionOutOfRegion, "position outside the region column");
  }
  if (!(material.restitution >= 0.0 && material.restitution <= 1.0) || !(material.friction >= 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "material restitution must be in [0, 1] and friction >= 0");
  }
  PrimObject obj;
  obj.id = ObjectId{next_id_++};
  obj.shape = shape;
  obj.material = material;
  obj.dynamics.position = position;
  obj.dynamics.energy = config_.energy_cap;
  objects_.push_back(obj);
  return obj;
}

void World::delete_object(ObjectId id) {
  objects_.erase(find(id));
  std::erase_if(contacts_, [&](const ContactKey& key) {
    return std::get<0>(key) == id.value || std::get<1>(key) == id.value;
  });
}

std::vector<PrimObject>::iterator World::find(ObjectId id) {
  auto it = std::lower_bound(objects_.begin(), objects_.end(), id,
                             [](const PrimObject& o, ObjectId key) { return o.id < key; });
  if (it == objects_.end() || it->id != id) {
    throw Error(ErrorCode::UnknownObject, "no object with id " + std::to_string(id.value));
  }
  return it;
}

std::vector<PrimObject>::const_iterator World::find(ObjectId id) const {
  auto it = std::lower_bound(objects_.begin(), objects_.end(), id,
                             [](const PrimObject& o, ObjectId key) { return o.id < key; });
  if (it == objects_.end() || it->id != id) {
    throw Error(ErrorCode::UnknownObject, "no object with id " + std::to_string(id.value));
  }
  return it;
}

bool World::contains(ObjectId id) const {
  auto it = std::lower_bound(objects_.begin(), objects_.end(), id,
                             [](const PrimObject& o, ObjectId key) { return o.id < key; });
  return it != objects_.end() && it->id == id;
}

PrimObject& World::object(ObjectId id) { return *find(id); }
const PrimObject& World::object(ObjectId id) const { return *find(id); }

std::size_t World::physical_count() const {
  return static_cast<std::size_t>(std::count_if(objects_.begin(), objects_.end(), [](const auto& o) { return o.physical; }));
}

void World::set_physical(ObjectId id, bool physical) {
  PrimObject& obj = object(id);
  if (obj.physical == physical) return;
  obj.physical = physical;
  if (!physical) {
    obj.dynamics.velocity = {};
    obj.dynamics.omega = {};
    obj.dynamics.pending_force = {};
    obj.dynamics.pending_torque = {};
    obj.impetus = {};
  }
}

double World::mass(ObjectId id) const { return compute_mass(object(id).shape, config_.density); }

Vec3 World::sun_direction() const { return hyperreal::sun_direction(clock_.sim_time, config_.day_period); }
Vec3 World::moon_direction() const { return hyperreal::moon_direction(clock_.sim_time, config_.day_period); }

Vec3 World::wind_at(const Vec3& position) const { return wind_.sample(position); }

double World::water_level_at(const Vec3& position) const {
  if (!inside_region(position)) {
    throw Error(ErrorCode::PositionOutOfRegion, "position outside the region column");
  }
  return config_.water_level;
}

}  // namespace hyperreal

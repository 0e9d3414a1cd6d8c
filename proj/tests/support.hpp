#pragma once

#include <cstdint>

#include "hyperreal/dynamics.hpp"
#include "hyperreal/world.hpp"

namespace testing_support {

/// Small seeded generator for property tests (splitmix64).
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53; }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return (next() & 1u) != 0; }
  hyperreal::Vec3 vec(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }

 private:
  std::uint64_t state_;
};

inline hyperreal::RegionConfig quiet_region() {
  hyperreal::RegionConfig region;
  region.wind_enabled = false;
  return region;
}

/// Adds a physical object and returns its id.
inline hyperreal::ObjectId add_physical(hyperreal::World& world, hyperreal::PrimShape shape, hyperreal::Vec3 position,
                                        hyperreal::MaterialKind material = hyperreal::MaterialKind::Wood) {
  const hyperreal::ObjectId id =
      world.create_object(shape, hyperreal::Material::standard(material), position).id;
  world.set_physical(id, true);
  return id;
}

inline hyperreal::PrimShape unit_box() { return {hyperreal::ShapeKind::Box, {1.0, 1.0, 1.0}}; }
inline hyperreal::PrimShape ball(double diameter) {
  return {hyperreal::ShapeKind::Sphere, {diameter, diameter, diameter}};
}

}  // namespace testing_support

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "hyperreal/dynamics.hpp"
#include "hyperreal/world.hpp"
#include "support.hpp"

using namespace hyperreal;
using testing_support::Gen;

namespace {

// Volume by midpoint-rule counting over the bounding box, independent of the
// closed forms in the library.
double counted_volume(const PrimShape& shape, int n) {
  const Vec3 s = shape.size;
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double x = (i + 0.5) / n - 0.5;
        const double y = (j + 0.5) / n - 0.5;
        const double z = (k + 0.5) / n - 0.5;
        bool in = true;
        if (shape.kind == ShapeKind::Sphere) in = x * x + y * y + z * z <= 0.25;
        if (shape.kind == ShapeKind::Cylinder) in = x * x + y * y <= 0.25;
        inside += in ? 1 : 0;
      }
    }
  }
  return s.x * s.y * s.z * inside / (static_cast<double>(n) * n * n);
}

}  // namespace

TEST(CreateObject, StartsStationaryAndNonPhysical) {
  World world;
  const PrimObject obj = world.create_object(testing_support::unit_box(), Material::standard(MaterialKind::Wood),
                                             {128.0, 128.0, 30.0});
  EXPECT_FALSE(obj.physical);
  EXPECT_EQ(obj.dynamics.velocity, Vec3{});
  EXPECT_EQ(obj.dynamics.energy, 100.0);
  EXPECT_EQ(obj.buoyancy, 0.0);
  EXPECT_EQ(obj.gravity_multiplier, 1.0);
}

TEST(CreateObject, CornerIsInside) {
  World world;
  EXPECT_NO_THROW(world.create_object(testing_support::ball(1.0), {}, {0.0, 0.0, 0.5}));
}

TEST(CreateObject, OutsideRegionIsRejected) {
  World world;
  try {
    world.create_object(testing_support::unit_box(), {}, {300.0, 10.0, 5.0});
    FAIL() << "expected PositionOutOfRegion";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PositionOutOfRegion);
  }
  EXPECT_THROW(world.create_object(testing_support::unit_box(), {}, {10.0, 256.0, 5.0}), Error);
  EXPECT_THROW(world.create_object(testing_support::unit_box(), {}, {-0.001, 10.0, 5.0}), Error);
}

TEST(CreateObject, SizeBoundsEnforced) {
  World world;
  EXPECT_THROW(world.create_object({ShapeKind::Box, {0.005, 1.0, 1.0}}, {}, {1.0, 1.0, 1.0}), Error);
  EXPECT_THROW(world.create_object({ShapeKind::Box, {1.0, 65.0, 1.0}}, {}, {1.0, 1.0, 1.0}), Error);
  EXPECT_NO_THROW(world.create_object({ShapeKind::Box, {0.01, 64.0, 1.0}}, {}, {1.0, 1.0, 1.0}));
}

TEST(ObjectIds, UniqueAcrossCreateDeleteSequences) {
  Gen gen(11);
  World world;
  std::set<std::uint32_t> seen;
  std::vector<ObjectId> live;
  for (int i = 0; i < 500; ++i) {
    if (!live.empty() && gen.coin()) {
      const std::size_t k = gen.next() % live.size();
      world.delete_object(live[k]);
      live.erase(live.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
      const ObjectId id = world.create_object(testing_support::unit_box(), {}, gen.vec(0.0, 255.0)).id;
      EXPECT_TRUE(seen.insert(id.value).second);
      live.push_back(id);
    }
  }
  EXPECT_EQ(world.objects().size(), live.size());
}

TEST(ObjectIds, UnknownIdIsReported) {
  World world;
  try {
    world.object(ObjectId{42});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownObject);
  }
}

TEST(Mass, UnitBoxWeighsTen) { EXPECT_EQ(compute_mass(testing_support::unit_box()), 10.0); }

TEST(Mass, UnitSphereMatchesCountedVolume) {
  const PrimShape s = testing_support::ball(1.0);
  EXPECT_NEAR(compute_mass(s), 5.235987755982988, 1e-12);
  EXPECT_NEAR(compute_mass(s), 10.0 * counted_volume(s, 200), 2e-3);
}

TEST(Mass, CylinderMatchesCountedVolume) {
  const PrimShape c{ShapeKind::Cylinder, {2.0, 2.0, 3.0}};
  EXPECT_NEAR(compute_mass(c), 10.0 * counted_volume(c, 200), 1e-3 * compute_mass(c));
}

TEST(Mass, MaterialNeverMatters) {
  Gen gen(3);
  World world;
  for (int i = 0; i < 200; ++i) {
    const PrimShape shape{static_cast<ShapeKind>(gen.integer(0, 2)), gen.vec(0.01, 64.0)};
    const auto m1 = static_cast<MaterialKind>(gen.integer(0, 5));
    const auto m2 = static_cast<MaterialKind>(gen.integer(0, 5));
    const ObjectId a = world.create_object(shape, Material::standard(m1), {10.0, 10.0, 10.0}).id;
    const ObjectId b = world.create_object(shape, Material::standard(m2), {10.0, 10.0, 10.0}).id;
    EXPECT_EQ(world.mass(a), world.mass(b));
  }
}

TEST(Mass, DoublingBoxSizeIsExactlyEightfold) {
  Gen gen(5);
  for (int i = 0; i < 200; ++i) {
    const Vec3 s = gen.vec(0.01, 32.0);
    EXPECT_EQ(compute_mass({ShapeKind::Box, s * 2.0}), 8.0 * compute_mass({ShapeKind::Box, s}));
  }
}

TEST(PhysicalFlag, JoiningAppliesGravityNextStep) {
  World world(testing_support::quiet_region());
  const ObjectId id = world.create_object(testing_support::unit_box(), {}, {128.0, 128.0, 30.0}).id;
  world.set_physical(id, true);
  const StepReport r = dynamics::step(world);
  ASSERT_EQ(r.objects.size(), 1u);
  EXPECT_NEAR(r.objects[0].forces.gravity.z, -10.0 * 9.8, 1e-12);
}

TEST(PhysicalFlag, LeavingFreezesTheObject) {
  World world(testing_support::quiet_region());
  const ObjectId id = testing_support::add_physical(world, testing_support::unit_box(), {128.0, 128.0, 30.0});
  world.object(id).dynamics.velocity = {5.0, 0.0, 0.0};
  dynamics::apply_force(world, id, {1.0, 2.0, 3.0});
  world.set_physical(id, false);
  EXPECT_EQ(world.object(id).dynamics.velocity, Vec3{});
  EXPECT_EQ(world.object(id).dynamics.pending_force, Vec3{});
  const Vec3 p = world.object(id).dynamics.position;
  dynamics::step(world);
  EXPECT_EQ(world.object(id).dynamics.position, p);
}

TEST(PhysicalFlag, SettingSameFlagIsNoOp) {
  World world(testing_support::quiet_region());
  const ObjectId id = testing_support::add_physical(world, testing_support::unit_box(), {128.0, 128.0, 30.0});
  world.object(id).dynamics.velocity = {5.0, 0.0, 0.0};
  world.set_physical(id, true);
  EXPECT_EQ(world.object(id).dynamics.velocity, (Vec3{5.0, 0.0, 0.0}));
}

TEST(Sun, PhaseOriginAndQuarterPeriod) {
  const Vec3 s0 = sun_direction(0.0);
  EXPECT_NEAR(s0.x, 1.0, 1e-15);
  EXPECT_NEAR(s0.z, 0.0, 1e-15);
  const Vec3 s1 = sun_direction(3600.0);
  EXPECT_NEAR(s1.x, 0.0, 1e-12);
  EXPECT_NEAR(s1.z, 1.0, 1e-12);
}

TEST(Sun, PeriodAndMoonOpposition) {
  Gen gen(17);
  for (int i = 0; i < 1000; ++i) {
    const double t = gen.uniform(0.0, 1e6);
    const Vec3 a = sun_direction(t);
    const Vec3 b = sun_direction(t + 14400.0);
    EXPECT_NEAR(norm(a - b), 0.0, 1e-12);
    EXPECT_NEAR(dot(a, moon_direction(t)), -1.0, 1e-12);
    EXPECT_NEAR(norm(a), 1.0, 1e-12);
  }
}

TEST(Region, WaterLevelIsRegionConstant) {
  RegionConfig cfg;
  cfg.water_level = 33.0;
  World world(cfg);
  EXPECT_EQ(world.water_level_at({1.0, 2.0, 3.0}), 33.0);
  EXPECT_EQ(world.water_level_at({250.0, 100.0, 0.0}), 33.0);
}

TEST(Region, WindIsHorizontalAndBounded) {
  World world;
  world.wind().advance(1.0);
  EXPECT_EQ(world.wind_at({10.0, 20.0, 30.0}).z, 0.0);
  EXPECT_THROW(world.wind_at({-1.0, 20.0, 30.0}), Error);
}

TEST(Region, InvalidConfigRejected) {
  RegionConfig cfg;
  cfg.day_period = 0.0;
  EXPECT_THROW(World{cfg}, Error);
  cfg = {};
  cfg.water_level = -1.0;
  EXPECT_THROW(World{cfg}, Error);
}

TEST(World, CopyIsIndependentSnapshot) {
  World world(testing_support::quiet_region());
  const ObjectId id = testing_support::add_physical(world, testing_support::unit_box(), {128.0, 128.0, 30.0});
  const World snapshot = world;
  dynamics::step(world);
  EXPECT_EQ(snapshot.object(id).dynamics.position.z, 30.0);
  EXPECT_LT(world.object(id).dynamics.position.z, 30.0);
}

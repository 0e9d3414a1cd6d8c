#include "hyperreal/demos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace hyperreal {
namespace {

using nlohmann::json;

constexpr double kSqrtHalf = 0.70710678118654752440;

ObjectSpec sphere(std::string name, double diameter, Vec3 position, MaterialKind material = MaterialKind::Wood) {
  ObjectSpec spec;
  spec.name = std::move(name);
  spec.shape = {ShapeKind::Sphere, {diameter, diameter, diameter}};
  spec.material = Material::standard(material);
  spec.position = position;
  spec.physical = true;
  return spec;
}

Scenario freefall() {
  Scenario s;
  s.name = "freefall";
  s.objects.push_back(sphere("ball", 1.0, {128.0, 128.0, 3500.0}));
  s.steps = 60 * 45;
  return s;
}

Scenario buoyancy() {
  Scenario s;
  s.name = "buoyancy";
  const double values[] = {-1.0, 0.0, 0.5, 1.0, 2.0};
  double x = 96.0;
  for (double b : values) {
    ObjectSpec spec = sphere("b" + format_number(b), 1.0, {x, 128.0, 100.0});
    spec.buoyancy = b;
    s.objects.push_back(spec);
    x += 16.0;
  }
  s.steps = 10 * 45;
  return s;
}

// A proportional controller is the best a script can do without llSetVel.
constexpr const char* kAirtrackScript = R"(float target = 1.0;
float gain = 0.5;

default {
  state_entry() {
    llApplyImpulse(<llGetMass() * target, 0, 0>);
    llSetTimerEvent(0.5);
  }
  timer() {
    vector v = llGetVel();
    llSetForce(<llGetMass() * gain * (target - v.x), 0, 0>);
  }
}
)";

Scenario airtrack() {
  Scenario s;
  s.name = "airtrack";
  ObjectSpec glider;
  glider.name = "glider";
  glider.shape = {ShapeKind::Box, {1.0, 0.2, 0.2}};
  glider.material = Material::standard(MaterialKind::Metal);
  glider.position = {20.0, 128.0, 1.0};
  glider.physical = true;
  glider.buoyancy = 0.999;
  glider.script_source = kAirtrackScript;
  glider.script_name = "airtrack.lsl";
  s.objects.push_back(glider);
  s.steps = 60 * 45;
  return s;
}

std::string bumper_script(double direction) {
  return "float direction = " + format_number(direction) + R"(;
integer hits = 0;

default {
  state_entry() {
    llApplyImpulse(<llGetMass() * 2.0 * direction, 0, 0>);
  }
  collision_start(integer n) {
    hits += n;
  }
}
)";
}

Scenario bumpers() {
  Scenario s;
  s.name = "bumpers";
  const Vec3 starts[] = {{100.0, 128.0, 10.0}, {140.0, 128.0, 10.0}};
  const double dirs[] = {1.0, -1.0};
  for (int i = 0; i < 2; ++i) {
    ObjectSpec car = sphere(i == 0 ? "left" : "right", 2.0, starts[i], MaterialKind::Rubber);
    car.material.restitution = 1.0;
    car.buoyancy = 1.0;
    car.script_source = bumper_script(dirs[i]);
    car.script_name = car.name + ".lsl";
    s.objects.push_back(car);
  }
  s.steps = 20 * 45;
  return s;
}

Scenario cannon() {
  Scenario s;
  s.name = "cannon";
  s.region.default_law = LawOfMotion::newtonian();
  s.region.default_law.impetus_decay = 10.0;
  ObjectSpec ball = sphere("ball", 0.5, {20.0, 128.0, 1.0}, MaterialKind::Stone);
  ball.launch = LaunchSpec{20.0, {kSqrtHalf, 0.0, kSqrtHalf}};
  s.objects.push_back(ball);
  s.steps = 10 * 45;
  return s;
}

// Uniform in [lo, hi) from the top 53 bits, identical on every platform.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Scenario brownian(std::uint64_t seed) {
  Scenario s;
  s.name = "brownian";
  s.region.drag_enabled = false;
  s.region.enclosure = Enclosure{{100.0, 100.0, 1.0}, {140.0, 140.0, 41.0}};
  std::mt19937_64 rng(seed);

  ObjectSpec big = sphere("large", 6.0, {120.0, 120.0, 21.0}, MaterialKind::Rubber);
  big.material.restitution = 1.0;
  big.buoyancy = 1.0;
  s.objects.push_back(big);

  int placed = 0;
  for (int i = 0; i < 5 && placed < 100; ++i) {
    for (int j = 0; j < 5 && placed < 100; ++j) {
      for (int k = 0; k < 5 && placed < 100; ++k) {
        const Vec3 p{104.0 + 8.0 * i, 104.0 + 8.0 * j, 5.0 + 8.0 * k};
        if (norm(p - big.position) < 5.0) continue;
        ObjectSpec small = sphere("p" + std::to_string(placed), 0.5, p, MaterialKind::Rubber);
        small.material.restitution = 1.0;
        small.buoyancy = 1.0;
        small.velocity = {uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0)};
        s.objects.push_back(small);
        ++placed;
      }
    }
  }
  s.steps = 10000;
  return s;
}

Vec3 momentum(const World& world) {
  Vec3 p;
  for (const PrimObject& obj : world.objects()) {
    if (obj.physical) p += obj.dynamics.velocity * world.mass(obj.id);
  }
  return p;
}

class FreefallProbe : public DemoProbe {
 public:
  void start(const Simulation& sim) override { terminal_ = sim.world.region().terminal_velocity; }
  void observe(const Simulation& sim, const StepReport&) override {
    const double vz = sim.world.object(sim.ids[0]).dynamics.velocity.z;
    max_speed_ = std::max(max_speed_, std::abs(vz));
    final_vz_ = vz;
  }
  json extras() const override {
    return {{"terminal_velocity", terminal_},
            {"final_vz", final_vz_},
            {"max_fall_speed", max_speed_},
            {"final_speed_over_terminal", std::abs(final_vz_) / terminal_}};
  }

 private:
  double terminal_ = 0.0;
  double final_vz_ = 0.0;
  double max_speed_ = 0.0;
};

class BuoyancyProbe : public DemoProbe {
 public:
  void start(const Simulation& sim) override {
    for (ObjectId id : sim.ids) {
      const PrimObject& obj = sim.world.object(id);
      rows_.push_back({obj.buoyancy, obj.dynamics.position.z, 0.0, 0.0,
                       (obj.buoyancy - 1.0) * obj.gravity_multiplier * sim.world.region().gravity});
    }
  }
  void observe(const Simulation& sim, const StepReport& report) override {
    ++steps_;
    for (std::size_t i = 0; i < sim.ids.size(); ++i) {
      const ObjectDynamics& d = sim.world.object(sim.ids[i]).dynamics;
      if (steps_ == 1) rows_[i].initial_accel = d.velocity.z / report.dt;
      rows_[i].dz = d.position.z - rows_[i].z0;
    }
  }
  json extras() const override {
    json out = json::array();
    for (const Row& r : rows_) {
      out.push_back({{"buoyancy", r.b},
                     {"initial_accel", r.initial_accel},
                     {"expected_accel", r.expected},
                     {"displacement_z", r.dz}});
    }
    return {{"objects", out}};
  }

 private:
  struct Row {
    double b, z0, initial_accel, dz, expected;
  };
  std::vector<Row> rows_;
  std::uint64_t steps_ = 0;
};

class AirtrackProbe : public DemoProbe {
 public:
  void start(const Simulation&) override {}
  void observe(const Simulation& sim, const StepReport&) override {
    const Vec3 v = sim.world.object(sim.ids[0]).dynamics.velocity;
    final_ = v;
    drift_ = std::max(drift_, norm(v - Vec3{1.0, 0.0, 0.0}));
    vx_lo_ = std::min(vx_lo_, v.x);
    vx_hi_ = std::max(vx_hi_, v.x);
    vz_lo_ = std::min(vz_lo_, v.z);
    vz_hi_ = std::max(vz_hi_, v.z);
  }
  json extras() const override {
    return {{"target_velocity", {1.0, 0.0, 0.0}},
            {"velocity_drift", drift_},
            {"vx_range", {vx_lo_, vx_hi_}},
            {"vz_range", {vz_lo_, vz_hi_}},
            {"final_velocity", {final_.x, final_.y, final_.z}}};
  }

 private:
  double drift_ = 0.0;
  double vx_lo_ = INFINITY;
  double vx_hi_ = -INFINITY;
  double vz_lo_ = INFINITY;
  double vz_hi_ = -INFINITY;
  Vec3 final_;
};

class BumpersProbe : public DemoProbe {
 public:
  void start(const Simulation&) override {}
  void observe(const Simulation& sim, const StepReport& report) override {
    const double v0 = sim.world.object(sim.ids[0]).dynamics.velocity.x;
    const double v1 = sim.world.object(sim.ids[1]).dynamics.velocity.x;
    bool hit = false;
    for (const CollisionEvent& c : report.collisions) hit = hit || c.kind == ContactKind::Object;
    if (!collided_ && !hit) {
      before_ = {v0, v1};
    } else if (hit && !collided_) {
      collided_ = true;
      after_ = {v0, v1};
      time_ = report.sim_time;
    }
  }
  json extras() const override {
    json out{{"collided", collided_}, {"vx_before", {before_[0], before_[1]}}};
    if (collided_) {
      out["vx_after"] = {after_[0], after_[1]};
      out["collision_time"] = time_;
    }
    return out;
  }

 private:
  bool collided_ = false;
  std::array<double, 2> before_{};
  std::array<double, 2> after_{};
  double time_ = 0.0;
};

class CannonProbe : public DemoProbe {
 public:
  void start(const Simulation& sim) override {
    const PrimObject& ball = sim.world.object(sim.ids[0]);
    trace_.xz.emplace_back(ball.dynamics.position.x, ball.dynamics.position.z);
    law_ = std::string(to_string(laws::effective_law(sim.world, ball.id).kind));
  }
  void observe(const Simulation& sim, const StepReport& report) override {
    const ObjectDynamics& d = sim.world.object(sim.ids[0]).dynamics;
    max_height_ = std::max(max_height_, d.position.z);
    if (trace_.landed) return;
    trace_.xz.emplace_back(d.position.x, d.position.z);
    for (const CollisionEvent& c : report.collisions) trace_.landed = trace_.landed || c.kind == ContactKind::Ground;
  }
  json extras() const override {
    return {{"law", law_},
            {"landed", trace_.landed},
            {"range", trace_.range()},
            {"mid_range_height", trace_.mid_range_height()},
            {"max_height", max_height_}};
  }

 private:
  FlightTrace trace_;
  std::string law_;
  double max_height_ = 0.0;
};

class BrownianProbe : public DemoProbe {
 public:
  void start(const Simulation& sim) override { p0_ = momentum(sim.world); }
  void observe(const Simulation& sim, const StepReport& report) override {
    external_ += report.external_impulse;
    drift_ = std::max(drift_, norm(momentum(sim.world) - p0_ - external_));
  }
  json extras() const override {
    return {{"initial_momentum", {p0_.x, p0_.y, p0_.z}},
            {"wall_impulse_total", {external_.x, external_.y, external_.z}},
            {"max_momentum_drift", drift_}};
  }

 private:
  Vec3 p0_;
  Vec3 external_;
  double drift_ = 0.0;
};

}  // namespace

double FlightTrace::range() const {
  if (xz.empty()) return 0.0;
  return xz.back().first - xz.front().first;
}

double FlightTrace::mid_range_height() const {
  if (xz.size() < 2) return xz.empty() ? 0.0 : xz.front().second;
  const double target = xz.front().first + 0.5 * range();
  for (std::size_t i = 1; i < xz.size(); ++i) {
    const auto [x0, z0] = xz[i - 1];
    const auto [x1, z1] = xz[i];
    if ((x0 - target) * (x1 - target) <= 0.0 && x1 != x0) return z0 + (z1 - z0) * (target - x0) / (x1 - x0);
  }
  return xz.back().second;
}

const std::vector<std::string_view>& demo_names() {
  static const std::vector<std::string_view> names{"freefall", "buoyancy", "airtrack", "bumpers", "cannon", "brownian"};
  return names;
}

Scenario demo_scenario(std::string_view name, std::optional<LawKind> law, std::uint64_t seed) {
  Scenario s;
  if (name == "freefall") {
    s = freefall();
  } else if (name == "buoyancy") {
    s = buoyancy();
  } else if (name == "airtrack") {
    s = airtrack();
  } else if (name == "bumpers") {
    s = bumpers();
  } else if (name == "cannon") {
    s = cannon();
  } else if (name == "brownian") {
    s = brownian(seed);
  } else {
    throw Error(ErrorCode::UnknownDemo, "no demo named '" + std::string(name) + "'");
  }
  if (law) s.region.default_law.kind = *law;
  apply_seed(s, seed);
  return s;
}

std::unique_ptr<DemoProbe> make_probe(std::string_view name) {
  if (name == "freefall") return std::make_unique<FreefallProbe>();
  if (name == "buoyancy") return std::make_unique<BuoyancyProbe>();
  if (name == "airtrack") return std::make_unique<AirtrackProbe>();
  if (name == "bumpers") return std::make_unique<BumpersProbe>();
  if (name == "cannon") return std::make_unique<CannonProbe>();
  if (name == "brownian") return std::make_unique<BrownianProbe>();
  throw Error(ErrorCode::UnknownDemo, "no demo named '" + std::string(name) + "'");
}

}  // namespace hyperreal

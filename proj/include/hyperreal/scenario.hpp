#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperreal/dynamics.hpp"
#include "hyperreal/script/engine.hpp"
#include "hyperreal/world.hpp"

namespace hyperreal {

struct LaunchSpec {
  double speed = 0.0;
  Vec3 direction{1.0, 0.0, 0.0};
};

struct ObjectSpec {
  std::string name;
  PrimShape shape;
  Material material;
  Vec3 position;
  bool physical = false;
  double buoyancy = 0.0;
  double gravity_multiplier = 1.0;
  std::optional<LawOfMotion> law;
  /// Initial state, set before the first step (scenario setup, not a script call).
  Vec3 velocity;
  std::optional<LaunchSpec> launch;
  std::optional<std::string> script_source;
  std::string script_name;  // file name used in diagnostics
};

struct TouchSpec {
  double time = 0.0;
  std::string object;
};

struct Scenario {
  std::string name = "scenario";
  RegionConfig region;
  bool strict = true;
  std::vector<ObjectSpec> objects;
  std::uint64_t steps = 1;
  std::vector<TouchSpec> touches;
};

/// Reads a scenario document. Script paths resolve against `base_dir`.
/// Throws Error(ScenarioError) or Error(InvalidParameter) on bad input.
Scenario scenario_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = ".");
Scenario load_scenario(const std::filesystem::path& path);

/// Seeds the region and wind generator.
void apply_seed(Scenario& scenario, std::uint64_t seed);

/// A world populated from the scenario, plus its script engine.
/// Script compile errors propagate as script::ScriptError.
struct Simulation {
  World world;
  script::ScriptEngine engine;
  std::vector<ObjectId> ids;  // in scenario order
};

Simulation build_simulation(const Scenario& scenario);

inline constexpr const char* kCsvHeader = "t,object_id,px,py,pz,vx,vy,vz,energy,dilation";

struct RunOptions {
  std::uint64_t sample_every = 1;
  std::ostream* csv = nullptr;
  /// Called after every step.
  std::function<void(const Simulation&, const StepReport&)> observer;
};

struct QuantityStats {
  double min = 0.0;
  double max = 0.0;
  double final = 0.0;
};

struct RunSummary {
  std::uint64_t steps = 0;
  double sim_time = 0.0;
  std::size_t collisions = 0;
  double mean_dilation = 1.0;
  /// Per object id, per quantity (px..vz, energy).
  std::vector<std::pair<std::uint32_t, std::vector<std::pair<std::string, QuantityStats>>>> objects;
  std::vector<script::FaultRecord> faults;
};

/// Steps the whole scenario, writing trajectory rows (one per object every
/// `sample_every` steps, plus t = 0) when a stream is given.
RunSummary run(Simulation& sim, const Scenario& scenario, const RunOptions& options);

nlohmann::json to_json(const RunSummary& summary);

/// Fixed 9-significant-digit rendering used for every CSV number.
std::string format_number(double value);

}  // namespace hyperreal

#include "hyperreal/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "hyperreal/laws.hpp"
#include "hyperreal/script/parser.hpp"

namespace hyperreal {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& message) {
  throw Error(ErrorCode::ScenarioError, where + ": " + message);
}

void allow_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) bad(where, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) bad(where, "unknown key '" + item.key() + "'");
  }
}

double number(const json& obj, const char* key, double fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) bad(where + "." + key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad(where + "." + key, "must be finite");
  return d;
}

bool boolean(const json& obj, const char* key, bool fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) bad(where + "." + key, "expected true or false");
  return obj.at(key).get<bool>();
}

std::string text(const json& obj, const char* key, const std::string& fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_string()) bad(where + "." + key, "expected a string");
  return obj.at(key).get<std::string>();
}

Vec3 vec3(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) bad(where, "expected [x, y, z]");
  Vec3 out;
  double* parts[3] = {&out.x, &out.y, &out.z};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!v[i].is_number()) bad(where, "expected [x, y, z]");
    *parts[i] = v[i].get<double>();
  }
  if (!is_finite(out)) bad(where, "must be finite");
  return out;
}

LawOfMotion law_from_json(const json& v, const std::string& where) {
  if (v.is_string()) {
    LawOfMotion law;
    law.kind = parse_law_kind(v.get<std::string>());
    return law;
  }
  allow_keys(v, where, {"kind", "impetus_decay", "mobility"});
  LawOfMotion law;
  law.kind = parse_law_kind(text(v, "kind", "newtonian", where));
  law.impetus_decay = number(v, "impetus_decay", law.impetus_decay, where);
  law.mobility = number(v, "mobility", law.mobility, where);
  validate(law);
  return law;
}

RegionConfig region_from_json(const json& r, Scenario& scenario) {
  const std::string where = "region";
  allow_keys(r, where,
             {"gravity", "terminal_velocity", "drag", "water_level", "day_period", "density", "step_size", "seed",
              "law", "dilation", "energy", "enclosure", "ground_height", "ground_restitution", "wind", "strict"});
  RegionConfig c;
  c.gravity = number(r, "gravity", c.gravity, where);
  c.terminal_velocity = number(r, "terminal_velocity", c.terminal_velocity, where);
  c.drag_enabled = boolean(r, "drag", c.drag_enabled, where);
  c.water_level = number(r, "water_level", c.water_level, where);
  c.day_period = number(r, "day_period", c.day_period, where);
  c.density = number(r, "density", c.density, where);
  c.step_size = number(r, "step_size", c.step_size, where);
  c.ground_height = number(r, "ground_height", c.ground_height, where);
  c.ground_restitution = number(r, "ground_restitution", c.ground_restitution, where);
  if (r.contains("seed")) {
    if (!r.at("seed").is_number_unsigned()) bad("region.seed", "expected a non-negative integer");
    c.wind.seed = r.at("seed").get<std::uint64_t>();
  }
  if (r.contains("law")) c.default_law = law_from_json(r.at("law"), "region.law");
  if (r.contains("dilation")) {
    const json& d = r.at("dilation");
    allow_keys(d, "region.dilation", {"budget", "per_physical_object", "per_script_op"});
    c.dilation.budget = number(d, "budget", c.dilation.budget, "region.dilation");
    c.dilation.per_physical_object = number(d, "per_physical_object", c.dilation.per_physical_object, "region.dilation");
    c.dilation.per_script_op = number(d, "per_script_op", c.dilation.per_script_op, "region.dilation");
  }
  if (r.contains("energy")) {
    const json& e = r.at("energy");
    allow_keys(e, "region.energy", {"cap", "refill", "costs"});
    c.energy_cap = number(e, "cap", c.energy_cap, "region.energy");
    c.energy_refill = number(e, "refill", c.energy_refill, "region.energy");
    if (e.contains("costs")) {
      const json& k = e.at("costs");
      allow_keys(k, "region.energy.costs", {"force", "impulse", "torque"});
      c.energy_costs.force = number(k, "force", c.energy_costs.force, "region.energy.costs");
      c.energy_costs.impulse = number(k, "impulse", c.energy_costs.impulse, "region.energy.costs");
      c.energy_costs.torque = number(k, "torque", c.energy_costs.torque, "region.energy.costs");
    }
  }
  if (r.contains("enclosure")) {
    const json& e = r.at("enclosure");
    allow_keys(e, "region.enclosure", {"min", "max"});
    if (!e.contains("min") || !e.contains("max")) bad("region.enclosure", "needs min and max");
    c.enclosure = Enclosure{vec3(e.at("min"), "region.enclosure.min"), vec3(e.at("max"), "region.enclosure.max")};
  }
  if (r.contains("wind")) {
    const json& w = r.at("wind");
    if (w.is_boolean()) {
      c.wind_enabled = w.get<bool>();
    } else {
      const std::string ww = "region.wind";
      allow_keys(w, ww,
                 {"enabled", "viscosity", "dissipation", "forcing_amplitude", "forcing_timescale", "update_interval"});
      c.wind_enabled = boolean(w, "enabled", true, ww);
      c.wind.viscosity = number(w, "viscosity", c.wind.viscosity, ww);
      c.wind.dissipation = number(w, "dissipation", c.wind.dissipation, ww);
      c.wind.forcing_amplitude = number(w, "forcing_amplitude", c.wind.forcing_amplitude, ww);
      c.wind.forcing_timescale = number(w, "forcing_timescale", c.wind.forcing_timescale, ww);
      c.wind.update_interval = number(w, "update_interval", c.wind.update_interval, ww);
    }
  }
  scenario.strict = boolean(r, "strict", true, where);
  c.validate();
  return c;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ScenarioError, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ObjectSpec object_from_json(const json& o, std::size_t index, const std::filesystem::path& base_dir) {
  const std::string where = "objects[" + std::to_string(index) + "]";
  allow_keys(o, where,
             {"name", "shape", "size", "material", "restitution", "position", "physical", "buoyancy",
              "gravity_multiplier", "law", "velocity", "launch", "script", "script_source"});
  ObjectSpec spec;
  spec.name = text(o, "name", "object" + std::to_string(index + 1), where);
  spec.shape.kind = parse_shape_kind(text(o, "shape", "box", where));
  if (o.contains("size")) spec.shape.size = vec3(o.at("size"), where + ".size");
  spec.shape.validate();
  spec.material = Material::standard(parse_material_kind(text(o, "material", "wood", where)));
  spec.material.restitution = number(o, "restitution", spec.material.restitution, where);
  if (spec.material.restitution < 0.0 || spec.material.restitution > 1.0) {
    bad(where + ".restitution", "must lie in [0, 1]");
  }
  if (!o.contains("position")) bad(where, "missing position");
  spec.position = vec3(o.at("position"), where + ".position");
  spec.physical = boolean(o, "physical", false, where);
  spec.buoyancy = number(o, "buoyancy", 0.0, where);
  spec.gravity_multiplier = number(o, "gravity_multiplier", 1.0, where);
  if (o.contains("law")) spec.law = law_from_json(o.at("law"), where + ".law");
  if (o.contains("velocity")) spec.velocity = vec3(o.at("velocity"), where + ".velocity");
  if (o.contains("launch")) {
    const json& l = o.at("launch");
    allow_keys(l, where + ".launch", {"speed", "direction"});
    LaunchSpec launch;
    launch.speed = number(l, "speed", 0.0, where + ".launch");
    if (l.contains("direction")) launch.direction = vec3(l.at("direction"), where + ".launch.direction");
    spec.launch = launch;
  }
  if (o.contains("script") && o.contains("script_source")) bad(where, "give either script or script_source");
  if (o.contains("script")) {
    const std::filesystem::path path = base_dir / text(o, "script", "", where);
    spec.script_source = read_file(path);
    spec.script_name = path.string();
  } else if (o.contains("script_source")) {
    spec.script_source = text(o, "script_source", "", where);
    spec.script_name = spec.name + ".lsl";
  }
  return spec;
}

}  // namespace

Scenario scenario_from_json(const json& doc, const std::filesystem::path& base_dir) {
  allow_keys(doc, "scenario", {"name", "description", "region", "objects", "duration", "events"});
  Scenario scenario;
  scenario.name = text(doc, "name", scenario.name, "scenario");
  if (doc.contains("region")) scenario.region = region_from_json(doc.at("region"), scenario);

  if (!doc.contains("objects") || !doc.at("objects").is_array()) bad("scenario", "missing objects array");
  std::set<std::string> names;
  for (std::size_t i = 0; i < doc.at("objects").size(); ++i) {
    ObjectSpec spec = object_from_json(doc.at("objects")[i], i, base_dir);
    if (!names.insert(spec.name).second) bad("objects[" + std::to_string(i) + "]", "duplicate name '" + spec.name + "'");
    scenario.objects.push_back(std::move(spec));
  }

  if (!doc.contains("duration")) bad("scenario", "missing duration");
  const json& d = doc.at("duration");
  allow_keys(d, "duration", {"steps", "seconds"});
  if (d.contains("steps") == d.contains("seconds")) bad("duration", "give exactly one of steps or seconds");
  if (d.contains("steps")) {
    if (!d.at("steps").is_number_integer() || d.at("steps").get<std::int64_t>() <= 0) {
      bad("duration.steps", "must be a positive integer");
    }
    scenario.steps = d.at("steps").get<std::uint64_t>();
  } else {
    const double seconds = number(d, "seconds", 0.0, "duration");
    if (seconds <= 0.0) bad("duration.seconds", "must be positive");
    scenario.steps = static_cast<std::uint64_t>(std::llround(seconds / scenario.region.step_size));
    if (scenario.steps == 0) scenario.steps = 1;
  }

  if (doc.contains("events")) {
    if (!doc.at("events").is_array()) bad("events", "expected an array");
    for (std::size_t i = 0; i < doc.at("events").size(); ++i) {
      const std::string where = "events[" + std::to_string(i) + "]";
      const json& e = doc.at("events")[i];
      allow_keys(e, where, {"type", "time", "object"});
      if (text(e, "type", "touch", where) != "touch") bad(where, "only touch events are supported");
      TouchSpec touch{number(e, "time", 0.0, where), text(e, "object", "", where)};
      if (!names.count(touch.object)) bad(where, "unknown object '" + touch.object + "'");
      scenario.touches.push_back(touch);
    }
  }
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  const std::string source = read_file(path);
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ScenarioError, path.string() + ": " + e.what());
  }
  return scenario_from_json(doc, path.parent_path());
}

void apply_seed(Scenario& scenario, std::uint64_t seed) { scenario.region.wind.seed = seed; }

Simulation build_simulation(const Scenario& scenario) {
  Simulation sim{World(scenario.region), script::ScriptEngine(script::ScriptConfig{scenario.strict, 100000}), {}};
  World& world = sim.world;
  for (const ObjectSpec& spec : scenario.objects) {
    const ObjectId id = world.create_object(spec.shape, spec.material, spec.position).id;
    PrimObject& obj = world.object(id);
    obj.buoyancy = spec.buoyancy;
    obj.gravity_multiplier = spec.gravity_multiplier;
    if (spec.law) laws::set_law(world, id, spec.law);
    world.set_physical(id, spec.physical);
    if (spec.physical) world.object(id).dynamics.velocity = spec.velocity;
    if (spec.launch) laws::launch(world, id, spec.launch->speed, spec.launch->direction);
    sim.ids.push_back(id);
  }
  for (std::size_t i = 0; i < scenario.objects.size(); ++i) {
    const ObjectSpec& spec = scenario.objects[i];
    if (!spec.script_source) continue;
    sim.engine.attach(world, sim.ids[i], script::parse(*spec.script_source), spec.script_name);
  }
  std::map<std::string, ObjectId> by_name;
  for (std::size_t i = 0; i < scenario.objects.size(); ++i) by_name[scenario.objects[i].name] = sim.ids[i];
  for (const TouchSpec& t : scenario.touches) sim.engine.inject_touch(t.time, by_name.at(t.object));
  return sim;
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

namespace {

constexpr const char* kQuantities[] = {"px", "py", "pz", "vx", "vy", "vz", "energy"};

std::array<double, 7> quantities(const PrimObject& obj) {
  const ObjectDynamics& d = obj.dynamics;
  return {d.position.x, d.position.y, d.position.z, d.velocity.x, d.velocity.y, d.velocity.z, d.energy};
}

void write_rows(std::ostream& out, const World& world) {
  const std::string t = format_number(world.clock().sim_time);
  const std::string dilation = format_number(world.clock().dilation);
  for (const PrimObject& obj : world.objects()) {
    out << t << ',' << obj.id.value;
    for (double q : quantities(obj)) out << ',' << format_number(q);
    out << ',' << dilation << '\n';
  }
}

}  // namespace

RunSummary run(Simulation& sim, const Scenario& scenario, const RunOptions& options) {
  if (options.sample_every == 0) throw Error(ErrorCode::InvalidParameter, "sample-every must be at least 1");
  RunSummary summary;
  std::map<std::uint32_t, std::array<QuantityStats, 7>> stats;
  auto track = [&](const World& world) {
    for (const PrimObject& obj : world.objects()) {
      const auto q = quantities(obj);
      auto [it, fresh] = stats.try_emplace(obj.id.value);
      for (std::size_t i = 0; i < q.size(); ++i) {
        QuantityStats& s = it->second[i];
        if (fresh) s.min = s.max = q[i];
        s.min = std::min(s.min, q[i]);
        s.max = std::max(s.max, q[i]);
        s.final = q[i];
      }
    }
  };

  if (options.csv) *options.csv << kCsvHeader << '\n';
  if (options.csv) write_rows(*options.csv, sim.world);
  track(sim.world);

  double dilation_sum = 0.0;
  for (std::uint64_t n = 1; n <= scenario.steps; ++n) {
    const StepReport report = sim.engine.step(sim.world);
    summary.collisions += report.collisions.size();
    dilation_sum += report.dilation;
    track(sim.world);
    if (options.csv && n % options.sample_every == 0) write_rows(*options.csv, sim.world);
    if (options.observer) options.observer(sim, report);
  }
  summary.steps = scenario.steps;
  summary.sim_time = sim.world.clock().sim_time;
  summary.mean_dilation = dilation_sum / static_cast<double>(scenario.steps);
  for (const auto& [id, arr] : stats) {
    std::vector<std::pair<std::string, QuantityStats>> row;
    for (std::size_t i = 0; i < arr.size(); ++i) row.emplace_back(kQuantities[i], arr[i]);
    summary.objects.emplace_back(id, std::move(row));
  }
  summary.faults = sim.engine.faults();
  return summary;
}

nlohmann::json to_json(const RunSummary& summary) {
  json doc;
  doc["steps"] = summary.steps;
  doc["sim_time"] = summary.sim_time;
  doc["collisions"] = summary.collisions;
  doc["mean_dilation"] = summary.mean_dilation;
  json objects = json::object();
  for (const auto& [id, row] : summary.objects) {
    json entry;
    for (const auto& [name, s] : row) entry[name] = {{"min", s.min}, {"max", s.max}, {"final", s.final}};
    objects[std::to_string(id)] = entry;
  }
  doc["objects"] = objects;
  json faults = json::array();
  for (const script::FaultRecord& f : summary.faults) {
    json entry{{"time", f.time},
               {"object", f.object.value},
               {"event", f.event},
               {"kind", std::string(script::to_string(f.kind))},
               {"message", f.message},
               {"line", f.loc.line},
               {"column", f.loc.column}};
    if (f.cause) entry["cause"] = std::string(to_string(*f.cause));
    faults.push_back(entry);
  }
  doc["faults"] = faults;
  return doc;
}

}  // namespace hyperreal

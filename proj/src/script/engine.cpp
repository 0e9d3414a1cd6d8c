#include "hyperreal/script/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace hyperreal::script {
namespace detail {
void init_globals(World& world, ScriptInstance& instance, const ScriptConfig& config);
}

ScriptInstance& ScriptEngine::attach(World& world, ObjectId object, Script script, std::string name) {
  world.object(object);  // throws UnknownObject
  if (instances_.count(object) != 0) {
    throw Error(ErrorCode::InvalidParameter, "object " + std::to_string(object.value) + " already has a script");
  }
  ScriptInstance inst;
  inst.object = object;
  inst.state = script.state_index("default");
  inst.script = std::make_shared<const Script>(std::move(script));
  inst.name = std::move(name);
  ScriptInstance& stored = instances_.emplace(object, std::move(inst)).first->second;
  try {
    detail::init_globals(world, stored, config_);
  } catch (const ScriptError& e) {
    faults_.push_back({world.clock().sim_time, object, "globals", e.kind(), e.cause(), e.what(), e.location()});
  }
  dispatch(world, object, "state_entry");
  return stored;
}

void ScriptEngine::detach(ObjectId object) { instances_.erase(object); }

ScriptInstance* ScriptEngine::instance(ObjectId object) {
  auto it = instances_.find(object);
  return it == instances_.end() ? nullptr : &it->second;
}

void ScriptEngine::inject_touch(double time, ObjectId object) { touches_.emplace(time, object); }

bool ScriptEngine::dispatch(World& world, ObjectId object, std::string_view event, std::span<const Value> args) {
  ScriptInstance* inst = instance(object);
  if (inst == nullptr || !world.contains(object)) return false;
  if (inst->script->states[inst->state].find(event) == nullptr) return false;
  char stamp[64];
  std::snprintf(stamp, sizeof stamp, "%.9g %u ", world.clock().sim_time, object.value);
  log_.push_back(stamp + std::string(event));
  const std::uint64_t before = inst->ops_executed;
  try {
    run_event(world, *inst, event, args, config_);
  } catch (const ScriptError& e) {
    faults_.push_back({world.clock().sim_time, object, std::string(event), e.kind(), e.cause(), e.what(),
                       e.location()});
  }
  pending_ops_ += inst->ops_executed - before;
  return true;
}

StepReport ScriptEngine::step(World& world) {
  world.record_script_ops(pending_ops_);
  pending_ops_ = 0;
  StepReport report = dynamics::step(world);
  const double now = world.clock().sim_time;

  std::map<ObjectId, std::int32_t> contacts;
  for (const CollisionEvent& c : report.collisions) {
    if (c.kind != ContactKind::Object || !c.other) continue;
    ++contacts[c.a];
    ++contacts[*c.other];
  }
  for (const auto& [id, count] : contacts) {
    const Value arg{count};
    dispatch(world, id, "collision_start", std::span<const Value>(&arg, 1));
  }

  std::vector<ObjectId> due;
  for (auto& [id, inst] : instances_) {
    if (inst.timer_interval && inst.next_timer <= now + 1e-9) due.push_back(id);
  }
  for (ObjectId id : due) {
    ScriptInstance* inst = instance(id);
    if (inst == nullptr || !inst->timer_interval) continue;
    // Missed periods are dropped rather than replayed.
    while (inst->next_timer <= now + 1e-9) inst->next_timer += *inst->timer_interval;
    dispatch(world, id, "timer");
  }

  std::vector<ObjectId> touched;
  while (!touches_.empty() && touches_.begin()->first <= now + 1e-9) {
    touched.push_back(touches_.begin()->second);
    touches_.erase(touches_.begin());
  }
  for (ObjectId id : touched) {
    const Value arg{std::int32_t{1}};
    dispatch(world, id, "touch_start", std::span<const Value>(&arg, 1));
  }
  return report;
}

}  // namespace hyperreal::script

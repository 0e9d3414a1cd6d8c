#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperreal/dynamics.hpp"
#include "hyperreal/script/ast.hpp"
#include "hyperreal/script/diagnostics.hpp"
#include "hyperreal/script/value.hpp"
#include "hyperreal/world.hpp"

namespace hyperreal::script {

struct ScriptConfig {
  /// Strict: gating violations abort the event with a RuntimeFault.
  /// Lenient: the offending call silently does nothing, as in SL.
  bool strict = true;
  std::uint64_t instruction_budget = 100000;  // per event
};

/// Running state of one script bound to one object.
struct ScriptInstance {
  ObjectId object;
  std::shared_ptr<const Script> script;
  std::size_t state = 0;
  std::map<std::string, Value, std::less<>> globals;
  std::optional<double> timer_interval;
  double next_timer = 0.0;
  std::uint64_t ops_executed = 0;  // lifetime total
  std::string name;                // label used in diagnostics
};

struct FaultRecord {
  double time = 0.0;
  ObjectId object;
  std::string event;
  ScriptErrorKind kind = ScriptErrorKind::RuntimeFault;
  std::optional<ErrorCode> cause;
  std::string message;
  SourceLoc loc;
};

/// Executes one handler. Returns the number of operations it used.
/// Throws ScriptError (RuntimeFault, BudgetExceeded) after partial effects.
std::uint64_t run_event(World& world, ScriptInstance& instance, std::string_view event, std::span<const Value> args,
                        const ScriptConfig& config = {});

/// Owns every script instance of one world and interleaves their events
/// with the physics steps.
///
/// Per step: collision_start handlers (by object id), then due timers (by
/// id), then touches injected for that time. Faults never stop the run; they
/// are collected and the event is abandoned.
class ScriptEngine {
 public:
  explicit ScriptEngine(ScriptConfig config = {}) : config_(config) {}

  const ScriptConfig& config() const { return config_; }

  /// Binds a checked script to an object and runs its state_entry.
  ScriptInstance& attach(World& world, ObjectId object, Script script, std::string name = "script");
  void detach(ObjectId object);

  ScriptInstance* instance(ObjectId object);
  const std::map<ObjectId, ScriptInstance>& instances() const { return instances_; }

  /// A touch delivered by the first step whose end time reaches `time`.
  void inject_touch(double time, ObjectId object);

  /// Delivers an event immediately. Returns false if nothing handles it.
  bool dispatch(World& world, ObjectId object, std::string_view event, std::span<const Value> args = {});

  StepReport step(World& world);

  const std::vector<FaultRecord>& faults() const { return faults_; }
  /// Handler invocations in order, as "time object event".
  const std::vector<std::string>& event_log() const { return log_; }

 private:
  ScriptConfig config_;
  std::map<ObjectId, ScriptInstance> instances_;
  std::multimap<double, ObjectId> touches_;
  std::vector<FaultRecord> faults_;
  std::vector<std::string> log_;
  std::uint64_t pending_ops_ = 0;
};

}  // namespace hyperreal::script

#include <gtest/gtest.h>

#include <climits>
#include <cmath>
#include <string>

#include "hyperreal/dynamics.hpp"
#include "hyperreal/script/builtins.hpp"
#include "hyperreal/script/engine.hpp"
#include "hyperreal/script/parser.hpp"
#include "support.hpp"

using namespace hyperreal;
using namespace hyperreal::script;
using testing_support::add_physical;
using testing_support::ball;
using testing_support::Gen;
using testing_support::quiet_region;

namespace {

template <class T>
T global(const ScriptInstance& inst, const std::string& name) {
  return std::get<T>(inst.globals.at(name));
}

ScriptErrorKind parse_error(const std::string& source, SourceLoc* where = nullptr) {
  try {
    parse(source);
  } catch (const ScriptError& e) {
    if (where) *where = e.location();
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << source;
  return ScriptErrorKind::RuntimeFault;
}

/// Random well-typed source text over a fixed set of globals.
class SourceGen {
 public:
  explicit SourceGen(std::uint64_t seed) : gen_(seed) {}

  std::string program() {
    std::string out =
        "integer i = 3;\nfloat f = 1.5;\nvector v = <1, 2, 3>;\nrotation r = <0, 0, 0, 1>;\nstring s = \"hi\";\n";
    out += "default {\n  state_entry() {\n" + block(3) + "  }\n  touch_start(integer n) {\n" + block(3) + "  }\n}\n";
    out += "state other {\n  timer() {\n" + block(3) + "  }\n  collision_start(integer n) {\n    state default;\n  }\n}\n";
    return out;
  }

  std::string block(int depth) {
    std::string out;
    const int n = gen_.integer(1, 4);
    for (int k = 0; k < n; ++k) out += stmt(depth) + "\n";
    return out;
  }

  std::string stmt(int depth) {
    switch (gen_.integer(0, depth > 0 ? 9 : 5)) {
      case 0: return "i = " + expr(ValueType::Integer, 3) + ";";
      case 1: return "f += " + expr(ValueType::Float, 3) + ";";
      case 2: return std::string("v.") + "xyz"[gen_.integer(0, 2)] + " = " + expr(ValueType::Float, 2) + ";";
      case 3: return "llSetForce(" + expr(ValueType::Vector, 2) + ", " + expr(ValueType::Integer, 1) + ");";
      case 4: return "r = " + expr(ValueType::Rotation, 2) + ";";
      case 5: return "{ float g = " + expr(ValueType::Float, 2) + "; f = g; }";
      case 6: return "if (" + expr(ValueType::Integer, 2) + ") {\n" + block(depth - 1) + "}";
      case 7:
        return "if (" + expr(ValueType::Integer, 2) + ") {\n" + block(depth - 1) + "} else {\n" + block(depth - 1) + "}";
      case 8: return "while (" + expr(ValueType::Integer, 2) + ") {\n" + block(depth - 1) + "}";
      default: return gen_.coin() ? "state other;" : "return;";
    }
  }

  std::string expr(ValueType t, int depth) {
    const bool leaf = depth <= 0 || gen_.integer(0, 3) == 0;
    switch (t) {
      case ValueType::Integer: {
        if (leaf) return gen_.coin() ? "i" : std::to_string(gen_.integer(0, INT_MAX));
        static const char* ops[] = {"+", "-", "*", "/", "%", "==", "!=", "<", "<=", ">", ">=", "&&", "||"};
        switch (gen_.integer(0, 4)) {
          case 0: return "-" + expr(t, depth - 1);
          case 1: return "!" + expr(t, depth - 1);
          case 2: return "(integer)" + expr(ValueType::Float, depth - 1);
          case 3: return "(" + expr(ValueType::Float, depth - 1) + " < " + expr(ValueType::Float, depth - 1) + ")";
          default:
            return "(" + expr(t, depth - 1) + " " + ops[gen_.integer(0, 12)] + " " + expr(t, depth - 1) + ")";
        }
      }
      case ValueType::Float: {
        if (leaf) {
          switch (gen_.integer(0, 3)) {
            case 0: return "f";
            case 1: return "llGetMass()";
            case 2: return "PI";
            default: {
              char buf[40];
              std::snprintf(buf, sizeof buf, "%.17g", gen_.uniform(0.0, 1000.0));
              return std::string(buf).find_first_of(".e") == std::string::npos ? std::string(buf) + ".0" : buf;
            }
          }
        }
        static const char* ops[] = {"+", "-", "*", "/"};
        switch (gen_.integer(0, 4)) {
          case 0: return "-" + expr(t, depth - 1);
          case 1: return "(float)" + expr(ValueType::Integer, depth - 1);
          case 2: return "(" + expr(ValueType::Vector, depth - 1) + " * " + expr(ValueType::Vector, depth - 1) + ")";
          case 3: return expr(ValueType::Vector, 0) + "." + "xyz"[gen_.integer(0, 2)];
          default: return "(" + expr(t, depth - 1) + " " + ops[gen_.integer(0, 3)] + " " + expr(t, depth - 1) + ")";
        }
      }
      case ValueType::Vector: {
        if (leaf) return gen_.coin() ? "v" : (gen_.coin() ? "llGetPos()" : "ZERO_VECTOR");
        switch (gen_.integer(0, 4)) {
          case 0:
            return "<" + expr(ValueType::Float, depth - 1) + ", " + expr(ValueType::Float, depth - 1) + ", " +
                   expr(ValueType::Float, depth - 1) + ">";
          case 1: return "(" + expr(t, depth - 1) + " + " + expr(t, depth - 1) + ")";
          case 2: return "(" + expr(t, depth - 1) + " * " + expr(ValueType::Float, depth - 1) + ")";
          case 3: return "(" + expr(t, depth - 1) + " % " + expr(t, depth - 1) + ")";
          default: return "(" + expr(t, depth - 1) + " * " + expr(ValueType::Rotation, depth - 1) + ")";
        }
      }
      case ValueType::Rotation: {
        if (leaf) return gen_.coin() ? "r" : "ZERO_ROTATION";
        if (gen_.coin()) return "(" + expr(t, depth - 1) + " * " + expr(t, depth - 1) + ")";
        return "<" + expr(ValueType::Float, 0) + ", " + expr(ValueType::Float, 0) + ", " + expr(ValueType::Float, 0) +
               ", " + expr(ValueType::Float, 0) + ">";
      }
      default: return "s";
    }
  }

 private:
  Gen gen_;
};

std::string argument_for(ValueType t) {
  switch (t) {
    case ValueType::Integer: return "1";
    case ValueType::Float: return "1.0";
    case ValueType::Vector: return "<1.0, 2.0, 3.0>";
    case ValueType::Rotation: return "<0.0, 0.0, 0.0, 1.0>";
    case ValueType::String: return "\"box\"";
    default: return "";
  }
}

struct Rig {
  World world{quiet_region()};
  ScriptEngine engine;

  explicit Rig(ScriptConfig config = {}) : engine(config) {}

  ScriptInstance& attach(ObjectId id, const std::string& source) { return engine.attach(world, id, parse(source)); }
};

}  // namespace

TEST(Parse, MinimalProgram) {
  const Script s = parse("default { state_entry() { } }");
  ASSERT_EQ(s.states.size(), 1u);
  EXPECT_EQ(s.states[0].name, "default");
  ASSERT_EQ(s.states[0].handlers.size(), 1u);
  EXPECT_EQ(s.states[0].handlers[0].event, "state_entry");
  EXPECT_TRUE(s.states[0].handlers[0].body.body.empty());
}

TEST(Parse, ForceCallWithVectorLiteral) {
  const Script s = parse("default { state_entry() { llSetForce(<0,0,98>); } }");
  const Stmt& stmt = s.states[0].handlers[0].body.body.at(0);
  const auto& call = std::get<Call>(std::get<ExprStmt>(stmt.node).expr.node);
  EXPECT_EQ(call.name, "llSetForce");
  ASSERT_EQ(call.args.size(), 1u);
  const auto& lit = std::get<VectorLiteral>(call.args[0]->node);
  ASSERT_EQ(lit.parts.size(), 3u);
  EXPECT_EQ(std::get<IntLiteral>(lit.parts[2]->node).value, 98);
  EXPECT_EQ(call.args[0]->type, ValueType::Vector);
}

TEST(Parse, UnknownBuiltinHasLocation) {
  SourceLoc loc;
  EXPECT_EQ(parse_error("default {\n  state_entry() { llFoo(); }\n}", &loc), ScriptErrorKind::UnknownBuiltin);
  EXPECT_EQ(loc.line, 2);
  EXPECT_GT(loc.column, 1);
}

TEST(Parse, NoSetVelocity) {
  EXPECT_EQ(find_builtin("llSetVel"), nullptr);
  EXPECT_EQ(parse_error("default { state_entry() { llSetVel(<1,0,0>); } }"), ScriptErrorKind::UnknownBuiltin);
}

TEST(Parse, SyntaxErrors) {
  SourceLoc loc;
  EXPECT_EQ(parse_error("default { state_entry() { integer x = ; } }", &loc), ScriptErrorKind::SyntaxError);
  EXPECT_EQ(loc.line, 1);
  EXPECT_EQ(parse_error("default { state_entry() { } "), ScriptErrorKind::SyntaxError);
  EXPECT_EQ(parse_error("default { state_entry() { llSetForce(<1, 2>); } }"), ScriptErrorKind::SyntaxError);
}

TEST(Parse, TypeErrors) {
  EXPECT_EQ(parse_error("default { state_entry() { integer x = <1,2,3>; } }"), ScriptErrorKind::TypeError);
  EXPECT_EQ(parse_error("default { state_entry() { llSetForce(1.0); } }"), ScriptErrorKind::TypeError);
  EXPECT_EQ(parse_error("default { state_entry() { float y = q; } }"), ScriptErrorKind::TypeError);
  EXPECT_EQ(parse_error("default { touch_start() { } }"), ScriptErrorKind::TypeError);
  EXPECT_EQ(parse_error("default { state_entry() { state nowhere; } }"), ScriptErrorKind::TypeError);
  EXPECT_EQ(parse_error("state other { state_entry() { } }"), ScriptErrorKind::TypeError);
  EXPECT_EQ(parse_error("default { state_entry() { } } default { timer() { } }"), ScriptErrorKind::TypeError);
}

TEST(Parse, IntegerPromotesToFloat) {
  EXPECT_NO_THROW(parse("float g = 2; default { state_entry() { g = 3; llSetBuoyancy(1); } }"));
}

TEST(RoundTrip, RandomWellTypedPrograms) {
  SourceGen gen(1234);
  for (int k = 0; k < 300; ++k) {
    const std::string source = gen.program();
    Script first;
    ASSERT_NO_THROW(first = parse(source)) << source;
    const std::string printed = print(first);
    Script second;
    ASSERT_NO_THROW(second = parse(printed)) << printed;
    ASSERT_TRUE(first == second) << source << "\n----\n" << printed;
    EXPECT_EQ(print(second), printed);
  }
}

TEST(RoundTrip, ExtremeLiterals) {
  Script s = parse("default { state_entry() { integer a = 1; float b = 0.1; } }");
  Block& body = s.states[0].handlers[0].body;
  std::get<VarDecl>(body.body[0].node).init->node = IntLiteral{INT_MIN};
  std::get<VarDecl>(body.body[1].node).init->node = FloatLiteral{4.9406564584124654e-324};
  const Script again = parse(print(s));
  EXPECT_TRUE(again == s) << print(s);
}

TEST(Interpreter, IntegerArithmeticWraps) {
  Rig rig;
  const ObjectId id = rig.world.create_object(ball(1.0), {}, {10.0, 10.0, 10.0}).id;
  const ScriptInstance& inst = rig.attach(id,
                                          "integer a; integer b; integer c; float d;\n"
                                          "default { state_entry() { a = 2147483647 + 1; b = 7 / -2; c = -7 % 3;"
                                          " d = (float)7 / 2; } }");
  EXPECT_EQ(global<std::int32_t>(inst, "a"), INT_MIN);
  EXPECT_EQ(global<std::int32_t>(inst, "b"), -3);
  EXPECT_EQ(global<std::int32_t>(inst, "c"), -1);
  EXPECT_EQ(global<double>(inst, "d"), 3.5);
  EXPECT_TRUE(rig.engine.faults().empty());
}

TEST(Interpreter, VectorAndRotationAlgebra) {
  Rig rig;
  const ObjectId id = rig.world.create_object(ball(1.0), {}, {10.0, 10.0, 10.0}).id;
  const ScriptInstance& inst = rig.attach(id,
                                          "float dp; vector cp; vector seq; vector both;\n"
                                          "default { state_entry() {\n"
                                          "  vector a = <1, 2, 3>; vector b = <4, 5, 6>;\n"
                                          "  dp = a * b; cp = a % b;\n"
                                          "  rotation qa = <0, 0, 0.70710678118654752, 0.70710678118654752>;\n"
                                          "  rotation qb = <0.70710678118654752, 0, 0, 0.70710678118654752>;\n"
                                          "  seq = (<1, 0, 0> * qa) * qb; both = <1, 0, 0> * (qa * qb);\n"
                                          "} }");
  EXPECT_EQ(global<double>(inst, "dp"), 32.0);
  EXPECT_EQ(global<Vec3>(inst, "cp"), (Vec3{-3.0, 6.0, -3.0}));
  const Vec3 seq = global<Vec3>(inst, "seq");
  const Vec3 both = global<Vec3>(inst, "both");
  // x axis turned about z gives y, then about x gives z.
  EXPECT_NEAR(seq.z, 1.0, 1e-12);
  EXPECT_LT(norm(seq - both), 1e-12);
}

TEST(Interpreter, DivisionByZeroFaults) {
  Rig rig;
  const ObjectId id = rig.world.create_object(ball(1.0), {}, {10.0, 10.0, 10.0}).id;
  rig.attach(id, "integer z; default { state_entry() { integer q = 5 / z; } }");
  ASSERT_EQ(rig.engine.faults().size(), 1u);
  EXPECT_EQ(rig.engine.faults()[0].kind, ScriptErrorKind::RuntimeFault);
}

TEST(Interpreter, RunawayLoopHitsBudget) {
  Rig rig;
  const ObjectId id = rig.world.create_object(ball(1.0), {}, {10.0, 10.0, 10.0}).id;
  const ScriptInstance& inst = rig.attach(id, "integer n; default { state_entry() { while (TRUE) { n += 1; } } }");
  ASSERT_EQ(rig.engine.faults().size(), 1u);
  EXPECT_EQ(rig.engine.faults()[0].kind, ScriptErrorKind::BudgetExceeded);
  EXPECT_GT(global<std::int32_t>(inst, "n"), 1000);
  EXPECT_GE(inst.ops_executed, 100000u);
  // The burnt operations load the next step.
  rig.engine.step(rig.world);
  EXPECT_GE(rig.world.script_ops_last_step(), 100000u);
}

TEST(Interpreter, StateChangeRunsNewEntry) {
  Rig rig;
  const ObjectId id = rig.world.create_object(ball(1.0), {}, {10.0, 10.0, 10.0}).id;
  const ScriptInstance& inst = rig.attach(id,
                                          "integer trace;\n"
                                          "default { state_entry() { trace = 1; state two; trace = 99; } }\n"
                                          "state two { state_entry() { trace = trace * 10 + 2; } }");
  EXPECT_EQ(global<std::int32_t>(inst, "trace"), 12);
  EXPECT_EQ(inst.script->states[inst.state].name, "two");
}

TEST(Interpreter, LogicalOperatorsEvaluateBothSides) {
  Rig rig;
  const ObjectId id = rig.world.create_object(ball(1.0), {}, {10.0, 10.0, 10.0}).id;
  rig.attach(id, "integer z; default { state_entry() { integer q = FALSE && (1 / z); } }");
  ASSERT_EQ(rig.engine.faults().size(), 1u);
}

TEST(Builtins, GatingSweep) {
  for (bool strict : {true, false}) {
    for (const BuiltinSpec& spec : builtin_table()) {
      for (bool physical : {false, true}) {
        ScriptConfig cfg;
        cfg.strict = strict;
        Rig rig(cfg);
        const ObjectId id = rig.world.create_object(ball(1.0), {}, {100.0, 100.0, 100.0}).id;
        rig.world.set_physical(id, physical);
        const ObjectDynamics before = rig.world.object(id).dynamics;
        const Vec3 visual_before = rig.world.object(id).visual_omega;
        std::string args;
        for (std::size_t k = 0; k < spec.params.size(); ++k) {
          args += (k ? ", " : "") + argument_for(spec.params[k]);
        }
        const std::string call = std::string(spec.name) + "(" + args + ")";
        const std::string source = spec.result == ValueType::Void
                                       ? "default { state_entry() { " + call + "; } }"
                                       : "default { state_entry() { " + std::string(to_string(spec.result)) +
                                             " out = " + call + "; } }";
        rig.attach(id, source);
        const ObjectDynamics& after = rig.world.object(id).dynamics;
        const bool violates = (spec.category == BuiltinCategory::Kinetic && !physical) ||
                              (spec.category == BuiltinCategory::Kinematic && physical);
        SCOPED_TRACE(std::string(spec.name) + (physical ? " physical" : " non-physical") +
                     (strict ? " strict" : " lenient"));
        if (violates) {
          if (strict) {
            ASSERT_EQ(rig.engine.faults().size(), 1u);
            EXPECT_EQ(rig.engine.faults()[0].kind, ScriptErrorKind::RuntimeFault);
            EXPECT_EQ(rig.engine.faults()[0].cause,
                      physical ? ErrorCode::KinematicOnPhysical : ErrorCode::KineticOnNonPhysical);
          } else {
            EXPECT_TRUE(rig.engine.faults().empty());
          }
        } else {
          EXPECT_TRUE(rig.engine.faults().empty()) << rig.engine.faults()[0].message;
        }
        if (spec.category == BuiltinCategory::Kinetic && !physical) {
          EXPECT_EQ(after.velocity, before.velocity);
          EXPECT_EQ(after.omega, before.omega);
          EXPECT_EQ(after.pending_force, before.pending_force);
          EXPECT_EQ(after.pending_torque, before.pending_torque);
          EXPECT_EQ(after.energy, before.energy);
        }
        if (spec.category == BuiltinCategory::Kinematic && physical) {
          EXPECT_EQ(after.position, before.position);
          EXPECT_EQ(after.rotation, before.rotation);
        }
        (void)visual_before;
      }
    }
  }
}

TEST(Builtins, SetPosOnPhysicalFaults) {
  Rig rig;
  const ObjectId id = add_physical(rig.world, ball(1.0), {100.0, 100.0, 100.0});
  rig.attach(id, "default { touch_start(integer n) { llSetPos(<1, 1, 1>); } }");
  rig.engine.dispatch(rig.world, id, "touch_start", std::vector<Value>{std::int32_t{1}});
  ASSERT_EQ(rig.engine.faults().size(), 1u);
  EXPECT_EQ(rig.engine.faults()[0].cause, ErrorCode::KinematicOnPhysical);
  EXPECT_EQ(rig.engine.faults()[0].event, "touch_start");
  EXPECT_EQ(rig.world.object(id).dynamics.position, (Vec3{100.0, 100.0, 100.0}));
}

TEST(Builtins, TargetOmegaVisualOnNonPhysical) {
  Rig rig;
  const ObjectId still = rig.world.create_object(ball(1.0), {}, {100.0, 100.0, 100.0}).id;
  const ObjectId moving = add_physical(rig.world, ball(1.0), {50.0, 50.0, 100.0});
  rig.attach(still, "default { state_entry() { llTargetOmega(<0, 0, 1>); } }");
  rig.attach(moving, "default { state_entry() { llTargetOmega(<0, 0, 1>, 1.0, 1.0); } }");
  EXPECT_EQ(rig.world.object(still).visual_omega, (Vec3{0.0, 0.0, 1.0}));
  EXPECT_EQ(rig.world.object(still).dynamics.omega, Vec3{});
  EXPECT_EQ(rig.world.object(moving).dynamics.omega, (Vec3{0.0, 0.0, 1.0}));
}

TEST(Builtins, QueriesReflectEngineState) {
  Rig rig;
  const ObjectId id = add_physical(rig.world, ball(1.0), {100.0, 100.0, 100.0});
  rig.world.object(id).dynamics.velocity = {1.0, -2.0, 0.5};
  const ScriptInstance& inst = rig.attach(id,
                                          "vector p; vector vel; float m; vector sun; float dil; vector w;\n"
                                          "default { state_entry() { p = llGetPos(); vel = llGetVel(); m = llGetMass();"
                                          " sun = llGetSunDirection(); dil = llGetRegionTimeDilation();"
                                          " w = llWind(ZERO_VECTOR); } }");
  EXPECT_EQ(global<Vec3>(inst, "p"), (Vec3{100.0, 100.0, 100.0}));
  EXPECT_EQ(global<Vec3>(inst, "vel"), (Vec3{1.0, -2.0, 0.5}));
  EXPECT_EQ(global<double>(inst, "m"), rig.world.mass(id));
  EXPECT_EQ(global<Vec3>(inst, "sun"), rig.world.sun_direction());
  EXPECT_EQ(global<double>(inst, "dil"), 1.0);
  EXPECT_EQ(global<Vec3>(inst, "w").z, 0.0);
}

TEST(Builtins, StatusBuoyancyAndRez) {
  Rig rig;
  const ObjectId id = rig.world.create_object(ball(1.0), {}, {100.0, 100.0, 100.0}).id;
  const ScriptInstance& inst = rig.attach(id,
                                          "integer child;\n"
                                          "default { state_entry() { llSetStatus(STATUS_PHYSICS, TRUE);"
                                          " llSetBuoyancy(0.5); child = llRezObject(\"box\", <20, 20, 20>,"
                                          " <5, 0, 0>, ZERO_ROTATION, 0); } }");
  EXPECT_TRUE(rig.world.object(id).physical);
  EXPECT_EQ(rig.world.object(id).buoyancy, 0.5);
  const ObjectId child{static_cast<std::uint32_t>(global<std::int32_t>(inst, "child"))};
  ASSERT_TRUE(rig.world.contains(child));
  EXPECT_EQ(rig.world.object(child).dynamics.position, (Vec3{20.0, 20.0, 20.0}));
  EXPECT_EQ(rig.world.object(child).dynamics.velocity, Vec3{});
  EXPECT_EQ(rig.world.object(child).shape.kind, ShapeKind::Box);
}

TEST(Builtins, KineticEnergyFromFundamentals) {
  Rig rig;
  const ObjectId id = add_physical(rig.world, ball(1.3), {100.0, 100.0, 200.0});
  rig.world.object(id).dynamics.velocity = {2.0, 1.0, 0.0};
  const ScriptInstance& inst = rig.attach(id,
                                          "float ke;\n"
                                          "default { state_entry() { llSetTimerEvent(0.01); }\n"
                                          "  timer() { vector v = llGetVel(); ke = 0.5 * llGetMass() * (v * v); } }");
  for (int k = 0; k < 200; ++k) {
    rig.engine.step(rig.world);
    const ObjectDynamics& d = rig.world.object(id).dynamics;
    const double oracle = 0.5 * rig.world.mass(id) * dot(d.velocity, d.velocity);
    ASSERT_NEAR(global<double>(inst, "ke"), oracle, 1e-9 * std::max(1.0, oracle));
  }
}

TEST(Builtins, FallingHeightStrictlyDecreases) {
  Rig rig;
  const ObjectId id = add_physical(rig.world, ball(1.0), {100.0, 100.0, 300.0});
  const ScriptInstance& inst = rig.attach(id,
                                          "float last = 100000.0; integer bad; integer samples;\n"
                                          "default { state_entry() { llSetTimerEvent(0.25); }\n"
                                          "  timer() { vector p = llGetPos(); if (p.z >= last) bad += 1;"
                                          " last = p.z; samples += 1; } }");
  for (int k = 0; k < 45 * 5; ++k) rig.engine.step(rig.world);
  EXPECT_EQ(global<std::int32_t>(inst, "bad"), 0);
  EXPECT_GE(global<std::int32_t>(inst, "samples"), 19);
}

TEST(Builtins, ImpulseFromScriptIsEnergyGated) {
  Rig rig;
  const ObjectId id = add_physical(rig.world, testing_support::unit_box(), {100.0, 100.0, 100.0});
  rig.world.object(id).buoyancy = 1.0;
  rig.attach(id, "default { state_entry() { llApplyImpulse(<10000, 0, 0>, FALSE); } }");
  EXPECT_NEAR(rig.world.object(id).dynamics.velocity.x, 500.0, 1e-9);
  EXPECT_EQ(rig.world.object(id).dynamics.energy, 0.0);
}

TEST(Schedule, TimersFireInIdOrder) {
  Rig rig;
  std::vector<ObjectId> ids;
  for (int k = 0; k < 7; ++k) ids.push_back(rig.world.create_object(ball(1.0), {}, {10.0 + k, 10.0, 10.0}).id);
  const ObjectId three = ids[2];
  const ObjectId seven = ids[6];
  ASSERT_EQ(three.value, 3u);
  ASSERT_EQ(seven.value, 7u);
  const std::string src = "default { state_entry() { llSetTimerEvent(0.5); } timer() { } }";
  rig.attach(seven, src);
  rig.attach(three, src);
  for (int k = 0; k < 23; ++k) rig.engine.step(rig.world);
  std::vector<std::string> timers;
  for (const std::string& line : rig.engine.event_log()) {
    if (line.ends_with("timer")) timers.push_back(line.substr(line.find(' ') + 1));
  }
  ASSERT_EQ(timers.size(), 2u);
  EXPECT_EQ(timers[0], "3 timer");
  EXPECT_EQ(timers[1], "7 timer");
}

TEST(Schedule, CancelledTimerNeverFires) {
  Rig rig;
  const ObjectId id = rig.world.create_object(ball(1.0), {}, {10.0, 10.0, 10.0}).id;
  const ScriptInstance& inst = rig.attach(
      id, "integer fired; default { state_entry() { llSetTimerEvent(0.1); llSetTimerEvent(0); } timer() { fired += 1; } }");
  for (int k = 0; k < 450; ++k) rig.engine.step(rig.world);
  EXPECT_EQ(global<std::int32_t>(inst, "fired"), 0);
}

TEST(Schedule, TimerStopsAfterSelfCancel) {
  Rig rig;
  const ObjectId id = rig.world.create_object(ball(1.0), {}, {10.0, 10.0, 10.0}).id;
  const ScriptInstance& inst = rig.attach(
      id, "integer fired; default { state_entry() { llSetTimerEvent(0.1); } timer() { fired += 1; llSetTimerEvent(0.0); } }");
  for (int k = 0; k < 450; ++k) rig.engine.step(rig.world);
  EXPECT_EQ(global<std::int32_t>(inst, "fired"), 1);
}

TEST(Schedule, CollisionReachesBothParties) {
  Rig rig;
  std::vector<ObjectId> ids;
  for (int k = 0; k < 5; ++k) ids.push_back(rig.world.create_object(ball(1.0), {}, {10.0 + 3.0 * k, 10.0, 10.0}).id);
  const ObjectId two = ids[1];
  const ObjectId five = ids[4];
  rig.world.object(two).dynamics.position = {100.0, 100.0, 100.0};
  rig.world.object(five).dynamics.position = {101.5, 100.0, 100.0};
  rig.world.set_physical(two, true);
  rig.world.set_physical(five, true);
  rig.world.object(two).buoyancy = 1.0;
  rig.world.object(five).buoyancy = 1.0;
  rig.world.object(two).dynamics.velocity = {3.0, 0.0, 0.0};
  rig.world.object(five).dynamics.velocity = {-3.0, 0.0, 0.0};
  const std::string src = "integer hits; integer arg; default { collision_start(integer n) { hits += 1; arg = n; } }";
  const ScriptInstance& a = rig.attach(five, src);
  const ScriptInstance& b = rig.attach(two, src);
  for (int k = 0; k < 20; ++k) rig.engine.step(rig.world);
  EXPECT_EQ(global<std::int32_t>(a, "hits"), 1);
  EXPECT_EQ(global<std::int32_t>(b, "hits"), 1);
  EXPECT_EQ(global<std::int32_t>(a, "arg"), 1);
  std::vector<std::string> order;
  for (const std::string& line : rig.engine.event_log()) {
    if (line.ends_with("collision_start")) order.push_back(line.substr(line.find(' ') + 1));
  }
  ASSERT_EQ(order.size(), 2u);
  EXPECT_EQ(order[0], "2 collision_start");
}

TEST(Schedule, TouchDeliveredAtInjectedTime) {
  Rig rig;
  const ObjectId id = rig.world.create_object(ball(1.0), {}, {10.0, 10.0, 10.0}).id;
  const ScriptInstance& inst = rig.attach(id, "float when; default { touch_start(integer n) { when = llGetRegionTimeDilation(); } }");
  rig.engine.inject_touch(1.0, id);
  int delivered_at = -1;
  for (int k = 1; k <= 90 && delivered_at < 0; ++k) {
    rig.engine.step(rig.world);
    if (!rig.engine.event_log().empty()) delivered_at = k;
  }
  EXPECT_EQ(delivered_at, 45);
  EXPECT_EQ(global<double>(inst, "when"), 1.0);
}

TEST(Determinism, IdenticalRunsMatchBitForBit) {
  auto run = [] {
    auto rig = std::make_unique<Rig>();
    std::vector<ObjectId> ids;
    Gen gen(3);
    for (int k = 0; k < 12; ++k) {
      const ObjectId id = add_physical(rig->world, ball(1.0), {gen.uniform(90.0, 110.0), gen.uniform(90.0, 110.0), 5.0});
      ids.push_back(id);
      rig->attach(id,
                  "default { state_entry() { llSetTimerEvent(0.3); }\n"
                  "  timer() { vector p = llGetPos(); llApplyImpulse(<100.0 - p.x, 100.0 - p.y, 5.0>, FALSE); }\n"
                  "  collision_start(integer n) { llSetTorque(<0, 0, n>, FALSE); } }");
    }
    for (int k = 0; k < 450; ++k) rig->engine.step(rig->world);
    std::vector<Vec3> out;
    for (ObjectId id : ids) out.push_back(rig->world.object(id).dynamics.position);
    return std::pair{out, rig->engine.event_log()};
  };
  const auto a = run();
  const auto b = run();
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second, b.second);
  EXPECT_GT(a.second.size(), 100u);
}

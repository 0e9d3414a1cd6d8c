#include <cmath>
#include <limits>

#include "hyperreal/script/builtins.hpp"
#include "hyperreal/script/engine.hpp"

namespace hyperreal::script {
namespace {

struct StateJump {
  std::string target;
};
struct ReturnSignal {};

std::int32_t wrap(std::int64_t v) { return static_cast<std::int32_t>(static_cast<std::uint32_t>(v)); }

double as_float(const Value& v) {
  if (const auto* i = std::get_if<std::int32_t>(&v)) return *i;
  return std::get<double>(v);
}

bool truthy(const Value& v) { return as_float(v) != 0.0; }

// LSL maps out-of-range and NaN float-to-integer casts to the minimum integer.
std::int32_t to_integer(double d) {
  const double t = std::trunc(d);
  if (!(t >= -2147483648.0 && t <= 2147483647.0)) return std::numeric_limits<std::int32_t>::min();
  return static_cast<std::int32_t>(t);
}

class Interpreter {
 public:
  Interpreter(World& world, ScriptInstance& instance, const ScriptConfig& config)
      : world_(world), instance_(instance), config_(config) {}

  void run_handler(const Handler& handler, std::span<const Value> args) {
    scopes_.emplace_back();
    for (std::size_t i = 0; i < handler.params.size(); ++i) {
      scopes_.back()[handler.params[i].name] =
          i < args.size() ? coerce(args[i], handler.params[i].type) : default_value(handler.params[i].type);
    }
    try {
      exec_block(handler.body);
    } catch (const ReturnSignal&) {
    }
  }

  std::uint64_t ops() const { return ops_; }

  void init_globals(const Script& script) {
    for (const Global& g : script.globals) {
      instance_.globals[g.name] = g.init ? coerce(eval(*g.init), g.type) : default_value(g.type);
    }
  }

 private:
  void tick(SourceLoc loc) {
    if (++ops_ > config_.instruction_budget) {
      throw ScriptError(ScriptErrorKind::BudgetExceeded, loc,
                        "event exceeded " + std::to_string(config_.instruction_budget) + " operations");
    }
  }

  [[noreturn]] static void fault(SourceLoc loc, const std::string& message,
                                 std::optional<ErrorCode> cause = std::nullopt) {
    throw ScriptError(ScriptErrorKind::RuntimeFault, loc, message, cause);
  }

  Value* lookup(const std::string& name) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      if (auto found = it->find(name); found != it->end()) return &found->second;
    }
    if (auto found = instance_.globals.find(name); found != instance_.globals.end()) return &found->second;
    return nullptr;
  }

  void exec_block(const Block& block) {
    scopes_.emplace_back();
    try {
      for (const Stmt& s : block.body) exec(s);
    } catch (...) {
      scopes_.pop_back();
      throw;
    }
    scopes_.pop_back();
  }

  void exec_scoped(const Stmt& stmt) {
    scopes_.emplace_back();
    try {
      exec(stmt);
    } catch (...) {
      scopes_.pop_back();
      throw;
    }
    scopes_.pop_back();
  }

  void exec(const Stmt& stmt) {
    tick(stmt.loc);
    std::visit(
        [&](const auto& node) {
          using N = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<N, Block>) {
            exec_block(node);
          } else if constexpr (std::is_same_v<N, VarDecl>) {
            scopes_.back()[node.name] = node.init ? coerce(eval(*node.init), node.type) : default_value(node.type);
          } else if constexpr (std::is_same_v<N, Assign>) {
            assign(node, stmt.loc);
          } else if constexpr (std::is_same_v<N, If>) {
            if (truthy(eval(node.condition))) {
              exec_scoped(*node.then_branch);
            } else if (node.else_branch) {
              exec_scoped(**node.else_branch);
            }
          } else if constexpr (std::is_same_v<N, While>) {
            while (truthy(eval(node.condition))) {
              exec_scoped(*node.body);
              tick(stmt.loc);
            }
          } else if constexpr (std::is_same_v<N, ExprStmt>) {
            eval(node.expr);
          } else if constexpr (std::is_same_v<N, Return>) {
            throw ReturnSignal{};
          } else {
            throw StateJump{node.target};
          }
        },
        stmt.node);
  }

  static double& component_ref(Value& target, char c) {
    if (auto* v = std::get_if<Vec3>(&target)) return c == 'x' ? v->x : c == 'y' ? v->y : v->z;
    Quat& q = std::get<Quat>(target);
    return c == 'x' ? q.x : c == 'y' ? q.y : c == 'z' ? q.z : q.s;
  }

  void assign(const Assign& a, SourceLoc loc) {
    Value rhs = eval(a.value);
    Value* slot = lookup(a.name);
    if (slot == nullptr) fault(loc, "undeclared variable '" + a.name + "'");
    Value current = a.component ? Value{component_ref(*slot, *a.component)} : *slot;
    Value result = rhs;
    if (a.op != AssignOp::Set) {
      const BinaryOp op = a.op == AssignOp::Add   ? BinaryOp::Add
                          : a.op == AssignOp::Sub ? BinaryOp::Sub
                          : a.op == AssignOp::Mul ? BinaryOp::Mul
                                                  : BinaryOp::Div;
      result = binary(op, current, rhs, loc);
    }
    result = coerce(result, type_of(current));
    if (a.component) {
      component_ref(*slot, *a.component) = std::get<double>(result);
    } else {
      *slot = std::move(result);
    }
  }

  Value eval(const Expr& expr) {
    tick(expr.loc);
    return std::visit([&](const auto& node) { return eval_node(node, expr.loc); }, expr.node);
  }

  Value eval_node(const IntLiteral& n, SourceLoc) { return n.value; }
  Value eval_node(const FloatLiteral& n, SourceLoc) { return n.value; }
  Value eval_node(const StringLiteral& n, SourceLoc) { return n.value; }

  Value eval_node(const VectorLiteral& n, SourceLoc) {
    double c[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < n.parts.size(); ++i) c[i] = as_float(eval(*n.parts[i]));
    if (n.parts.size() == 3) return Vec3{c[0], c[1], c[2]};
    return Quat{c[0], c[1], c[2], c[3]};
  }

  Value eval_node(const Identifier& n, SourceLoc loc) {
    if (const ConstantSpec* c = find_constant(n.name)) return c->value;
    if (Value* v = lookup(n.name)) return *v;
    fault(loc, "undeclared variable '" + n.name + "'");
  }

  Value eval_node(const Call& n, SourceLoc loc) {
    const BuiltinSpec* spec = find_builtin(n.name);
    if (spec == nullptr) throw ScriptError(ScriptErrorKind::UnknownBuiltin, loc, "unknown function '" + n.name + "'");
    std::vector<Value> args;
    args.reserve(n.args.size());
    for (std::size_t i = 0; i < n.args.size(); ++i) args.push_back(coerce(eval(*n.args[i]), spec->params[i]));

    const PrimObject& obj = world_.object(instance_.object);
    std::optional<ErrorCode> gate;
    if (spec->category == BuiltinCategory::Kinetic && !obj.physical) gate = ErrorCode::KineticOnNonPhysical;
    if (spec->category == BuiltinCategory::Kinematic && obj.physical) gate = ErrorCode::KinematicOnPhysical;
    if (gate) {
      if (!config_.strict) return default_value(spec->result);
      fault(loc, std::string(n.name) + " is " + std::string(to_string(spec->category)) + " and the object is " +
                     (obj.physical ? "physical" : "non-physical"),
            gate);
    }
    BuiltinContext ctx{world_, instance_.object, instance_};
    try {
      Value result = spec->fn(ctx, args);
      return spec->result == ValueType::Void ? Value{} : result;
    } catch (const Error& e) {
      const bool gating = e.code() == ErrorCode::KineticOnNonPhysical || e.code() == ErrorCode::KinematicOnPhysical;
      if (gating && !config_.strict) return default_value(spec->result);
      fault(loc, n.name + ": " + e.what(), e.code());
    }
  }

  Value eval_node(const Unary& n, SourceLoc) {
    const Value v = eval(*n.operand);
    if (n.op == UnaryOp::Not) return std::int32_t{std::get<std::int32_t>(v) == 0 ? 1 : 0};
    return std::visit(
        [](const auto& x) -> Value {
          using X = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<X, std::int32_t>) {
            return wrap(-static_cast<std::int64_t>(x));
          } else if constexpr (std::is_same_v<X, double> || std::is_same_v<X, Vec3>) {
            return -x;
          } else if constexpr (std::is_same_v<X, Quat>) {
            return Quat{-x.x, -x.y, -x.z, -x.s};
          } else {
            return x;
          }
        },
        v);
  }

  Value eval_node(const Binary& n, SourceLoc loc) {
    // Both operands are always evaluated; LSL has no short-circuiting.
    const Value l = eval(*n.lhs);
    const Value r = eval(*n.rhs);
    return binary(n.op, l, r, loc);
  }

  Value eval_node(const Member& n, SourceLoc) {
    Value v = eval(*n.object);
    return component_ref(v, n.component);
  }

  Value eval_node(const Cast& n, SourceLoc) {
    const Value v = eval(*n.operand);
    if (n.target == ValueType::Integer) {
      if (const auto* d = std::get_if<double>(&v)) return to_integer(*d);
      return v;
    }
    return coerce(v, n.target);
  }

  Value binary(BinaryOp op, const Value& l, const Value& r, SourceLoc loc) {
    const auto* li = std::get_if<std::int32_t>(&l);
    const auto* ri = std::get_if<std::int32_t>(&r);
    if (li && ri) return int_binary(op, *li, *ri, loc);

    const bool l_num = li || std::holds_alternative<double>(l);
    const bool r_num = ri || std::holds_alternative<double>(r);
    if (l_num && r_num) return float_binary(op, as_float(l), as_float(r), loc);

    switch (op) {
      case BinaryOp::Eq: return std::int32_t{l == r ? 1 : 0};
      case BinaryOp::Ne: return std::int32_t{l == r ? 0 : 1};
      default: break;
    }
    if (const auto* lv = std::get_if<Vec3>(&l)) {
      if (const auto* rv = std::get_if<Vec3>(&r)) {
        switch (op) {
          case BinaryOp::Add: return *lv + *rv;
          case BinaryOp::Sub: return *lv - *rv;
          case BinaryOp::Mul: return dot(*lv, *rv);
          case BinaryOp::Mod: return cross(*lv, *rv);
          default: break;
        }
      } else if (r_num) {
        const double s = as_float(r);
        if (op == BinaryOp::Mul) return *lv * s;
        if (op == BinaryOp::Div) {
          if (s == 0.0) fault(loc, "division by zero");
          return *lv / s;
        }
      } else if (const auto* rq = std::get_if<Quat>(&r)) {
        if (op == BinaryOp::Mul) return rotate(*lv, *rq);
      }
    }
    if (l_num && op == BinaryOp::Mul) return std::get<Vec3>(r) * as_float(l);
    if (const auto* lq = std::get_if<Quat>(&l)) {
      const Quat& rq = std::get<Quat>(r);
      switch (op) {
        case BinaryOp::Add: return Quat{lq->x + rq.x, lq->y + rq.y, lq->z + rq.z, lq->s + rq.s};
        case BinaryOp::Sub: return Quat{lq->x - rq.x, lq->y - rq.y, lq->z - rq.z, lq->s - rq.s};
        // a * b applies a first, then b.
        case BinaryOp::Mul: return rq * *lq;
        default: break;
      }
    }
    fault(loc, "operator " + std::string(to_string(op)) + " not defined for " + std::string(to_string(type_of(l))) +
                   " and " + std::string(to_string(type_of(r))));
  }

  static Value int_binary(BinaryOp op, std::int32_t a, std::int32_t b, SourceLoc loc) {
    const std::int64_t x = a;
    const std::int64_t y = b;
    switch (op) {
      case BinaryOp::Add: return wrap(x + y);
      case BinaryOp::Sub: return wrap(x - y);
      case BinaryOp::Mul: return wrap(x * y);
      case BinaryOp::Div:
        if (y == 0) fault(loc, "integer division by zero");
        return wrap(x / y);
      case BinaryOp::Mod:
        if (y == 0) fault(loc, "integer modulo by zero");
        return wrap(x % y);
      case BinaryOp::Eq: return std::int32_t{a == b};
      case BinaryOp::Ne: return std::int32_t{a != b};
      case BinaryOp::Lt: return std::int32_t{a < b};
      case BinaryOp::Le: return std::int32_t{a <= b};
      case BinaryOp::Gt: return std::int32_t{a > b};
      case BinaryOp::Ge: return std::int32_t{a >= b};
      case BinaryOp::And: return std::int32_t{a != 0 && b != 0};
      case BinaryOp::Or: return std::int32_t{a != 0 || b != 0};
    }
    return std::int32_t{0};
  }

  static Value float_binary(BinaryOp op, double a, double b, SourceLoc loc) {
    switch (op) {
      case BinaryOp::Add: return a + b;
      case BinaryOp::Sub: return a - b;
      case BinaryOp::Mul: return a * b;
      case BinaryOp::Div:
        if (b == 0.0) fault(loc, "division by zero");
        return a / b;
      case BinaryOp::Eq: return std::int32_t{a == b};
      case BinaryOp::Ne: return std::int32_t{a != b};
      case BinaryOp::Lt: return std::int32_t{a < b};
      case BinaryOp::Le: return std::int32_t{a <= b};
      case BinaryOp::Gt: return std::int32_t{a > b};
      case BinaryOp::Ge: return std::int32_t{a >= b};
      default: break;
    }
    fault(loc, "operator " + std::string(to_string(op)) + " not defined for floats");
  }

  World& world_;
  ScriptInstance& instance_;
  const ScriptConfig& config_;
  std::vector<std::map<std::string, Value, std::less<>>> scopes_;
  std::uint64_t ops_ = 0;
};

}  // namespace

std::uint64_t run_event(World& world, ScriptInstance& instance, std::string_view event, std::span<const Value> args,
                        const ScriptConfig& config) {
  std::uint64_t total = 0;
  std::string current(event);
  std::vector<Value> current_args(args.begin(), args.end());
  // A state change ends the handler and enters the new state.
  for (int hops = 0; hops < 64; ++hops) {
    const State& state = instance.script->states[instance.state];
    const Handler* handler = state.find(current);
    if (handler == nullptr) break;
    Interpreter interp(world, instance, config);
    std::optional<std::string> jump;
    try {
      interp.run_handler(*handler, current_args);
    } catch (const StateJump& j) {
      jump = j.target;
    } catch (...) {
      total += interp.ops();
      instance.ops_executed += total;
      throw;
    }
    total += interp.ops();
    if (!jump || *jump == state.name) break;
    instance.state = instance.script->state_index(*jump);
    current = "state_entry";
    current_args.clear();
  }
  instance.ops_executed += total;
  return total;
}

namespace detail {

void init_globals(World& world, ScriptInstance& instance, const ScriptConfig& config) {
  Interpreter interp(world, instance, config);
  interp.init_globals(*instance.script);
}

}  // namespace detail
}  // namespace hyperreal::script

#include "hyperreal/script/parser.hpp"

#include <cstdio>
#include <map>
#include <set>

#include "hyperreal/script/builtins.hpp"
#include "hyperreal/script/diagnostics.hpp"
#include "hyperreal/script/lexer.hpp"

namespace hyperreal::script {
namespace {

std::optional<ValueType> type_keyword(const Token& tok) {
  if (tok.kind != TokenKind::Keyword) return std::nullopt;
  if (tok.text == "integer") return ValueType::Integer;
  if (tok.text == "float") return ValueType::Float;
  if (tok.text == "vector") return ValueType::Vector;
  if (tok.text == "rotation") return ValueType::Rotation;
  if (tok.text == "string") return ValueType::String;
  return std::nullopt;
}

std::optional<AssignOp> assign_op(const Token& tok) {
  if (tok.kind != TokenKind::Punct) return std::nullopt;
  if (tok.text == "=") return AssignOp::Set;
  if (tok.text == "+=") return AssignOp::Add;
  if (tok.text == "-=") return AssignOp::Sub;
  if (tok.text == "*=") return AssignOp::Mul;
  if (tok.text == "/=") return AssignOp::Div;
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Script parse_script() {
    Script script;
    while (type_keyword(peek())) script.globals.push_back(parse_global());
    while (peek().kind != TokenKind::End) {
      if (type_keyword(peek())) fail(peek(), "global declarations must precede all states");
      script.states.push_back(parse_state());
    }
    return script;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& next() {
    const Token& tok = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return tok;
  }

  [[noreturn]] static void fail(const Token& at, const std::string& message) {
    throw ScriptError(ScriptErrorKind::SyntaxError, at.loc, message);
  }

  static std::string describe(const Token& tok) {
    switch (tok.kind) {
      case TokenKind::End: return "end of input";
      case TokenKind::String: return "string literal";
      default: return "'" + tok.text + "'";
    }
  }

  const Token& expect_punct(std::string_view p) {
    if (!peek().punct(p)) fail(peek(), "expected '" + std::string(p) + "' but found " + describe(peek()));
    return next();
  }

  std::string expect_identifier(const char* what) {
    if (peek().kind != TokenKind::Identifier) fail(peek(), std::string("expected ") + what + " but found " + describe(peek()));
    return next().text;
  }

  Global parse_global() {
    Global g;
    g.loc = peek().loc;
    g.type = *type_keyword(next());
    g.name = expect_identifier("variable name");
    if (peek().punct("=")) {
      next();
      g.init = parse_expr();
    }
    expect_punct(";");
    return g;
  }

  State parse_state() {
    State st;
    st.loc = peek().loc;
    if (peek().keyword("default")) {
      next();
      st.name = "default";
    } else if (peek().keyword("state")) {
      next();
      if (peek().keyword("default")) fail(peek(), "the default state is declared as 'default { ... }'");
      st.name = expect_identifier("state name");
    } else {
      fail(peek(), "expected a state block but found " + describe(peek()));
    }
    expect_punct("{");
    while (!peek().punct("}")) {
      if (peek().kind == TokenKind::End) fail(peek(), "unterminated state block");
      st.handlers.push_back(parse_handler());
    }
    next();
    return st;
  }

  Handler parse_handler() {
    Handler h;
    h.loc = peek().loc;
    h.event = expect_identifier("event name");
    expect_punct("(");
    if (!peek().punct(")")) {
      while (true) {
        const auto type = type_keyword(peek());
        if (!type) fail(peek(), "expected parameter type but found " + describe(peek()));
        next();
        h.params.push_back({*type, expect_identifier("parameter name")});
        if (!peek().punct(",")) break;
        next();
      }
    }
    expect_punct(")");
    h.body = parse_block();
    return h;
  }

  Block parse_block() {
    expect_punct("{");
    Block block;
    while (!peek().punct("}")) {
      if (peek().kind == TokenKind::End) fail(peek(), "unterminated block");
      block.body.push_back(parse_stmt());
    }
    next();
    return block;
  }

  Stmt parse_stmt() {
    const Token& tok = peek();
    const SourceLoc loc = tok.loc;
    if (tok.punct("{")) return {parse_block(), loc};
    if (tok.punct(";")) {
      next();
      return {Block{}, loc};
    }
    if (const auto type = type_keyword(tok)) {
      next();
      VarDecl decl{*type, expect_identifier("variable name"), std::nullopt};
      if (peek().punct("=")) {
        next();
        decl.init = parse_expr();
      }
      expect_punct(";");
      return {std::move(decl), loc};
    }
    if (tok.keyword("if")) {
      next();
      expect_punct("(");
      Expr cond = parse_expr();
      expect_punct(")");
      Stmt then_branch = parse_stmt();
      std::optional<Box<Stmt>> else_branch;
      if (peek().keyword("else")) {
        next();
        else_branch = Box<Stmt>(parse_stmt());
      }
      return {If{std::move(cond), Box<Stmt>(std::move(then_branch)), std::move(else_branch)}, loc};
    }
    if (tok.keyword("while")) {
      next();
      expect_punct("(");
      Expr cond = parse_expr();
      expect_punct(")");
      return {While{std::move(cond), Box<Stmt>(parse_stmt())}, loc};
    }
    if (tok.keyword("return")) {
      next();
      if (!peek().punct(";")) {
        throw ScriptError(ScriptErrorKind::TypeError, peek().loc, "event handlers cannot return a value");
      }
      next();
      return {Return{}, loc};
    }
    if (tok.keyword("state")) {
      next();
      std::string target;
      if (peek().keyword("default")) {
        next();
        target = "default";
      } else {
        target = expect_identifier("state name");
      }
      expect_punct(";");
      return {StateChange{std::move(target)}, loc};
    }
    if (tok.keyword("for")) fail(tok, "for loops are not supported; use while");
    if (tok.kind == TokenKind::Identifier) {
      if (auto op = assign_op(peek(1))) {
        std::string name = next().text;
        next();
        Expr value = parse_expr();
        expect_punct(";");
        return {Assign{std::move(name), std::nullopt, *op, std::move(value)}, loc};
      }
      if (peek(1).punct(".") && peek(2).kind == TokenKind::Identifier && assign_op(peek(3))) {
        std::string name = next().text;
        next();
        const Token& comp = next();
        const AssignOp op = *assign_op(next());
        Expr value = parse_expr();
        expect_punct(";");
        return {Assign{std::move(name), component(comp), op, std::move(value)}, loc};
      }
    }
    Expr expr = parse_expr();
    expect_punct(";");
    return {ExprStmt{std::move(expr)}, loc};
  }

  static char component(const Token& tok) {
    if (tok.text.size() != 1 || std::string_view("xyzs").find(tok.text[0]) == std::string_view::npos) {
      fail(tok, "unknown component '" + tok.text + "'");
    }
    return tok.text[0];
  }

  static Expr make(auto node, SourceLoc loc) { return Expr{std::move(node), loc, ValueType::Void}; }

  Expr parse_expr() { return parse_or(); }

  Expr parse_binary_level(Expr (Parser::*operand)(), std::initializer_list<std::pair<std::string_view, BinaryOp>> ops) {
    Expr lhs = (this->*operand)();
    while (true) {
      const Token& tok = peek();
      std::optional<BinaryOp> found;
      for (const auto& [text, op] : ops) {
        if (tok.punct(text)) found = op;
      }
      if (!found) return lhs;
      const SourceLoc loc = tok.loc;
      next();
      Expr rhs = (this->*operand)();
      lhs = make(Binary{*found, Box<Expr>(std::move(lhs)), Box<Expr>(std::move(rhs))}, loc);
    }
  }

  Expr parse_or() { return parse_binary_level(&Parser::parse_and, {{"||", BinaryOp::Or}}); }
  Expr parse_and() { return parse_binary_level(&Parser::parse_equality, {{"&&", BinaryOp::And}}); }
  Expr parse_equality() {
    return parse_binary_level(&Parser::parse_relational, {{"==", BinaryOp::Eq}, {"!=", BinaryOp::Ne}});
  }
  Expr parse_relational() {
    return parse_binary_level(&Parser::parse_additive, {{"<", BinaryOp::Lt},
                                                        {"<=", BinaryOp::Le},
                                                        {">", BinaryOp::Gt},
                                                        {">=", BinaryOp::Ge}});
  }
  Expr parse_additive() {
    return parse_binary_level(&Parser::parse_multiplicative, {{"+", BinaryOp::Add}, {"-", BinaryOp::Sub}});
  }
  Expr parse_multiplicative() {
    return parse_binary_level(&Parser::parse_unary, {{"*", BinaryOp::Mul}, {"/", BinaryOp::Div}, {"%", BinaryOp::Mod}});
  }

  Expr parse_unary() {
    const Token& tok = peek();
    const SourceLoc loc = tok.loc;
    if (tok.punct("-")) {
      next();
      return make(Unary{UnaryOp::Negate, Box<Expr>(parse_unary())}, loc);
    }
    if (tok.punct("!")) {
      next();
      return make(Unary{UnaryOp::Not, Box<Expr>(parse_unary())}, loc);
    }
    if (tok.punct("(") && type_keyword(peek(1)) && peek(2).punct(")")) {
      next();
      const ValueType target = *type_keyword(next());
      next();
      return make(Cast{target, Box<Expr>(parse_unary())}, loc);
    }
    return parse_postfix();
  }

  Expr parse_postfix() {
    Expr expr = parse_primary();
    while (peek().punct(".")) {
      const SourceLoc loc = peek().loc;
      next();
      if (peek().kind != TokenKind::Identifier) fail(peek(), "expected component name after '.'");
      const char c = component(next());
      expr = make(Member{Box<Expr>(std::move(expr)), c}, loc);
    }
    return expr;
  }

  Expr parse_primary() {
    const Token& tok = peek();
    const SourceLoc loc = tok.loc;
    switch (tok.kind) {
      case TokenKind::Integer: {
        const auto value = static_cast<std::int32_t>(next().int_value);
        return make(IntLiteral{value}, loc);
      }
      case TokenKind::Float: return make(FloatLiteral{next().float_value}, loc);
      case TokenKind::String: return make(StringLiteral{next().text}, loc);
      case TokenKind::Identifier: {
        std::string name = next().text;
        if (!peek().punct("(")) return make(Identifier{std::move(name)}, loc);
        next();
        Call call{std::move(name), {}};
        if (!peek().punct(")")) {
          while (true) {
            call.args.emplace_back(parse_expr());
            if (!peek().punct(",")) break;
            next();
          }
        }
        expect_punct(")");
        return make(std::move(call), loc);
      }
      case TokenKind::Punct:
        if (tok.punct("(")) {
          next();
          Expr inner = parse_expr();
          expect_punct(")");
          return inner;
        }
        if (tok.punct("<")) {
          next();
          // Components stop below the relational level so '>' closes the literal.
          VectorLiteral lit;
          lit.parts.emplace_back(parse_additive());
          while (peek().punct(",")) {
            next();
            lit.parts.emplace_back(parse_additive());
          }
          expect_punct(">");
          if (lit.parts.size() != 3 && lit.parts.size() != 4) {
            fail(tok, "vector literals take 3 components and rotations 4");
          }
          return make(std::move(lit), loc);
        }
        break;
      default: break;
    }
    fail(tok, "expected an expression but found " + describe(tok));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

struct EventSignature {
  std::string_view name;
  std::vector<ValueType> params;
};

const std::vector<EventSignature>& event_signatures() {
  static const std::vector<EventSignature> events{
      {"state_entry", {}},
      {"timer", {}},
      {"touch_start", {ValueType::Integer}},
      {"collision_start", {ValueType::Integer}},
  };
  return events;
}

bool numeric(ValueType t) { return t == ValueType::Integer || t == ValueType::Float; }

bool assignable(ValueType target, ValueType source) {
  return target == source || (target == ValueType::Float && source == ValueType::Integer);
}

std::optional<ValueType> binary_result(BinaryOp op, ValueType l, ValueType r) {
  using T = ValueType;
  const bool both_numeric = numeric(l) && numeric(r);
  const T arith = (l == T::Float || r == T::Float) ? T::Float : T::Integer;
  switch (op) {
    case BinaryOp::Add:
    case BinaryOp::Sub:
      if (both_numeric) return arith;
      if (l == T::Vector && r == T::Vector) return T::Vector;
      if (l == T::Rotation && r == T::Rotation) return T::Rotation;
      return std::nullopt;
    case BinaryOp::Mul:
      if (both_numeric) return arith;
      if (l == T::Vector && numeric(r)) return T::Vector;
      if (numeric(l) && r == T::Vector) return T::Vector;
      if (l == T::Vector && r == T::Vector) return T::Float;  // dot product
      if (l == T::Vector && r == T::Rotation) return T::Vector;
      if (l == T::Rotation && r == T::Rotation) return T::Rotation;
      return std::nullopt;
    case BinaryOp::Div:
      if (both_numeric) return arith;
      if (l == T::Vector && numeric(r)) return T::Vector;
      return std::nullopt;
    case BinaryOp::Mod:
      if (l == T::Integer && r == T::Integer) return T::Integer;
      if (l == T::Vector && r == T::Vector) return T::Vector;  // cross product
      return std::nullopt;
    case BinaryOp::Eq:
    case BinaryOp::Ne:
      if (both_numeric || l == r) return T::Integer;
      return std::nullopt;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
      if (both_numeric) return T::Integer;
      return std::nullopt;
    case BinaryOp::And:
    case BinaryOp::Or:
      if (l == T::Integer && r == T::Integer) return T::Integer;
      return std::nullopt;
  }
  return std::nullopt;
}

class Checker {
 public:
  explicit Checker(Script& script) : script_(script) {}

  void run() {
    int defaults = 0;
    std::set<std::string> state_names;
    for (const State& st : script_.states) {
      if (st.name == "default") ++defaults;
      if (!state_names.insert(st.name).second) type_error(st.loc, "duplicate state '" + st.name + "'");
    }
    if (defaults != 1) {
      const SourceLoc loc = script_.states.empty() ? SourceLoc{} : script_.states.front().loc;
      type_error(loc, defaults == 0 ? "script has no default state" : "script has more than one default state");
    }

    scopes_.emplace_back();
    for (Global& g : script_.globals) {
      if (g.init) {
        const ValueType t = check(*g.init);
        if (!assignable(g.type, t)) {
          type_error(g.init->loc, "cannot initialise " + std::string(to_string(g.type)) + " '" + g.name + "' with " +
                                      std::string(to_string(t)));
        }
      }
      declare(g.name, g.type, g.loc);
    }
    for (State& st : script_.states) {
      std::set<std::string> seen;
      for (Handler& h : st.handlers) {
        if (!seen.insert(h.event).second) type_error(h.loc, "duplicate handler '" + h.event + "'");
        check_signature(h);
        scopes_.emplace_back();
        for (const Param& p : h.params) declare(p.name, p.type, h.loc);
        check_block(h.body);
        scopes_.pop_back();
      }
    }
  }

 private:
  [[noreturn]] static void type_error(SourceLoc loc, const std::string& message) {
    throw ScriptError(ScriptErrorKind::TypeError, loc, message);
  }

  void check_signature(const Handler& h) {
    for (const EventSignature& sig : event_signatures()) {
      if (sig.name != h.event) continue;
      bool ok = sig.params.size() == h.params.size();
      for (std::size_t i = 0; ok && i < sig.params.size(); ++i) ok = sig.params[i] == h.params[i].type;
      if (!ok) type_error(h.loc, "wrong parameters for event '" + h.event + "'");
      return;
    }
    type_error(h.loc, "unknown event '" + h.event + "'");
  }

  void declare(const std::string& name, ValueType type, SourceLoc loc) {
    if (find_constant(name)) type_error(loc, "'" + name + "' is a constant");
    if (!scopes_.back().emplace(name, type).second) type_error(loc, "'" + name + "' is already declared");
  }

  std::optional<ValueType> lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      if (auto found = it->find(name); found != it->end()) return found->second;
    }
    return std::nullopt;
  }

  void check_block(Block& block) {
    scopes_.emplace_back();
    for (Stmt& s : block.body) check_stmt(s);
    scopes_.pop_back();
  }

  void check_condition(Expr& cond) {
    const ValueType t = check(cond);
    if (!numeric(t)) type_error(cond.loc, "condition must be integer or float, not " + std::string(to_string(t)));
  }

  void check_stmt(Stmt& stmt) {
    std::visit(
        [&](auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, Block>) {
            check_block(node);
          } else if constexpr (std::is_same_v<T, VarDecl>) {
            if (node.init) {
              const ValueType t = check(*node.init);
              if (!assignable(node.type, t)) {
                type_error(node.init->loc, "cannot initialise " + std::string(to_string(node.type)) + " '" +
                                               node.name + "' with " + std::string(to_string(t)));
              }
            }
            declare(node.name, node.type, stmt.loc);
          } else if constexpr (std::is_same_v<T, Assign>) {
            check_assign(node, stmt.loc);
          } else if constexpr (std::is_same_v<T, If>) {
            check_condition(node.condition);
            check_branch(*node.then_branch);
            if (node.else_branch) check_branch(**node.else_branch);
          } else if constexpr (std::is_same_v<T, While>) {
            check_condition(node.condition);
            check_branch(*node.body);
          } else if constexpr (std::is_same_v<T, ExprStmt>) {
            check(node.expr);
          } else if constexpr (std::is_same_v<T, StateChange>) {
            if (!script_.find_state(node.target)) type_error(stmt.loc, "unknown state '" + node.target + "'");
          }
        },
        stmt.node);
  }

  // A lone declaration as an if/while body gets its own scope.
  void check_branch(Stmt& stmt) {
    scopes_.emplace_back();
    check_stmt(stmt);
    scopes_.pop_back();
  }

  void check_assign(Assign& a, SourceLoc loc) {
    if (find_constant(a.name)) type_error(loc, "cannot assign to constant '" + a.name + "'");
    const auto var = lookup(a.name);
    if (!var) type_error(loc, "undeclared variable '" + a.name + "'");
    ValueType target = *var;
    if (a.component) {
      if (target != ValueType::Vector && target != ValueType::Rotation) {
        type_error(loc, "'" + a.name + "' has no components");
      }
      if (*a.component == 's' && target != ValueType::Rotation) type_error(loc, "vectors have no .s component");
      target = ValueType::Float;
    }
    const ValueType value = check(a.value);
    if (a.op == AssignOp::Set) {
      if (!assignable(target, value)) {
        type_error(a.value.loc, "cannot assign " + std::string(to_string(value)) + " to " +
                                    std::string(to_string(target)) + " '" + a.name + "'");
      }
      return;
    }
    const BinaryOp op = a.op == AssignOp::Add   ? BinaryOp::Add
                        : a.op == AssignOp::Sub ? BinaryOp::Sub
                        : a.op == AssignOp::Mul ? BinaryOp::Mul
                                                : BinaryOp::Div;
    const auto result = binary_result(op, target, value);
    if (!result || !assignable(target, *result)) {
      type_error(loc, "operator " + std::string(to_string(a.op)) + " not defined for " + std::string(to_string(target)) +
                          " and " + std::string(to_string(value)));
    }
  }

  ValueType check(Expr& expr) {
    expr.type = std::visit([&](auto& node) { return check_node(node, expr.loc); }, expr.node);
    return expr.type;
  }

  ValueType check_node(IntLiteral&, SourceLoc) { return ValueType::Integer; }
  ValueType check_node(FloatLiteral&, SourceLoc) { return ValueType::Float; }
  ValueType check_node(StringLiteral&, SourceLoc) { return ValueType::String; }

  ValueType check_node(VectorLiteral& lit, SourceLoc) {
    for (auto& part : lit.parts) {
      const ValueType t = check(*part);
      if (!numeric(t)) type_error(part->loc, "vector components must be numeric");
    }
    return lit.parts.size() == 3 ? ValueType::Vector : ValueType::Rotation;
  }

  ValueType check_node(Identifier& id, SourceLoc loc) {
    if (const ConstantSpec* c = find_constant(id.name)) return type_of(c->value);
    if (const auto t = lookup(id.name)) return *t;
    type_error(loc, "undeclared variable '" + id.name + "'");
  }

  ValueType check_node(Call& call, SourceLoc loc) {
    const BuiltinSpec* spec = find_builtin(call.name);
    if (!spec) throw ScriptError(ScriptErrorKind::UnknownBuiltin, loc, "unknown function '" + call.name + "'");
    if (call.args.size() < spec->min_args || call.args.size() > spec->params.size()) {
      type_error(loc, call.name + " takes " +
                          (spec->min_args == spec->params.size()
                               ? std::to_string(spec->min_args)
                               : std::to_string(spec->min_args) + " to " + std::to_string(spec->params.size())) +
                          " argument(s), got " + std::to_string(call.args.size()));
    }
    for (std::size_t i = 0; i < call.args.size(); ++i) {
      const ValueType t = check(*call.args[i]);
      if (!assignable(spec->params[i], t)) {
        type_error(call.args[i]->loc, "argument " + std::to_string(i + 1) + " of " + call.name + " must be " +
                                          std::string(to_string(spec->params[i])) + ", not " +
                                          std::string(to_string(t)));
      }
    }
    return spec->result;
  }

  ValueType check_node(Unary& u, SourceLoc loc) {
    const ValueType t = check(*u.operand);
    if (u.op == UnaryOp::Not) {
      if (t != ValueType::Integer) type_error(loc, "'!' needs an integer operand");
      return ValueType::Integer;
    }
    if (!numeric(t) && t != ValueType::Vector && t != ValueType::Rotation) {
      type_error(loc, "cannot negate " + std::string(to_string(t)));
    }
    return t;
  }

  ValueType check_node(Binary& b, SourceLoc loc) {
    const ValueType l = check(*b.lhs);
    const ValueType r = check(*b.rhs);
    const auto result = binary_result(b.op, l, r);
    if (!result) {
      type_error(loc, "operator " + std::string(to_string(b.op)) + " not defined for " + std::string(to_string(l)) +
                          " and " + std::string(to_string(r)));
    }
    return *result;
  }

  ValueType check_node(Member& m, SourceLoc loc) {
    const ValueType t = check(*m.object);
    if (t != ValueType::Vector && t != ValueType::Rotation) type_error(loc, "component access needs a vector or rotation");
    if (m.component == 's' && t != ValueType::Rotation) type_error(loc, "vectors have no .s component");
    return ValueType::Float;
  }

  ValueType check_node(Cast& c, SourceLoc loc) {
    const ValueType t = check(*c.operand);
    if (c.target == t) return t;
    if (numeric(c.target) && numeric(t)) return c.target;
    type_error(loc, "cannot cast " + std::string(to_string(t)) + " to " + std::string(to_string(c.target)));
  }

  Script& script_;
  std::vector<std::map<std::string, ValueType>> scopes_;
};

}  // namespace

void check(Script& script) { Checker(script).run(); }

Script parse(std::string_view source) {
  Script script = Parser(tokenize(source)).parse_script();
  check(script);
  return script;
}

}  // namespace hyperreal::script

namespace hyperreal::script {
namespace {

class Printer {
 public:
  std::string run(const Script& script) {
    for (const Global& g : script.globals) {
      out_ += std::string(to_string(g.type)) + " " + g.name;
      if (g.init) out_ += " = " + expr(*g.init);
      out_ += ";\n";
    }
    if (!script.globals.empty()) out_ += "\n";
    for (std::size_t i = 0; i < script.states.size(); ++i) {
      const State& st = script.states[i];
      if (i > 0) out_ += "\n";
      out_ += st.name == "default" ? "default {\n" : "state " + st.name + " {\n";
      for (const Handler& h : st.handlers) {
        out_ += "  " + h.event + "(";
        for (std::size_t p = 0; p < h.params.size(); ++p) {
          if (p > 0) out_ += ", ";
          out_ += std::string(to_string(h.params[p].type)) + " " + h.params[p].name;
        }
        out_ += ") ";
        block(h.body, 1);
        out_ += "\n";
      }
      out_ += "}\n";
    }
    return out_;
  }

 private:
  static std::string float_text(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s = buf;
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
  }

  static std::string quote(const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') {
        q += '\\';
        q += c;
      } else if (c == '\n') {
        q += "\\n";
      } else if (c == '\t') {
        q += "\\t";
      } else {
        q += c;
      }
    }
    return q + "\"";
  }

  static std::string expr(const Expr& e) {
    return std::visit(
        [](const auto& n) -> std::string {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, IntLiteral>) {
            if (n.value >= 0) return std::to_string(n.value);
            char buf[16];
            std::snprintf(buf, sizeof buf, "0x%08X", static_cast<unsigned>(static_cast<std::uint32_t>(n.value)));
            return buf;
          } else if constexpr (std::is_same_v<T, FloatLiteral>) {
            return float_text(n.value);
          } else if constexpr (std::is_same_v<T, StringLiteral>) {
            return quote(n.value);
          } else if constexpr (std::is_same_v<T, VectorLiteral>) {
            std::string s = "<";
            for (std::size_t i = 0; i < n.parts.size(); ++i) {
              if (i > 0) s += ", ";
              s += expr(*n.parts[i]);
            }
            return s + ">";
          } else if constexpr (std::is_same_v<T, Identifier>) {
            return n.name;
          } else if constexpr (std::is_same_v<T, Call>) {
            std::string s = n.name + "(";
            for (std::size_t i = 0; i < n.args.size(); ++i) {
              if (i > 0) s += ", ";
              s += expr(*n.args[i]);
            }
            return s + ")";
          } else if constexpr (std::is_same_v<T, Unary>) {
            return "(" + std::string(to_string(n.op)) + expr(*n.operand) + ")";
          } else if constexpr (std::is_same_v<T, Binary>) {
            return "(" + expr(*n.lhs) + " " + std::string(to_string(n.op)) + " " + expr(*n.rhs) + ")";
          } else if constexpr (std::is_same_v<T, Member>) {
            const bool bare = std::holds_alternative<Identifier>(n.object->node) ||
                              std::holds_alternative<Call>(n.object->node) ||
                              std::holds_alternative<Member>(n.object->node);
            const std::string obj = expr(*n.object);
            return (bare ? obj : "(" + obj + ")") + "." + n.component;
          } else {
            return "((" + std::string(to_string(n.target)) + ")" + expr(*n.operand) + ")";
          }
        },
        e.node);
  }

  void indent(int depth) { out_.append(static_cast<std::size_t>(depth) * 2, ' '); }

  void block(const Block& b, int depth) {
    out_ += "{\n";
    for (const Stmt& s : b.body) {
      indent(depth + 1);
      stmt(s, depth + 1);
      out_ += "\n";
    }
    indent(depth);
    out_ += "}";
  }

  void stmt(const Stmt& s, int depth) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Block>) {
            block(n, depth);
          } else if constexpr (std::is_same_v<T, VarDecl>) {
            out_ += std::string(to_string(n.type)) + " " + n.name;
            if (n.init) out_ += " = " + expr(*n.init);
            out_ += ";";
          } else if constexpr (std::is_same_v<T, Assign>) {
            out_ += n.name;
            if (n.component) out_ += std::string(".") + *n.component;
            out_ += " " + std::string(to_string(n.op)) + " " + expr(n.value) + ";";
          } else if constexpr (std::is_same_v<T, If>) {
            out_ += "if (" + expr(n.condition) + ") ";
            stmt(*n.then_branch, depth);
            if (n.else_branch) {
              out_ += " else ";
              stmt(**n.else_branch, depth);
            }
          } else if constexpr (std::is_same_v<T, While>) {
            out_ += "while (" + expr(n.condition) + ") ";
            stmt(*n.body, depth);
          } else if constexpr (std::is_same_v<T, ExprStmt>) {
            out_ += expr(n.expr) + ";";
          } else if constexpr (std::is_same_v<T, Return>) {
            out_ += "return;";
          } else {
            out_ += "state " + n.target + ";";
          }
        },
        s.node);
  }

  std::string out_;
};

}  // namespace

std::string print(const Script& script) { return Printer().run(script); }

}  // namespace hyperreal::script

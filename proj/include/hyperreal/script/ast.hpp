#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hyperreal::script {

/// Locations do not take part in AST equality, so a reprinted and reparsed
/// program compares equal to the original.
struct SourceLoc {
  int line = 1;
  int column = 1;

  friend bool operator==(const SourceLoc&, const SourceLoc&) { return true; }
};

enum class ValueType { Void, Integer, Float, Vector, Rotation, String };

std::string_view to_string(ValueType type);

/// Owning pointer with value semantics.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a.ptr_ == *b.ptr_; }

 private:
  std::unique_ptr<T> ptr_;
};

struct Expr;

enum class UnaryOp { Negate, Not };
enum class BinaryOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };
enum class AssignOp { Set, Add, Sub, Mul, Div };

std::string_view to_string(UnaryOp op);
std::string_view to_string(BinaryOp op);
std::string_view to_string(AssignOp op);

struct IntLiteral {
  std::int32_t value = 0;
  friend bool operator==(const IntLiteral&, const IntLiteral&) = default;
};
struct FloatLiteral {
  double value = 0.0;
  friend bool operator==(const FloatLiteral&, const FloatLiteral&) = default;
};
struct StringLiteral {
  std::string value;
  friend bool operator==(const StringLiteral&, const StringLiteral&) = default;
};
/// `<a, b, c>` is a vector, `<a, b, c, s>` a rotation.
struct VectorLiteral {
  std::vector<Box<Expr>> parts;
  friend bool operator==(const VectorLiteral&, const VectorLiteral&) = default;
};
struct Identifier {
  std::string name;
  friend bool operator==(const Identifier&, const Identifier&) = default;
};
struct Call {
  std::string name;
  std::vector<Box<Expr>> args;
  friend bool operator==(const Call&, const Call&) = default;
};
struct Unary {
  UnaryOp op;
  Box<Expr> operand;
  friend bool operator==(const Unary&, const Unary&) = default;
};
struct Binary {
  BinaryOp op;
  Box<Expr> lhs;
  Box<Expr> rhs;
  friend bool operator==(const Binary&, const Binary&) = default;
};
struct Member {
  Box<Expr> object;
  char component;  // x, y, z or s
  friend bool operator==(const Member&, const Member&) = default;
};
struct Cast {
  ValueType target;
  Box<Expr> operand;
  friend bool operator==(const Cast&, const Cast&) = default;
};

struct Expr {
  std::variant<IntLiteral, FloatLiteral, StringLiteral, VectorLiteral, Identifier, Call, Unary, Binary, Member, Cast>
      node;
  SourceLoc loc;
  ValueType type = ValueType::Void;  // filled in by the checker

  friend bool operator==(const Expr&, const Expr&) = default;
};

struct Stmt;

struct Block {
  std::vector<Stmt> body;
  friend bool operator==(const Block&, const Block&) = default;
};
struct VarDecl {
  ValueType type;
  std::string name;
  std::optional<Expr> init;
  friend bool operator==(const VarDecl&, const VarDecl&) = default;
};
struct Assign {
  std::string name;
  std::optional<char> component;
  AssignOp op = AssignOp::Set;
  Expr value;
  friend bool operator==(const Assign&, const Assign&) = default;
};
struct If {
  Expr condition;
  Box<Stmt> then_branch;
  std::optional<Box<Stmt>> else_branch;
  friend bool operator==(const If&, const If&) = default;
};
struct While {
  Expr condition;
  Box<Stmt> body;
  friend bool operator==(const While&, const While&) = default;
};
struct ExprStmt {
  Expr expr;
  friend bool operator==(const ExprStmt&, const ExprStmt&) = default;
};
struct Return {
  friend bool operator==(const Return&, const Return&) = default;
};
struct StateChange {
  std::string target;
  friend bool operator==(const StateChange&, const StateChange&) = default;
};

struct Stmt {
  std::variant<Block, VarDecl, Assign, If, While, ExprStmt, Return, StateChange> node;
  SourceLoc loc;

  friend bool operator==(const Stmt&, const Stmt&) = default;
};

struct Param {
  ValueType type;
  std::string name;
  friend bool operator==(const Param&, const Param&) = default;
};

struct Handler {
  std::string event;
  std::vector<Param> params;
  Block body;
  SourceLoc loc;
  friend bool operator==(const Handler&, const Handler&) = default;
};

struct State {
  std::string name;  // "default" for the default state
  std::vector<Handler> handlers;
  SourceLoc loc;

  const Handler* find(std::string_view event) const;
  friend bool operator==(const State&, const State&) = default;
};

struct Global {
  ValueType type;
  std::string name;
  std::optional<Expr> init;
  SourceLoc loc;
  friend bool operator==(const Global&, const Global&) = default;
};

struct Script {
  std::vector<Global> globals;
  std::vector<State> states;

  const State* find_state(std::string_view name) const;
  std::size_t state_index(std::string_view name) const;
  friend bool operator==(const Script&, const Script&) = default;
};

}  // namespace hyperreal::script

#pragma once

#include <string>
#include <string_view>

#include "hyperreal/script/ast.hpp"

namespace hyperreal::script {

/// Parses and type-checks a script.
///
/// Grammar (C-like): global declarations, then state blocks, exactly one of
/// them `default`. Handlers: state_entry(), timer(), touch_start(integer),
/// collision_start(integer). Statements: declarations, assignments
/// (=, +=, -=, *=, /=, and to .x/.y/.z/.s), if/else, while, return,
/// `state name;`, calls. `<a,b,c>` is a vector literal, `<a,b,c,s>` a rotation.
///
/// Throws ScriptError with SyntaxError, UnknownBuiltin or TypeError.
Script parse(std::string_view source);

/// Annotates expression types in place; same errors as parse().
void check(Script& script);

/// Canonical source text. Binary expressions are fully parenthesised so the
/// output reparses to an equal AST.
std::string print(const Script& script);

}  // namespace hyperreal::script

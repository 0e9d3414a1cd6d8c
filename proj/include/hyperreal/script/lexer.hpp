#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hyperreal/script/ast.hpp"

namespace hyperreal::script {

enum class TokenKind { Identifier, Keyword, Integer, Float, String, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;  // identifier/keyword/punctuation spelling, or the decoded string literal
  std::int64_t int_value = 0;
  double float_value = 0.0;
  SourceLoc loc;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool punct(std::string_view t) const { return is(TokenKind::Punct, t); }
  bool keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
};

/// Splits source into tokens; `//` and `/* */` comments are skipped.
/// Throws ScriptError(SyntaxError) on malformed input.
std::vector<Token> tokenize(std::string_view source);

}  // namespace hyperreal::script

#include "hyperreal/script/lexer.hpp"

#include <array>
#include <cctype>
#include <cstdlib>

#include "hyperreal/script/diagnostics.hpp"

namespace hyperreal::script {
namespace {

constexpr std::array<std::string_view, 12> kKeywords{"default", "state",  "if",     "else",   "while",    "return",
                                                     "integer", "float",  "vector", "string", "rotation", "for"};

// Longest first so that "<=" wins over "<".
constexpr std::array<std::string_view, 25> kPunct{"&&", "||", "==", "!=", "<=", ">=", "+=", "-=", "*=",
                                                  "/=", "{",  "}",  "(",  ")",  "<",  ">",  ",",  ";",
                                                  ".",  "=",  "+",  "-",  "*",  "/",  "!"};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_space_and_comments();
      Token tok;
      tok.loc = loc_;
      if (pos_ >= src_.size()) {
        tok.kind = TokenKind::End;
        tokens.push_back(tok);
        return tokens;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        lex_word(tok);
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        lex_number(tok);
      } else if (c == '"') {
        lex_string(tok);
      } else if (c == '%') {
        tok.kind = TokenKind::Punct;
        tok.text = "%";
        advance(1);
      } else {
        lex_punct(tok);
      }
      tokens.push_back(std::move(tok));
    }
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ScriptError(ScriptErrorKind::SyntaxError, loc_, message);
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++loc_.line;
        loc_.column = 1;
      } else {
        ++loc_.column;
      }
      ++pos_;
    }
  }

  bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        advance(1);
      } else if (starts_with("//")) {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
      } else if (starts_with("/*")) {
        const SourceLoc open = loc_;
        advance(2);
        while (pos_ < src_.size() && !starts_with("*/")) advance(1);
        if (pos_ >= src_.size()) throw ScriptError(ScriptErrorKind::SyntaxError, open, "unterminated comment");
        advance(2);
      } else {
        return;
      }
    }
  }

  void lex_word(Token& tok) {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      advance(1);
    }
    tok.text = std::string(src_.substr(start, pos_ - start));
    tok.kind = TokenKind::Identifier;
    for (auto kw : kKeywords) {
      if (kw == tok.text) tok.kind = TokenKind::Keyword;
    }
  }

  void lex_number(Token& tok) {
    const std::size_t start = pos_;
    if (starts_with("0x") || starts_with("0X")) {
      advance(2);
      while (pos_ < src_.size() && std::isxdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
      const std::string digits(src_.substr(start + 2, pos_ - start - 2));
      if (digits.empty()) fail("malformed hexadecimal literal");
      tok.kind = TokenKind::Integer;
      tok.int_value = static_cast<std::int64_t>(std::strtoull(digits.c_str(), nullptr, 16));
      tok.text = std::string(src_.substr(start, pos_ - start));
      if (tok.int_value > 0xFFFFFFFFll) fail("integer literal out of range");
      // Hex literals denote the 32-bit pattern.
      tok.int_value = static_cast<std::int32_t>(static_cast<std::uint32_t>(tok.int_value));
      return;
    }
    bool is_float = false;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      is_float = true;
      advance(1);
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        is_float = true;
        advance(look - pos_);
        digits();
      }
    }
    tok.text = std::string(src_.substr(start, pos_ - start));
    if (is_float) {
      tok.kind = TokenKind::Float;
      tok.float_value = std::strtod(tok.text.c_str(), nullptr);
    } else {
      tok.kind = TokenKind::Integer;
      if (tok.text.size() > 10) fail("integer literal out of range");
      tok.int_value = std::strtoll(tok.text.c_str(), nullptr, 10);
      if (tok.int_value > 2147483647ll) fail("integer literal out of range");
    }
  }

  void lex_string(Token& tok) {
    advance(1);
    std::string value;
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        throw ScriptError(ScriptErrorKind::SyntaxError, tok.loc, "unterminated string literal");
      }
      const char c = src_[pos_];
      if (c == '"') break;
      if (c == '\\' && pos_ + 1 < src_.size()) {
        const char e = src_[pos_ + 1];
        value += e == 'n' ? '\n' : (e == 't' ? '\t' : e);
        advance(2);
        continue;
      }
      value += c;
      advance(1);
    }
    advance(1);
    tok.kind = TokenKind::String;
    tok.text = std::move(value);
  }

  void lex_punct(Token& tok) {
    for (auto p : kPunct) {
      if (starts_with(p)) {
        tok.kind = TokenKind::Punct;
        tok.text = std::string(p);
        advance(p.size());
        return;
      }
    }
    fail(std::string("unexpected character '") + src_[pos_] + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  SourceLoc loc_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace hyperreal::script

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace unfold::dsl {

/// 1-based; line 0 means the position is unknown.
struct Location {
  std::size_t line = 1;
  std::size_t column = 1;
};

inline constexpr Location kNoLocation{0, 0};

/// Base for every error the front end reports; carries a source position.
class DslError : public std::runtime_error {
 public:
  DslError(const std::string& what, Location at)
      : std::runtime_error(format(what, at)), at_(at), message_(what) {}

  Location where() const { return at_; }
  const std::string& message() const { return message_; }

 private:
  static std::string format(const std::string& what, Location at) {
    if (at.line == 0) return what;
    return std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + what;
  }
  Location at_;
  std::string message_;
};

class ParseError : public DslError {
 public:
  using DslError::DslError;
};

class SemanticError : public DslError {
 public:
  using DslError::DslError;
};

enum class Tok {
  Ident,
  TypeVar,   // 'a
  Int,
  Clause,    // ~name:  (text holds the name)
  SpecOpen,  // (*@
  SpecClose, // *)
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Comma,
  Semi,
  Colon,
  Dot,
  DotDot,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Plus,
  Minus,
  Star,
  Arrow,
  And,   // /\ .
  Or,    // \/ .
  Bang,
  End,
};

std::string_view token_name(Tok t);

struct Token {
  Tok kind;
  std::string text;
  Location at;
  bool spaced = false;  // whitespace or a comment precedes it
};

/// Splits source text into tokens. `(* ... *)` comments (nestable) are
/// skipped; `(*@` opens a specification block closed by `*)`.
std::vector<Token> tokenize(std::string_view source);

}  // namespace unfold::dsl

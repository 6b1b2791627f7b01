#include "unfold/dsl/lexer.hpp"

#include <cctype>

namespace unfold::dsl {

std::string_view token_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::TypeVar: return "type variable";
    case Tok::Int: return "integer";
    case Tok::Clause: return "clause key";
    case Tok::SpecOpen: return "'(*@'";
    case Tok::SpecClose: return "'*)'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::DotDot: return "'..'";
    case Tok::Eq: return "'='";
    case Tok::Ne: return "'<>'";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Arrow: return "'->'";
    case Tok::And: return "'/\\'";
    case Tok::Or: return "'\\/'";
    case Tok::Bang: return "'!'";
    case Tok::End: return "end of input";
  }
  return "?";
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      const std::size_t before = pos_;
      skip_space_and_comments();
      const bool spaced = pos_ != before || pos_ == 0;
      const Location at = here();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", at, spaced});
        return out;
      }
      Token t = scan(at);
      t.spaced = spaced;
      out.push_back(std::move(t));
    }
  }

 private:
  char peek(std::size_t k = 0) const {
    return pos_ + k < src_.size() ? src_[pos_ + k] : '\0';
  }

  void advance(std::size_t n = 1) {
    for (; n > 0 && pos_ < src_.size(); --n) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  Location here() const { return {line_, col_}; }

  void skip_space_and_comments() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(peek())))
        advance();
      if (peek() == '#') {
        while (pos_ < src_.size() && peek() != '\n') advance();
        continue;
      }
      if (peek() == '(' && peek(1) == '*' && peek(2) != '@') {
        skip_comment();
        continue;
      }
      return;
    }
  }

  void skip_comment() {
    const Location start = here();
    advance(2);
    int depth = 1;
    while (depth > 0) {
      if (pos_ >= src_.size()) throw ParseError("unterminated comment", start);
      if (peek() == '(' && peek(1) == '*') {
        advance(2);
        ++depth;
      } else if (peek() == '*' && peek(1) == ')') {
        advance(2);
        --depth;
      } else {
        advance();
      }
    }
  }

  Token scan(Location at) {
    const char c = peek();
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (ident_char(peek())) advance();
      return {Tok::Ident, std::string(src_.substr(start, pos_ - start)), at};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      return {Tok::Int, std::string(src_.substr(start, pos_ - start)), at};
    }
    if (c == '\'' && ident_start(peek(1))) {
      std::size_t start = pos_;
      advance();
      while (ident_char(peek())) advance();
      return {Tok::TypeVar, std::string(src_.substr(start, pos_ - start)), at};
    }
    if (c == '~') {
      advance();
      std::size_t start = pos_;
      while (ident_char(peek())) advance();
      std::string key(src_.substr(start, pos_ - start));
      if (key.empty() || peek() != ':')
        throw ParseError("expected '~key:' clause", at);
      advance();
      return {Tok::Clause, key, at};
    }
    auto two = [&](Tok t, std::string text) {
      advance(2);
      return Token{t, std::move(text), at};
    };
    auto one = [&](Tok t) {
      advance();
      return Token{t, std::string(1, c), at};
    };
    const char d = peek(1);
    if (c == '(' && d == '*' && peek(2) == '@') {
      advance(3);
      return {Tok::SpecOpen, "(*@", at};
    }
    if (c == '*' && d == ')') return two(Tok::SpecClose, "*)");
    if (c == '-' && d == '>') return two(Tok::Arrow, "->");
    if (c == '/' && d == '\\') return two(Tok::And, "/\\");
    if (c == '\\' && d == '/') return two(Tok::Or, "\\/");
    if (c == '<' && d == '>') return two(Tok::Ne, "<>");
    if (c == '<' && d == '=') return two(Tok::Le, "<=");
    if (c == '>' && d == '=') return two(Tok::Ge, ">=");
    if (c == '=' && d == '=') return two(Tok::Eq, "==");
    if (c == '.' && d == '.') return two(Tok::DotDot, "..");
    switch (c) {
      case '(': return one(Tok::LParen);
      case ')': return one(Tok::RParen);
      case '[': return one(Tok::LBracket);
      case ']': return one(Tok::RBracket);
      case '{': return one(Tok::LBrace);
      case '}': return one(Tok::RBrace);
      case ',': return one(Tok::Comma);
      case ';': return one(Tok::Semi);
      case ':': return one(Tok::Colon);
      case '.': return one(Tok::Dot);
      case '=': return one(Tok::Eq);
      case '<': return one(Tok::Lt);
      case '>': return one(Tok::Gt);
      case '+': return one(Tok::Plus);
      case '-': return one(Tok::Minus);
      case '*': return one(Tok::Star);
      case '!': return one(Tok::Bang);
      default: break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace unfold::dsl

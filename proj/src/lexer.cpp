#include <array>
#include <charconv>
#include <optional>

#include "aiql/token.hpp"

namespace aiql {

namespace {

constexpr std::array<std::string_view, kKeywordCount> kKeywords = {
    "MODEL", "VERSION", "FIRST", "LAST",   "LIST",     "RESTRICTIONS",
    "NOT",   "OR",      "EXISTS", "FOR_ALL", "COUNT",  "RANGE",
    "OUTPUT", "ORDER_BY", "ATTRIBUTE", "ASC", "DESC"};

std::optional<Kw> lookup_keyword(std::string_view word) {
  for (std::size_t i = 0; i < kKeywords.size(); ++i) {
    if (kKeywords[i] == word) return static_cast<Kw>(i);
  }
  return std::nullopt;
}

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  Lexer(std::string_view text, std::string_view source)
      : text_(text), source_(source) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (at_end()) break;
      out.push_back(next_token());
    }
    Token end;
    end.kind = Tok::End;
    end.pos = position();
    out.push_back(end);
    return out;
  }

 private:
  bool at_end() const { return index_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return index_ + ahead < text_.size() ? text_[index_ + ahead] : '\0';
  }

  Position position() const { return Position{line_, column_, index_}; }

  void advance() {
    if (text_[index_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++index_;
  }

  void skip_trivia() {
    for (;;) {
      if (at_end()) return;
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  [[noreturn]] void fail(const Position& pos, std::string message) {
    throw SyntaxError(
        make_error("lex", std::move(message), pos, std::string(source_)));
  }

  Token base_token(Tok kind, const Position& pos) const {
    Token t;
    t.kind = kind;
    t.pos = pos;
    return t;
  }

  Token next_token() {
    const Position pos = position();
    const char c = peek();

    if (c == '^') {
      if (!is_ident_start(peek(1))) {
        fail(pos, "'^' must be immediately followed by an identifier");
      }
      advance();
      Token t = lex_word(pos);
      t.escaped = true;
      t.kind = Tok::Ident;  // escape suppresses keyword/bool recognition
      t.text = "^" + t.value;
      return t;
    }
    if (is_ident_start(c)) return lex_word(pos);
    if (is_digit(c)) return lex_number(pos);
    if (c == '\'' || c == '"') return lex_string(pos);

    switch (c) {
      case '<': {
        advance();
        Token t = base_token(Tok::Compare, pos);
        if (peek() == '=') {
          advance();
          t.op = CompareOp::Le;
          t.text = "<=";
        } else {
          t.op = CompareOp::Lt;
          t.text = "<";
        }
        return t;
      }
      case '>': {
        advance();
        Token t = base_token(Tok::Compare, pos);
        if (peek() == '=') {
          advance();
          t.op = CompareOp::Ge;
          t.text = ">=";
        } else {
          t.op = CompareOp::Gt;
          t.text = ">";
        }
        return t;
      }
      case '=': {
        advance();
        Token t = base_token(Tok::Compare, pos);
        t.op = CompareOp::Eq;
        t.text = "=";
        return t;
      }
      case '+': return punct(Tok::Plus, pos, "+");
      case '-': return punct(Tok::Minus, pos, "-");
      case '*': return punct(Tok::Star, pos, "*");
      case '/': return punct(Tok::Slash, pos, "/");
      case ';': return punct(Tok::Semi, pos, ";");
      case ':': return punct(Tok::Colon, pos, ":");
      case ',': return punct(Tok::Comma, pos, ",");
      case '(': return punct(Tok::LParen, pos, "(");
      case ')': return punct(Tok::RParen, pos, ")");
      default:
        fail(pos, "illegal character '" + std::string(1, c) + "'");
    }
  }

  Token punct(Tok kind, const Position& pos, std::string_view text) {
    advance();
    Token t = base_token(kind, pos);
    t.text = text;
    return t;
  }

  Token lex_word(const Position& pos) {
    const std::size_t start = index_;
    while (!at_end() && is_ident_char(peek())) advance();
    const std::string_view word = text_.substr(start, index_ - start);

    Token t = base_token(Tok::Ident, pos);
    t.text = std::string(word);
    t.value = std::string(word);
    if (word == "true" || word == "false") {
      t.kind = Tok::Bool;
      t.bool_value = word == "true";
      return t;
    }
    if (auto kw = lookup_keyword(word)) {
      t.kind = Tok::Keyword;
      t.kw = *kw;
    }
    return t;
  }

  // Date literals share a digit prefix with numbers: 2021-04-26T10:00:00.
  bool looks_like_date() const {
    static constexpr std::string_view kShape = "dddd-dd-ddTdd:dd:dd";
    if (index_ + kShape.size() > text_.size()) return false;
    for (std::size_t i = 0; i < kShape.size(); ++i) {
      const char want = kShape[i];
      const char got = text_[index_ + i];
      if (want == 'd' ? !is_digit(got) : got != want) return false;
    }
    return true;
  }

  Token lex_number(const Position& pos) {
    if (looks_like_date()) {
      const std::size_t start = index_;
      for (int i = 0; i < 19; ++i) advance();
      const std::string_view lexeme = text_.substr(start, 19);
      Token t = base_token(Tok::Date, pos);
      t.text = std::string(lexeme);
      t.value = std::string(lexeme);
      DateTime dt;
      if (!DateTime::parse(lexeme, dt)) {
        fail(pos, "invalid date literal '" + std::string(lexeme) + "'");
      }
      t.int_value = dt.seconds;
      return t;
    }

    const std::size_t start = index_;
    while (!at_end() && is_digit(peek())) advance();
    bool is_float = false;
    if (peek() == '.' && is_digit(peek(1))) {
      is_float = true;
      advance();
      while (!at_end() && is_digit(peek())) advance();
    }
    const std::string_view lexeme = text_.substr(start, index_ - start);

    Token t = base_token(is_float ? Tok::Float : Tok::Int, pos);
    t.text = std::string(lexeme);
    if (is_float) {
      t.float_value = std::strtod(t.text.c_str(), nullptr);
    } else {
      auto res = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(),
                                 t.int_value);
      if (res.ec != std::errc()) {
        fail(pos, "integer literal out of range");
      }
    }
    return t;
  }

  Token lex_string(const Position& pos) {
    const char quote = peek();
    advance();
    const std::size_t start = index_;
    while (!at_end() && peek() != quote && peek() != '\n') advance();
    if (at_end() || peek() == '\n') {
      fail(pos, "unterminated string");
    }
    const std::string_view content = text_.substr(start, index_ - start);
    advance();  // closing quote

    Token t = base_token(Tok::String, pos);
    t.quote = quote;
    t.value = std::string(content);
    t.text = quote + t.value + quote;
    return t;
  }

  std::string_view text_;
  std::string_view source_;
  std::size_t index_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

std::string_view kw_text(Kw kw) {
  return kKeywords[static_cast<std::size_t>(kw)];
}

bool is_reserved_word(std::string_view word) {
  return word == "true" || word == "false" || lookup_keyword(word).has_value();
}

std::vector<Token> tokenize(std::string_view text, std::string_view source_name) {
  return Lexer(text, source_name).run();
}

}  // namespace aiql

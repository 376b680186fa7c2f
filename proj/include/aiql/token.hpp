#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "aiql/diag.hpp"
#include "aiql/expr.hpp"

namespace aiql {

enum class Kw {
  Model,
  Version,
  First,
  Last,
  List,
  Restrictions,
  Not,
  Or,
  Exists,
  ForAll,
  Count,
  Range,
  Output,
  OrderBy,
  Attribute,
  Asc,
  Desc,
};

std::string_view kw_text(Kw kw);
constexpr int kKeywordCount = 17;

/// True for grammar keywords and the boolean literals, i.e. words that must
/// be ^-escaped to serve as identifiers.
bool is_reserved_word(std::string_view word);

enum class Tok {
  Keyword,
  Ident,     // value = unescaped name, escaped flag set for ^name
  String,    // value = content, quote = ' or "
  Int,
  Float,
  Date,
  Bool,      // true / false
  Compare,   // <= < = > >=
  Plus,
  Minus,
  Star,
  Slash,
  Semi,
  Colon,
  Comma,
  LParen,
  RParen,
  End,
};

struct Token {
  Tok kind = Tok::End;
  Kw kw = Kw::Model;
  std::string text;   // raw lexeme as it appeared in the source
  std::string value;  // ident name / string content / date text
  bool escaped = false;
  bool bool_value = false;
  char quote = '\'';
  std::int64_t int_value = 0;
  double float_value = 0.0;
  CompareOp op = CompareOp::Eq;
  Position pos;

  bool is_kw(Kw k) const { return kind == Tok::Keyword && kw == k; }
};

/// Splits query text into tokens. `//` line comments and whitespace are
/// skipped. Throws SyntaxError on illegal characters and unterminated strings.
std::vector<Token> tokenize(std::string_view text, std::string_view source_name = "");

}  // namespace aiql

#include "aiql/metrics.hpp"

#include <set>

#include "aiql/parser.hpp"
#include "aiql/token.hpp"

namespace aiql {

namespace {

// Dynamic-sized lexemes count as a constant 1.
bool counts_as_one(const Token& t) {
  switch (t.kind) {
    case Tok::Ident:
    case Tok::String:
    case Tok::Int:
    case Tok::Float:
    case Tok::Date:
      return true;
    default:
      return false;
  }
}

bool word_like(const Token& t) {
  switch (t.kind) {
    case Tok::Keyword:
    case Tok::Ident:
    case Tok::Bool:
    case Tok::Int:
    case Tok::Float:
    case Tok::Date:
      return true;
    default:
      return false;
  }
}

// A space between two tokens is syntactically required when gluing them
// together would change the token stream, i.e. both are word-like
// (`VERSION LAST`, `LIST comp`). Everything else self-delimits.
bool space_required(const Token& a, const Token& b) {
  return word_like(a) && word_like(b);
}

}  // namespace

QueryMetrics query_metrics(std::string_view text, std::string_view source_name) {
  const QueryAst ast = parse_query(text, source_name);  // propagate errors

  QueryMetrics m;
  m.output_count = static_cast<int>(ast.outputs.size());

  const std::vector<Token> tokens = tokenize(text, source_name);
  std::set<Kw> unique;
  const Token* prev = nullptr;
  for (const Token& t : tokens) {
    if (t.kind == Tok::End) break;
    if (t.kind == Tok::Keyword) {
      ++m.keyword_total;
      unique.insert(t.kw);
    }
    m.char_count += counts_as_one(t) ? 1 : static_cast<int>(t.text.size());
    if (prev && space_required(*prev, t)) ++m.char_count;
    prev = &t;
  }
  m.keyword_unique = static_cast<int>(unique.size());
  return m;
}

}  // namespace aiql

#include "aiql/parser.hpp"

#include <set>

#include "aiql/token.hpp"

namespace aiql {

namespace {

bool is_uppercase_word(std::string_view s) {
  if (s.empty() || !(s[0] >= 'A' && s[0] <= 'Z')) return false;
  for (char c : s) {
    if (!((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_')) return false;
  }
  return true;
}

class Parser {
 public:
  Parser(std::string_view text, std::string_view source)
      : tokens_(tokenize(text, source)), source_(source) {}

  QueryAst run() {
    QueryAst q;
    parse_header(q);
    while (at_kw(Kw::List)) {
      advance();
      q.templates.push_back(parse_template());
      expect(Tok::Semi, "';' after the template");
    }
    while (at_kw(Kw::Output)) {
      advance();
      q.outputs.push_back(parse_output());
      expect(Tok::Semi, "';' after the output directive");
    }
    if (q.outputs.empty()) {
      fail(peek().pos, "query needs at least one OUTPUT directive");
    }
    if (peek().kind != Tok::End) {
      fail(peek().pos, "expected LIST, OUTPUT or end of query, got " + describe(peek()));
    }
    return q;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = index_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& advance() { return tokens_[index_++]; }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_kw(Kw kw) const { return peek().is_kw(kw); }

  bool accept_kw(Kw kw) {
    if (!at_kw(kw)) return false;
    advance();
    return true;
  }

  std::string describe(const Token& t) const {
    switch (t.kind) {
      case Tok::End: return "end of query";
      case Tok::String: return "string " + t.text;
      default: return "'" + t.text + "'";
    }
  }

  [[noreturn]] void fail(const Position& pos, std::string message) {
    throw SyntaxError(make_error("parse", std::move(message), pos, std::string(source_)));
  }

  const Token& expect(Tok kind, std::string_view what) {
    if (!at(kind)) {
      fail(peek().pos, "expected " + std::string(what) + ", got " + describe(peek()));
    }
    return advance();
  }

  const Token& expect_kw(Kw kw, std::string_view what) {
    if (!at_kw(kw)) {
      fail(peek().pos, "expected " + std::string(what) + ", got " + describe(peek()));
    }
    return advance();
  }

  const Token& expect_ident(std::string_view what) {
    if (!at(Tok::Ident)) {
      if (peek().kind == Tok::Keyword) {
        fail(peek().pos, "expected " + std::string(what) + ", got keyword '" +
                             peek().text + "' (escape it as ^" + peek().text +
                             " to use it as an identifier)");
      }
      fail(peek().pos, "expected " + std::string(what) + ", got " + describe(peek()));
    }
    return advance();
  }

  void parse_header(QueryAst& q) {
    expect_kw(Kw::Model, "MODEL at the start of the query");
    const Token& path = expect(Tok::String, "a quoted model path");
    q.model_path = path.value;
    q.model_quote = path.quote;
    q.model_pos = path.pos;
    if (q.model_path.empty()) fail(path.pos, "model path must be non-empty");
    expect(Tok::Semi, "';' after the model path");

    expect_kw(Kw::Version, "VERSION after the model header");
    if (accept_kw(Kw::First)) {
      q.version.kind = VersionSelector::Kind::First;
    } else if (accept_kw(Kw::Last)) {
      q.version.kind = VersionSelector::Kind::Last;
    } else if (at(Tok::Compare)) {
      q.version.kind = VersionSelector::Kind::Filter;
      q.version.op = advance().op;
      std::optional<bool> ints_only = false;
      q.version.rhs = parse_arithmetic(ints_only);
    } else {
      fail(peek().pos, "expected FIRST, LAST or a comparison after VERSION, got " +
                           describe(peek()));
    }
    expect(Tok::Semi, "';' after the version selector");
  }

  TemplateAst parse_template() {
    TemplateAst t;
    const Token& type = expect_ident("a type name after LIST");
    t.type_name = type.value;
    t.type_pos = type.pos;
    const Token& ident = expect_ident("a template identifier");
    t.identifier = ident.value;
    t.escaped = ident.escaped;
    t.ident_pos = ident.pos;
    if (accept_kw(Kw::Restrictions)) {
      expect(Tok::Colon, "':' after RESTRICTIONS");
      t.restrictions = parse_disjunction();
    }
    return t;
  }

  Disjunction parse_disjunction() {
    Disjunction d;
    d.groups.push_back(parse_group());
    while (accept_kw(Kw::Or)) {
      d.groups.push_back(parse_group());
    }
    return d;
  }

  Conjunction parse_group() {
    expect(Tok::LParen, "'(' opening a restriction group");
    Conjunction members;
    while (!at(Tok::RParen)) {
      if (at(Tok::End)) {
        fail(peek().pos, "unclosed restriction group");
      }
      members.push_back(parse_restriction());
    }
    if (members.empty()) {
      fail(peek().pos, "restriction group must contain at least one restriction");
    }
    expect(Tok::RParen, "')' closing the restriction group");
    return members;
  }

  Restriction parse_restriction() {
    Restriction r;
    r.negated = accept_kw(Kw::Not);

    if (auto quant = parse_quantifier()) {
      RefRestriction ref;
      ref.quantifier = quant;
      const Token& rel = expect_ident("a reference name after the quantifier");
      ref.relation = rel.value;
      ref.relation_pos = rel.pos;
      const Token& target = expect_ident("a template identifier");
      ref.target = target.value;
      ref.target_escaped = target.escaped;
      ref.target_pos = target.pos;
      r.body = std::move(ref);
      return r;
    }

    const Token& name = expect_ident("an attribute or reference name");

    // `Name 'x'`, `Version <= 2`, `Flag true`: an expression follows.
    if (at(Tok::String) || at(Tok::Bool) || at(Tok::Compare)) {
      AttrRestriction attr;
      attr.name = name.value;
      attr.name_pos = name.pos;
      attr.expr = parse_attr_expr();
      r.body = std::move(attr);
      return r;
    }

    if (at(Tok::Ident)) {
      const Token& second = advance();
      // A bare uppercase identifier is an enum literal (`Type CLASS`);
      // anything else, and anything ^-escaped, names a template
      // (`Child handler`, `Child ^HANDLER`).
      if (!second.escaped && is_uppercase_word(second.value)) {
        AttrRestriction attr;
        attr.name = name.value;
        attr.name_pos = name.pos;
        attr.expr = AttrExprEnum{second.value};
        r.body = std::move(attr);
        return r;
      }
      RefRestriction ref;
      ref.relation = name.value;
      ref.relation_pos = name.pos;
      ref.target = second.value;
      ref.target_escaped = second.escaped;
      ref.target_pos = second.pos;
      r.body = std::move(ref);
      return r;
    }

    fail(peek().pos,
         "expected an attribute expression or a template identifier after '" +
             name.value + "', got " + describe(peek()));
  }

  std::optional<Quantifier> parse_quantifier() {
    if (accept_kw(Kw::Exists)) return Quantifier{Quantifier::Kind::Exists};
    if (accept_kw(Kw::ForAll)) return Quantifier{Quantifier::Kind::ForAll};
    if (at_kw(Kw::Count)) {
      advance();
      expect(Tok::LParen, "'(' after COUNT");
      const Token& n = expect(Tok::Int, "a non-negative integer");
      expect(Tok::RParen, "')' after the COUNT argument");
      return Quantifier{Quantifier::Kind::Count, n.int_value, n.int_value};
    }
    if (at_kw(Kw::Range)) {
      const Position pos = peek().pos;
      advance();
      expect(Tok::LParen, "'(' after RANGE");
      const Token& a = expect(Tok::Int, "a non-negative integer");
      expect(Tok::Comma, "',' between the RANGE bounds");
      const Token& b = expect(Tok::Int, "a non-negative integer");
      expect(Tok::RParen, "')' after the RANGE bounds");
      if (a.int_value > b.int_value) {
        fail(pos, "RANGE bounds must satisfy a <= b");
      }
      return Quantifier{Quantifier::Kind::Range, a.int_value, b.int_value};
    }
    return std::nullopt;
  }

  AttrExpr parse_attr_expr() {
    if (at(Tok::Bool)) {
      return AttrExprBool{advance().bool_value};
    }
    if (at(Tok::String)) {
      const Token& s = advance();
      AttrExprString e;
      e.pattern = s.value;
      e.quote = s.quote;
      std::string regex_error;
      e.matcher = StringMatcher::compile(e.pattern, regex_error);
      if (!e.matcher) {
        fail(s.pos, "invalid regular expression: " + regex_error);
      }
      return e;
    }
    const Token& op = expect(Tok::Compare, "a comparison operator");
    if (at(Tok::Date)) {
      const Token& d = advance();
      return AttrExprDate{op.op, DateTime{d.int_value}};
    }
    std::optional<bool> literal_kind;
    auto rhs = parse_arithmetic(literal_kind);
    if (rhs->contains_float()) {
      return AttrExprFloat{op.op, rhs};
    }
    return AttrExprInt{op.op, rhs};
  }

  // <arith> = <term> {('+'|'-') <term>};  <term> = <factor> {('*'|'/') <factor>};
  // <factor> = ['-'] literal | '(' <arith> ')'.
  // want_float: false forces integer literals (VERSION filter), nullopt
  // accepts either kind but rejects a mix of int and float literals.
  std::shared_ptr<const NumExpr> parse_arithmetic(std::optional<bool>& want_float) {
    auto expr = parse_term(want_float);
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const char op = advance().text[0];
      auto rhs = parse_term(want_float);
      expr = make_binop(op, expr, rhs);
    }
    return expr;
  }

  std::shared_ptr<const NumExpr> parse_term(std::optional<bool>& want_float) {
    auto expr = parse_factor(want_float);
    while (at(Tok::Star) || at(Tok::Slash)) {
      const char op = advance().text[0];
      auto rhs = parse_factor(want_float);
      expr = make_binop(op, expr, rhs);
    }
    return expr;
  }

  std::shared_ptr<const NumExpr> parse_factor(std::optional<bool>& want_float) {
    if (at(Tok::LParen)) {
      advance();
      auto inner = parse_arithmetic(want_float);
      expect(Tok::RParen, "')' closing the arithmetic group");
      auto group = std::make_shared<NumExpr>();
      group->kind = NumExpr::Kind::Group;
      group->rhs = inner;
      return group;
    }

    bool negative = false;
    if (at(Tok::Minus)) {
      advance();
      negative = true;
    }
    if (at(Tok::Int)) {
      const Token& t = advance();
      if (want_float.has_value() && *want_float) {
        fail(t.pos, "integer literal in a float expression (use a decimal point)");
      }
      want_float = false;
      auto lit = std::make_shared<NumExpr>();
      lit->kind = NumExpr::Kind::IntLit;
      lit->int_value = negative ? -t.int_value : t.int_value;
      lit->lexeme = negative ? "-" + t.text : t.text;
      return lit;
    }
    if (at(Tok::Float)) {
      const Token& t = advance();
      if (want_float.has_value() && !*want_float) {
        fail(t.pos, "float literal in an integer expression");
      }
      want_float = true;
      auto lit = std::make_shared<NumExpr>();
      lit->kind = NumExpr::Kind::FloatLit;
      lit->float_value = negative ? -t.float_value : t.float_value;
      lit->lexeme = negative ? "-" + t.text : t.text;
      return lit;
    }
    fail(peek().pos, "expected a numeric literal or '(', got " + describe(peek()));
  }

  static std::shared_ptr<const NumExpr> make_binop(char op,
                                                   std::shared_ptr<const NumExpr> lhs,
                                                   std::shared_ptr<const NumExpr> rhs) {
    auto e = std::make_shared<NumExpr>();
    e->kind = NumExpr::Kind::BinOp;
    e->op = op;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
  }

  OutputAst parse_output() {
    OutputAst out;
    const Token& ident = expect_ident("a template identifier after OUTPUT");
    out.identifier = ident.value;
    out.escaped = ident.escaped;
    out.ident_pos = ident.pos;

    if (accept_kw(Kw::OrderBy)) {
      std::set<std::string> seen;
      for (;;) {
        OrderKey key;
        const Token& attr = expect_ident("an attribute name after ORDER_BY");
        key.attribute = attr.value;
        key.pos = attr.pos;
        if (accept_kw(Kw::Asc)) {
          key.ascending = true;
        } else if (accept_kw(Kw::Desc)) {
          key.ascending = false;
        } else {
          fail(peek().pos, "expected ASC or DESC after the ORDER_BY attribute, got " +
                               describe(peek()));
        }
        if (!seen.insert(key.attribute).second) {
          fail(attr.pos, "duplicate ORDER_BY attribute '" + key.attribute + "'");
        }
        out.order_by.push_back(std::move(key));
        if (!at(Tok::Comma)) break;
        advance();
      }
    }

    if (accept_kw(Kw::Attribute)) {
      std::vector<ProjectedAttr> proj;
      std::set<std::string> seen;
      for (;;) {
        const Token& attr = expect_ident("an attribute name after ATTRIBUTE");
        if (!seen.insert(attr.value).second) {
          fail(attr.pos, "duplicate ATTRIBUTE name '" + attr.value + "'");
        }
        proj.push_back(ProjectedAttr{attr.value, attr.pos});
        if (!at(Tok::Comma)) break;
        advance();
      }
      out.projection = std::move(proj);
    }
    return out;
  }

  std::vector<Token> tokens_;
  std::string_view source_;
  std::size_t index_ = 0;
};

}  // namespace

QueryAst parse_query(std::string_view text, std::string_view source_name) {
  return Parser(text, source_name).run();
}

}  // namespace aiql

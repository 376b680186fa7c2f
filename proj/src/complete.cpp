#include "aiql/complete.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "aiql/token.hpp"

namespace aiql {

namespace {

// The walker mirrors the grammar: it consumes the (complete) tokens of the
// buffer and, wherever the buffer ends, reports which concrete tokens could
// come next. Thrown instead of returned so the walk can stop anywhere.
struct Proposals {
  std::set<std::string> items;
  bool viable = true;  // false: the buffer already fails to parse
};

class Walker {
 public:
  Walker(std::vector<Token> tokens, const Schema& schema)
      : tokens_(std::move(tokens)), schema_(schema) {}

  Proposals run() {
    try {
      walk_query();
    } catch (Proposals& p) {
      return std::move(p);
    }
    return {};
  }

 private:
  [[noreturn]] void propose(std::initializer_list<std::string> items) {
    Proposals p;
    p.items.insert(items.begin(), items.end());
    throw p;
  }

  [[noreturn]] void propose_set(std::set<std::string> items) {
    Proposals p;
    p.items = std::move(items);
    throw p;
  }

  bool at_end() const { return tokens_[index_].kind == Tok::End; }
  const Token& peek() const { return tokens_[index_]; }
  const Token& advance() { return tokens_[index_++]; }

  void need(std::initializer_list<std::string> items) {
    if (at_end()) propose(items);
  }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    advance();
    return true;
  }

  bool accept_kw(Kw kw) {
    if (!peek().is_kw(kw)) return false;
    advance();
    return true;
  }

  // Consumes one token of the given kind; if the buffer ends here, the
  // caller's proposals stand. A mismatched (non-end) token aborts silently:
  // the buffer is already unparseable and gets no proposals.
  [[noreturn]] void abort_walk() { throw Proposals{{}, false}; }

  void require(Tok kind, std::initializer_list<std::string> items) {
    if (at_end()) propose(items);
    if (!accept(kind)) abort_walk();
  }

  void require_kw(Kw kw, std::initializer_list<std::string> items) {
    if (at_end()) propose(items);
    if (!accept_kw(kw)) abort_walk();
  }

  void walk_query() {
    require_kw(Kw::Model, {"MODEL"});
    require(Tok::String, {});
    require(Tok::Semi, {";"});
    require_kw(Kw::Version, {"VERSION"});
    if (at_end()) propose({"FIRST", "LAST", "<", "<=", "=", ">", ">="});
    if (!accept_kw(Kw::First) && !accept_kw(Kw::Last)) {
      if (!accept(Tok::Compare)) abort_walk();
      walk_arith({";"});
    }
    require(Tok::Semi, {";"});

    if (at_end()) propose({"LIST", "OUTPUT"});
    while (accept_kw(Kw::List)) {
      walk_template();
      require(Tok::Semi, {";"});
      if (at_end()) propose({"LIST", "OUTPUT"});
    }
    for (;;) {
      require_kw(Kw::Output, {"OUTPUT"});
      walk_output();
      require(Tok::Semi, {";"});
      if (at_end()) propose({"OUTPUT"});  // complete query; more outputs may follow
    }
  }

  std::set<std::string> class_names() const {
    std::set<std::string> out;
    for (const ClassDef& c : schema_.classes()) out.insert(c.name);
    return out;
  }

  void walk_template() {
    if (at_end()) propose_set(class_names());
    if (peek().kind != Tok::Ident) abort_walk();
    current_class_ = advance().value;

    if (at_end()) propose({});  // user-defined identifier
    if (peek().kind != Tok::Ident) abort_walk();
    const std::string identifier = advance().value;
    templates_.insert(identifier);
    template_class_[identifier] = current_class_;

    if (at_end()) propose({"RESTRICTIONS:", ";"});
    if (accept_kw(Kw::Restrictions)) {
      require(Tok::Colon, {":"});
      walk_disjunction();
    }
  }

  std::set<std::string> member_start_names(bool include_not) const {
    std::set<std::string> out = {"EXISTS", "FOR_ALL", "COUNT(", "RANGE("};
    if (include_not) out.insert("NOT");
    if (const ClassDef* cls = schema_.find_class(current_class_)) {
      for (const AttrDef* a : schema_.all_attributes(cls->name)) out.insert(a->name);
      for (const RefDef* r : schema_.all_references(cls->name)) out.insert(r->name);
      for (const ShortcutDef* s : schema_.shortcuts_for(cls->name)) out.insert(s->name);
    }
    return out;
  }

  std::set<std::string> many_relation_names() const {
    std::set<std::string> out;
    if (const ClassDef* cls = schema_.find_class(current_class_)) {
      for (const RefDef* r : schema_.all_references(cls->name)) {
        if (r->many) out.insert(r->name);
      }
      for (const ShortcutDef* s : schema_.shortcuts_for(cls->name)) {
        if (s->many) out.insert(s->name);
      }
    }
    return out;
  }

  void walk_disjunction() {
    for (;;) {
      require(Tok::LParen, {"("});
      walk_member(/*first=*/true);
      while (!accept(Tok::RParen)) {
        walk_member(/*first=*/false);
      }
      if (at_end()) propose({"OR", ";"});
      if (!accept_kw(Kw::Or)) break;
    }
  }

  // One restriction inside a group; `first` controls whether ')' may close
  // the group instead (groups must not be empty).
  void walk_member(bool first) {
    if (at_end()) {
      auto items = member_start_names(/*include_not=*/true);
      if (!first) items.insert(")");
      propose_set(items);
    }
    if (accept_kw(Kw::Not)) {
      if (at_end()) propose_set(member_start_names(/*include_not=*/false));
    }

    if (accept_kw(Kw::Exists) || accept_kw(Kw::ForAll)) {
      walk_quantified_ref();
      return;
    }
    if (peek().is_kw(Kw::Count) || peek().is_kw(Kw::Range)) {
      const bool is_range = peek().is_kw(Kw::Range);
      advance();
      require(Tok::LParen, {"("});
      require(Tok::Int, {});
      if (is_range) {
        require(Tok::Comma, {","});
        require(Tok::Int, {});
      }
      require(Tok::RParen, {")"});
      walk_quantified_ref();
      return;
    }

    if (peek().kind != Tok::Ident) abort_walk();
    const std::string name = advance().value;

    // Attribute => typed value; relation => template identifier.
    const ClassDef* cls = schema_.find_class(current_class_);
    const AttrDef* attr = cls ? schema_.find_attribute(cls->name, name) : nullptr;
    if (at_end()) {
      if (attr) propose_set(value_proposals(*attr));
      propose_set(templates_);  // relation target
    }
    switch (peek().kind) {
      case Tok::Bool:
      case Tok::String:
        advance();
        return;
      case Tok::Compare:
        advance();
        if (at_end()) propose({"("});
        if (accept(Tok::Date)) return;
        walk_arith({")"});
        return;
      case Tok::Ident:
        advance();  // enum literal or template identifier
        return;
      default:
        abort_walk();
    }
  }

  std::set<std::string> value_proposals(const AttrDef& attr) const {
    switch (attr.type) {
      case AttrType::Bool:
        return {"true", "false"};
      case AttrType::Enum:
        return {attr.literals.begin(), attr.literals.end()};
      case AttrType::Int:
      case AttrType::Float:
      case AttrType::Date:
        return {"<", "<=", "=", ">", ">="};
      case AttrType::String:
        return {};  // free-form pattern
    }
    return {};
  }

  void walk_quantified_ref() {
    if (at_end()) propose_set(many_relation_names());
    if (peek().kind != Tok::Ident) abort_walk();
    advance();
    if (at_end()) propose_set(templates_);
    if (peek().kind != Tok::Ident) abort_walk();
    advance();
  }

  // Arithmetic: accepts tokens until something outside the expression shows
  // up. `tail` is proposed alongside the operators once at least one
  // complete operand was seen at nesting depth zero.
  void walk_arith(const std::set<std::string>& tail) {
    int parens = 0;
    for (;;) {
      // operand
      if (at_end()) propose({"("});
      if (accept(Tok::LParen)) {
        ++parens;
        continue;
      }
      accept(Tok::Minus);
      if (at_end()) propose({});
      if (!accept(Tok::Int) && !accept(Tok::Float)) abort_walk();
      // closers and operators; a ')' at depth zero belongs to the caller
      for (;;) {
        if (at_end()) {
          std::set<std::string> items = {"+", "-", "*", "/"};
          if (parens > 0) items.insert(")");
          if (parens == 0) items.insert(tail.begin(), tail.end());
          propose_set(items);
        }
        if (parens > 0 && peek().kind == Tok::RParen) {
          advance();
          --parens;
          continue;
        }
        break;
      }
      if (accept(Tok::Plus) || accept(Tok::Minus) || accept(Tok::Star) ||
          accept(Tok::Slash)) {
        continue;
      }
      if (parens > 0) abort_walk();
      return;
    }
  }

  void walk_output() {
    if (at_end()) propose_set(templates_);
    if (peek().kind != Tok::Ident) abort_walk();
    const std::string identifier = advance().value;
    const std::string cls = template_class_.contains(identifier)
                                ? template_class_.at(identifier)
                                : "";

    if (at_end()) propose({"ORDER_BY", "ATTRIBUTE", ";"});
    if (accept_kw(Kw::OrderBy)) {
      for (;;) {
        if (at_end()) propose_set(attributes_of(cls));
        if (peek().kind != Tok::Ident) abort_walk();
        advance();
        if (at_end()) propose({"ASC", "DESC"});
        if (!accept_kw(Kw::Asc) && !accept_kw(Kw::Desc)) abort_walk();
        if (at_end()) propose({",", "ATTRIBUTE", ";"});
        if (!accept(Tok::Comma)) break;
      }
    }
    if (accept_kw(Kw::Attribute)) {
      for (;;) {
        if (at_end()) propose_set(attributes_of(cls));
        if (peek().kind != Tok::Ident) abort_walk();
        advance();
        if (at_end()) propose({",", ";"});
        if (!accept(Tok::Comma)) break;
      }
    }
  }

  std::set<std::string> attributes_of(const std::string& cls) const {
    std::set<std::string> out;
    if (schema_.find_class(cls)) {
      for (const AttrDef* a : schema_.all_attributes(cls)) out.insert(a->name);
    }
    return out;
  }

  std::vector<Token> tokens_;
  const Schema& schema_;
  std::size_t index_ = 0;
  std::string current_class_;
  std::set<std::string> templates_;
  std::map<std::string, std::string> template_class_;
};

}  // namespace

std::vector<std::string> complete_proposals(std::string_view buffer, const Schema& schema) {
  std::vector<Token> tokens;
  try {
    tokens = tokenize(buffer);
  } catch (const SyntaxError&) {
    return {};  // mid-string or on an illegal character: nothing to propose
  }

  // A word touching the end of the buffer is a partial prefix, not a
  // complete token.
  std::string partial;
  if (tokens.size() >= 2 && !buffer.empty()) {
    const char last_char = buffer.back();
    const bool word_char = (last_char >= 'a' && last_char <= 'z') ||
                           (last_char >= 'A' && last_char <= 'Z') ||
                           (last_char >= '0' && last_char <= '9') || last_char == '_';
    const Token& last = tokens[tokens.size() - 2];
    const bool word_kind = last.kind == Tok::Ident || last.kind == Tok::Keyword ||
                           last.kind == Tok::Bool;
    if (word_char && word_kind &&
        last.pos.offset + last.text.size() == buffer.size()) {
      partial = last.text;
      tokens.erase(tokens.end() - 2);
    }
  }

  Proposals proposals = Walker(std::move(tokens), schema).run();

  std::vector<std::string> out;
  for (const std::string& p : proposals.items) {
    if (partial.empty() || (p.size() > partial.size() && p.starts_with(partial))) {
      out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_viable_prefix(std::string_view buffer, const Schema& schema) {
  std::vector<Token> tokens;
  try {
    tokens = tokenize(buffer);
  } catch (const SyntaxError&) {
    return false;
  }
  return Walker(std::move(tokens), schema).run().viable;
}

}  // namespace aiql

#include <sstream>

#include "aiql/parser.hpp"
#include "aiql/token.hpp"

namespace aiql {

namespace {

void write_ident(std::ostream& out, const std::string& name, bool escaped) {
  if (escaped || is_reserved_word(name)) out << '^';
  out << name;
}

// Type/attribute/reference names carry no escape flag in the AST; emit the
// escape whenever the name would otherwise lex as a keyword.
void write_name(std::ostream& out, const std::string& name) {
  if (is_reserved_word(name)) out << '^';
  out << name;
}

void write_attr_expr(std::ostream& out, const AttrExpr& expr) {
  if (const auto* b = std::get_if<AttrExprBool>(&expr)) {
    out << (b->value ? "true" : "false");
  } else if (const auto* s = std::get_if<AttrExprString>(&expr)) {
    out << s->quote << s->pattern << s->quote;
  } else if (const auto* i = std::get_if<AttrExprInt>(&expr)) {
    out << compare_op_text(i->op) << " " << i->rhs->text();
  } else if (const auto* f = std::get_if<AttrExprFloat>(&expr)) {
    out << compare_op_text(f->op) << " " << f->rhs->text();
  } else if (const auto* d = std::get_if<AttrExprDate>(&expr)) {
    out << compare_op_text(d->op) << " " << d->value.iso();
  } else if (const auto* e = std::get_if<AttrExprEnum>(&expr)) {
    out << e->literal;
  }
}

void write_restriction(std::ostream& out, const Restriction& r) {
  if (r.negated) out << "NOT ";
  if (const auto* attr = std::get_if<AttrRestriction>(&r.body)) {
    write_name(out, attr->name);
    out << " ";
    write_attr_expr(out, attr->expr);
    return;
  }
  const auto& ref = std::get<RefRestriction>(r.body);
  if (ref.quantifier) {
    switch (ref.quantifier->kind) {
      case Quantifier::Kind::Exists: out << "EXISTS "; break;
      case Quantifier::Kind::ForAll: out << "FOR_ALL "; break;
      case Quantifier::Kind::Count:
        out << "COUNT(" << ref.quantifier->low << ") ";
        break;
      case Quantifier::Kind::Range:
        out << "RANGE(" << ref.quantifier->low << ", " << ref.quantifier->high << ") ";
        break;
    }
  }
  write_name(out, ref.relation);
  out << " ";
  write_ident(out, ref.target, ref.target_escaped);
}

void write_disjunction(std::ostream& out, const Disjunction& d) {
  for (std::size_t g = 0; g < d.groups.size(); ++g) {
    if (g != 0) out << " OR ";
    out << "(";
    const Conjunction& members = d.groups[g];
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i != 0) out << " ";
      write_restriction(out, members[i]);
    }
    out << ")";
  }
}

}  // namespace

std::string format_query(const QueryAst& ast) {
  std::ostringstream out;
  out << "MODEL " << ast.model_quote << ast.model_path << ast.model_quote << ";\n";
  out << "VERSION ";
  switch (ast.version.kind) {
    case VersionSelector::Kind::First: out << "FIRST"; break;
    case VersionSelector::Kind::Last: out << "LAST"; break;
    case VersionSelector::Kind::Filter:
      out << compare_op_text(ast.version.op) << " " << ast.version.rhs->text();
      break;
  }
  out << ";\n";

  for (const TemplateAst& t : ast.templates) {
    out << "\nLIST ";
    write_name(out, t.type_name);
    out << " ";
    write_ident(out, t.identifier, t.escaped);
    if (t.restrictions) {
      out << " RESTRICTIONS:\n    ";
      write_disjunction(out, *t.restrictions);
    }
    out << ";\n";
  }

  out << "\n";
  for (const OutputAst& o : ast.outputs) {
    out << "OUTPUT ";
    write_ident(out, o.identifier, o.escaped);
    if (!o.order_by.empty()) {
      out << " ORDER_BY ";
      for (std::size_t i = 0; i < o.order_by.size(); ++i) {
        if (i != 0) out << ", ";
        write_name(out, o.order_by[i].attribute);
        out << (o.order_by[i].ascending ? " ASC" : " DESC");
      }
    }
    if (o.projection) {
      out << " ATTRIBUTE ";
      for (std::size_t i = 0; i < o.projection->size(); ++i) {
        if (i != 0) out << ", ";
        write_name(out, (*o.projection)[i].name);
      }
    }
    out << ";\n";
  }
  return out.str();
}

}  // namespace aiql

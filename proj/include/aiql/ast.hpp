#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aiql/expr.hpp"
#include "aiql/strmatch.hpp"

namespace aiql {

struct AttrExprBool {
  bool value = false;
  bool operator==(const AttrExprBool&) const = default;
};

/// Full-match regular expression on a String attribute. The compiled matcher
/// is built at parse time; equality is on the pattern text.
struct AttrExprString {
  std::string pattern;
  char quote = '\'';
  std::shared_ptr<const StringMatcher> matcher;

  bool operator==(const AttrExprString& other) const {
    return pattern == other.pattern && quote == other.quote;
  }
};

struct AttrExprInt {
  CompareOp op = CompareOp::Eq;
  std::shared_ptr<const NumExpr> rhs;

  bool operator==(const AttrExprInt& other) const {
    return op == other.op && num_expr_equal(*rhs, *other.rhs);
  }
};

struct AttrExprFloat {
  CompareOp op = CompareOp::Eq;
  std::shared_ptr<const NumExpr> rhs;

  bool operator==(const AttrExprFloat& other) const {
    return op == other.op && num_expr_equal(*rhs, *other.rhs);
  }
};

struct AttrExprDate {
  CompareOp op = CompareOp::Eq;
  DateTime value;
  bool operator==(const AttrExprDate&) const = default;
};

/// Bare uppercase identifier, e.g. `Type CLASS`.
struct AttrExprEnum {
  std::string literal;
  bool operator==(const AttrExprEnum&) const = default;
};

using AttrExpr = std::variant<AttrExprBool, AttrExprString, AttrExprInt,
                              AttrExprFloat, AttrExprDate, AttrExprEnum>;

struct Quantifier {
  enum class Kind { Exists, ForAll, Count, Range };
  Kind kind = Kind::Exists;
  std::int64_t low = 0;   // Count n, Range a
  std::int64_t high = 0;  // Range b

  bool operator==(const Quantifier&) const = default;
};

struct AttrRestriction {
  std::string name;
  Position name_pos;
  AttrExpr expr;

  bool operator==(const AttrRestriction& other) const {
    return name == other.name && expr == other.expr;
  }
};

struct RefRestriction {
  std::optional<Quantifier> quantifier;
  std::string relation;
  Position relation_pos;
  std::string target;  // template identifier, escape stripped
  bool target_escaped = false;
  Position target_pos;

  bool operator==(const RefRestriction& other) const {
    return quantifier == other.quantifier && relation == other.relation &&
           target == other.target && target_escaped == other.target_escaped;
  }
};

struct Restriction {
  bool negated = false;
  std::variant<AttrRestriction, RefRestriction> body;

  bool operator==(const Restriction&) const = default;
};

using Conjunction = std::vector<Restriction>;

struct Disjunction {
  std::vector<Conjunction> groups;  // non-empty; each group non-empty
  bool operator==(const Disjunction&) const = default;
};

struct TemplateAst {
  std::string type_name;
  Position type_pos;
  std::string identifier;  // escape stripped
  bool escaped = false;
  Position ident_pos;
  std::optional<Disjunction> restrictions;

  bool operator==(const TemplateAst& other) const {
    return type_name == other.type_name && identifier == other.identifier &&
           escaped == other.escaped && restrictions == other.restrictions;
  }
};

struct OrderKey {
  std::string attribute;
  Position pos;
  bool ascending = true;

  bool operator==(const OrderKey& other) const {
    return attribute == other.attribute && ascending == other.ascending;
  }
};

struct ProjectedAttr {
  std::string name;
  Position pos;

  bool operator==(const ProjectedAttr& other) const { return name == other.name; }
};

struct OutputAst {
  std::string identifier;
  bool escaped = false;
  Position ident_pos;
  std::vector<OrderKey> order_by;
  std::optional<std::vector<ProjectedAttr>> projection;

  bool operator==(const OutputAst& other) const {
    return identifier == other.identifier && escaped == other.escaped &&
           order_by == other.order_by && projection == other.projection;
  }
};

struct QueryAst {
  std::string model_path;
  char model_quote = '"';
  Position model_pos;
  VersionSelector version;
  std::vector<TemplateAst> templates;
  std::vector<OutputAst> outputs;

  bool operator==(const QueryAst& other) const {
    return model_path == other.model_path && version == other.version &&
           templates == other.templates && outputs == other.outputs;
  }
};

}  // namespace aiql

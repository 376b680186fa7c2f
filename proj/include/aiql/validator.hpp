#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aiql/ast.hpp"
#include "aiql/schema.hpp"

namespace aiql {

struct ResolvedAttrRestriction {
  const AttrRestriction* ast = nullptr;
  const AttrDef* def = nullptr;
};

struct ResolvedRefRestriction {
  const RefRestriction* ast = nullptr;
  Schema::Relation relation;
  std::size_t target_template = 0;  // index into declaration order
};

struct ResolvedMember {
  bool negated = false;
  std::variant<ResolvedAttrRestriction, ResolvedRefRestriction> body;
};

struct ResolvedTemplate {
  const TemplateAst* ast = nullptr;
  const ClassDef* cls = nullptr;
  std::vector<std::vector<ResolvedMember>> groups;  // disjunction of conjunctions
};

struct ResolvedOutput {
  const OutputAst* ast = nullptr;
  std::size_t template_index = 0;
  std::vector<std::pair<const AttrDef*, bool>> order_by;  // attr, ascending
  std::optional<std::vector<const AttrDef*>> projection;
};

/// A type-checked query bound to a schema. Holds the AST; the schema must
/// outlive the ValidatedQuery.
class ValidatedQuery {
 public:
  const QueryAst& ast() const { return *ast_; }
  const Schema& schema() const { return *schema_; }
  const std::vector<ResolvedTemplate>& templates() const { return templates_; }
  const std::vector<ResolvedOutput>& outputs() const { return outputs_; }

  /// Indices into templates() in dependency order: every template comes
  /// after the templates it references.
  const std::vector<std::size_t>& evaluation_order() const { return order_; }

  const ResolvedTemplate* find_template(std::string_view identifier) const;

 private:
  friend class Validator;

  std::shared_ptr<const QueryAst> ast_;
  const Schema* schema_ = nullptr;
  std::vector<ResolvedTemplate> templates_;
  std::vector<ResolvedOutput> outputs_;
  std::vector<std::size_t> order_;
};

struct ValidationResult {
  std::optional<ValidatedQuery> query;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return query.has_value(); }
  bool has_errors() const;
};

/// Checks the static semantics of a parsed query against a schema. All
/// diagnostics are collected in one pass; `query` is set only when no
/// error-severity diagnostic was produced.
ValidationResult validate_query(std::shared_ptr<const QueryAst> ast, const Schema& schema,
                                std::string_view source_name = "");
ValidationResult validate_query(QueryAst ast, const Schema& schema,
                                std::string_view source_name = "");

/// Template identifiers in evaluation order (topological, declaration-order
/// tie-breaking).
std::vector<std::string> template_order(const ValidatedQuery& query);

}  // namespace aiql

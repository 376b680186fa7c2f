#include "aiql/validator.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace aiql {

namespace {

std::string_view expr_kind_name(const AttrExpr& expr) {
  if (std::holds_alternative<AttrExprBool>(expr)) return "a boolean expression";
  if (std::holds_alternative<AttrExprString>(expr)) return "a string expression";
  if (std::holds_alternative<AttrExprInt>(expr)) return "an int expression";
  if (std::holds_alternative<AttrExprFloat>(expr)) return "a float expression";
  if (std::holds_alternative<AttrExprDate>(expr)) return "a date expression";
  return "an enum literal";
}

}  // namespace

bool ValidationResult::has_errors() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) {
    return d.severity == Severity::Error;
  });
}

const ResolvedTemplate* ValidatedQuery::find_template(std::string_view identifier) const {
  for (const ResolvedTemplate& t : templates_) {
    if (t.ast->identifier == identifier) return &t;
  }
  return nullptr;
}

class Validator {
 public:
  Validator(std::shared_ptr<const QueryAst> ast, const Schema& schema,
            std::string_view source)
      : ast_(std::move(ast)), schema_(schema), source_(source) {}

  ValidationResult run() {
    index_templates();
    resolve_templates();
    resolve_outputs();
    order_templates();
    mark_unused();

    ValidationResult result;
    result.diagnostics = std::move(diags_);
    const bool failed = std::any_of(
        result.diagnostics.begin(), result.diagnostics.end(),
        [](const Diagnostic& d) { return d.severity == Severity::Error; });
    if (!failed) {
      ValidatedQuery q;
      q.ast_ = ast_;
      q.schema_ = &schema_;
      q.templates_ = std::move(templates_);
      q.outputs_ = std::move(outputs_);
      q.order_ = std::move(order_);
      result.query = std::move(q);
    }
    return result;
  }

 private:
  void error(std::string code, std::string message, const Position& pos) {
    diags_.push_back(make_error(std::move(code), std::move(message), pos,
                                std::string(source_)));
  }
  void warning(std::string code, std::string message, const Position& pos) {
    diags_.push_back(make_warning(std::move(code), std::move(message), pos,
                                  std::string(source_)));
  }

  void index_templates() {
    for (std::size_t i = 0; i < ast_->templates.size(); ++i) {
      const TemplateAst& t = ast_->templates[i];
      auto [it, inserted] = template_index_.emplace(t.identifier, i);
      if (!inserted) {
        error("dup-template",
              "duplicate template identifier \"" + t.identifier + "\"", t.ident_pos);
      }
    }
    // The VERSION filter is a closed expression; surface a division by zero
    // here rather than at run time.
    if (ast_->version.kind == VersionSelector::Kind::Filter) {
      check_closed_int(*ast_->version.rhs, Position{1, 1, 0});
    }
  }

  void check_closed_int(const NumExpr& e, const Position& pos) {
    try {
      e.eval_int();
    } catch (const EvalError&) {
      error("div-zero", "division by zero in constant expression", pos);
    }
  }
  void check_closed_float(const NumExpr& e, const Position& pos) {
    try {
      e.eval_float();
    } catch (const EvalError&) {
      error("div-zero", "division by zero in constant expression", pos);
    }
  }

  void resolve_templates() {
    templates_.reserve(ast_->templates.size());
    for (const TemplateAst& t : ast_->templates) {
      ResolvedTemplate rt;
      rt.ast = &t;
      rt.cls = schema_.find_class(t.type_name);
      if (!rt.cls) {
        error("unknown-type", "unknown type name \"" + t.type_name + "\"", t.type_pos);
      }
      if (t.restrictions) {
        for (const Conjunction& group : t.restrictions->groups) {
          std::vector<ResolvedMember> members;
          for (const Restriction& r : group) {
            if (auto member = resolve_member(t, r)) {
              members.push_back(*member);
            }
          }
          rt.groups.push_back(std::move(members));
        }
      }
      templates_.push_back(std::move(rt));
    }
  }

  std::optional<ResolvedMember> resolve_member(const TemplateAst& t, const Restriction& r) {
    ResolvedMember member;
    member.negated = r.negated;
    const ClassDef* cls = schema_.find_class(t.type_name);

    if (const auto* attr = std::get_if<AttrRestriction>(&r.body)) {
      if (!cls) return std::nullopt;  // already reported
      const AttrDef* def = schema_.find_attribute(cls->name, attr->name);
      if (!def) {
        std::string hint;
        if (std::holds_alternative<AttrExprEnum>(attr->expr) &&
            schema_.find_reference(cls->name, attr->name)) {
          const auto& lit = std::get<AttrExprEnum>(attr->expr).literal;
          hint = " (to reference a template named \"" + lit + "\", escape it as ^" +
                 lit + ")";
        }
        error("unknown-attr",
              "class \"" + cls->name + "\" has no attribute \"" + attr->name + "\"" + hint,
              attr->name_pos);
        return std::nullopt;
      }
      check_attr_expr(*def, *attr);
      member.body = ResolvedAttrRestriction{attr, def};
      return member;
    }

    const auto& ref = std::get<RefRestriction>(r.body);
    if (!cls) return std::nullopt;

    Schema::Relation relation;
    try {
      relation = schema_.resolve_relation(cls->name, ref.relation);
    } catch (const SchemaError&) {
      error("unknown-relation",
            "class \"" + cls->name + "\" has no reference or shortcut named \"" +
                ref.relation + "\"",
            ref.relation_pos);
      return std::nullopt;
    }

    const bool many = std::holds_alternative<const RefDef*>(relation)
                          ? std::get<const RefDef*>(relation)->many
                          : std::get<const ShortcutDef*>(relation)->many;
    const std::string& target_class =
        std::holds_alternative<const RefDef*>(relation)
            ? std::get<const RefDef*>(relation)->target
            : std::get<const ShortcutDef*>(relation)->target;

    if (many && !ref.quantifier) {
      error("quant-missing",
            "quantifier required: \"" + ref.relation + "\" has upper bound many",
            ref.relation_pos);
    }
    if (!many && ref.quantifier) {
      error("quant-superfluous",
            "no quantifier allowed: \"" + ref.relation + "\" has upper bound one",
            ref.relation_pos);
    }

    auto target_it = template_index_.find(ref.target);
    if (target_it == template_index_.end()) {
      error("tmpl-unresolved",
            "reference restriction names undeclared template \"" + ref.target + "\"",
            ref.target_pos);
      return std::nullopt;
    }
    const TemplateAst& target_tmpl = ast_->templates[target_it->second];
    if (const ClassDef* target_cls = schema_.find_class(target_tmpl.type_name)) {
      if (!schema_.is_subtype(target_cls->name, target_class)) {
        error("tmpl-type",
              "template \"" + ref.target + "\" has class \"" + target_cls->name +
                  "\" which is not \"" + target_class + "\" or a subtype",
              ref.target_pos);
      }
    }
    member.body = ResolvedRefRestriction{&ref, relation, target_it->second};
    return member;
  }

  void check_attr_expr(const AttrDef& def, const AttrRestriction& attr) {
    const auto mismatch = [&] {
      error("type-mismatch",
            "attribute \"" + def.name + "\" has type " +
                std::string(attr_type_name(def.type)) + " but the restriction is " +
                std::string(expr_kind_name(attr.expr)),
            attr.name_pos);
    };
    switch (def.type) {
      case AttrType::Bool:
        if (!std::holds_alternative<AttrExprBool>(attr.expr)) mismatch();
        break;
      case AttrType::String:
        if (!std::holds_alternative<AttrExprString>(attr.expr)) mismatch();
        break;
      case AttrType::Int:
        if (const auto* e = std::get_if<AttrExprInt>(&attr.expr)) {
          check_closed_int(*e->rhs, attr.name_pos);
        } else {
          mismatch();
        }
        break;
      case AttrType::Float:
        if (const auto* e = std::get_if<AttrExprFloat>(&attr.expr)) {
          check_closed_float(*e->rhs, attr.name_pos);
        } else {
          mismatch();
        }
        break;
      case AttrType::Date:
        if (!std::holds_alternative<AttrExprDate>(attr.expr)) mismatch();
        break;
      case AttrType::Enum: {
        const auto* e = std::get_if<AttrExprEnum>(&attr.expr);
        if (!e) {
          mismatch();
          break;
        }
        if (std::find(def.literals.begin(), def.literals.end(), e->literal) ==
            def.literals.end()) {
          error("enum-literal",
                "\"" + e->literal + "\" is not a literal of enum attribute \"" +
                    def.name + "\"",
                attr.name_pos);
        }
        break;
      }
    }
  }

  void resolve_outputs() {
    for (const OutputAst& o : ast_->outputs) {
      ResolvedOutput ro;
      ro.ast = &o;
      auto it = template_index_.find(o.identifier);
      if (it == template_index_.end()) {
        error("unknown-output",
              "OUTPUT names undeclared template \"" + o.identifier + "\"", o.ident_pos);
        continue;
      }
      ro.template_index = it->second;
      const ClassDef* cls = schema_.find_class(ast_->templates[it->second].type_name);
      if (!cls) {
        outputs_.push_back(std::move(ro));
        continue;
      }
      for (const OrderKey& key : o.order_by) {
        const AttrDef* def = schema_.find_attribute(cls->name, key.attribute);
        if (!def) {
          error("orderby-attr",
                "class \"" + cls->name + "\" has no attribute \"" + key.attribute +
                    "\" for ORDER_BY",
                key.pos);
          continue;
        }
        ro.order_by.emplace_back(def, key.ascending);
      }
      if (o.projection) {
        std::vector<const AttrDef*> proj;
        for (const ProjectedAttr& p : *o.projection) {
          const AttrDef* def = schema_.find_attribute(cls->name, p.name);
          if (!def) {
            error("projection-attr",
                  "class \"" + cls->name + "\" has no attribute \"" + p.name +
                      "\" for ATTRIBUTE",
                  p.pos);
            continue;
          }
          proj.push_back(def);
        }
        ro.projection = std::move(proj);
      }
      outputs_.push_back(std::move(ro));
    }
  }

  // Kahn's algorithm, picking the declaration-earliest ready template so the
  // order is deterministic. A leftover means a reference cycle (self-cycles
  // included, since a template depending on itself is never ready).
  void order_templates() {
    const std::size_t n = ast_->templates.size();
    std::vector<std::set<std::size_t>> deps(n);
    for (std::size_t i = 0; i < templates_.size(); ++i) {
      for (const auto& group : templates_[i].groups) {
        for (const ResolvedMember& m : group) {
          if (const auto* ref = std::get_if<ResolvedRefRestriction>(&m.body)) {
            deps[i].insert(ref->target_template);
          }
        }
      }
    }

    std::vector<bool> done(n, false);
    for (;;) {
      bool progressed = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        const bool ready = std::all_of(deps[i].begin(), deps[i].end(),
                                       [&](std::size_t d) { return done[d]; });
        if (ready) {
          order_.push_back(i);
          done[i] = true;
          progressed = true;
          break;  // restart scan to keep declaration-order tie-breaking
        }
      }
      if (!progressed) break;
    }
    if (order_.size() != n) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!done[i]) {
          error("tmpl-cycle",
                "template \"" + ast_->templates[i].identifier +
                    "\" is part of a reference cycle",
                ast_->templates[i].ident_pos);
        }
      }
    }
  }

  void mark_unused() {
    std::set<std::size_t> used;
    for (const ResolvedOutput& o : outputs_) used.insert(o.template_index);
    for (const ResolvedTemplate& t : templates_) {
      for (const auto& group : t.groups) {
        for (const ResolvedMember& m : group) {
          if (const auto* ref = std::get_if<ResolvedRefRestriction>(&m.body)) {
            used.insert(ref->target_template);
          }
        }
      }
    }
    for (std::size_t i = 0; i < ast_->templates.size(); ++i) {
      if (!used.contains(i)) {
        warning("unused-template",
                "template \"" + ast_->templates[i].identifier +
                    "\" is never output and never referenced",
                ast_->templates[i].ident_pos);
      }
    }
  }

  std::shared_ptr<const QueryAst> ast_;
  const Schema& schema_;
  std::string_view source_;
  std::vector<Diagnostic> diags_;
  std::map<std::string, std::size_t, std::less<>> template_index_;
  std::vector<ResolvedTemplate> templates_;
  std::vector<ResolvedOutput> outputs_;
  std::vector<std::size_t> order_;
};

ValidationResult validate_query(std::shared_ptr<const QueryAst> ast, const Schema& schema,
                                std::string_view source_name) {
  return Validator(std::move(ast), schema, source_name).run();
}

ValidationResult validate_query(QueryAst ast, const Schema& schema,
                                std::string_view source_name) {
  return validate_query(std::make_shared<const QueryAst>(std::move(ast)), schema,
                        source_name);
}

std::vector<std::string> template_order(const ValidatedQuery& query) {
  std::vector<std::string> out;
  for (std::size_t i : query.evaluation_order()) {
    out.push_back(query.templates()[i].ast->identifier);
  }
  return out;
}

}  // namespace aiql

// Brute-force reference evaluator. Everything here is intentionally
// re-derived from first principles: no evaluation order, no memoization,
// no compiled matchers, no shared predicate code with evaluator.cpp.
// Referenced match sets are recomputed by full re-enumeration every time
// they are needed.

#include <algorithm>
#include <regex>

#include "aiql/evaluator.hpp"

namespace aiql {

namespace {

class Oracle {
 public:
  Oracle(const ValidatedQuery& query, const VersionSnapshot& snapshot,
         const Schema& schema)
      : query_(query), snapshot_(snapshot), schema_(schema) {}

  MatchSets run() {
    MatchSets out;
    out.version = snapshot_.index;
    for (const ResolvedTemplate& t : query_.templates()) {
      out.sets.emplace(t.ast->identifier, match_set(t.ast->identifier));
    }
    return out;
  }

 private:
  const TemplateAst& template_named(const std::string& identifier) const {
    for (const TemplateAst& t : query_.ast().templates) {
      if (t.identifier == identifier) return t;
    }
    throw std::logic_error("oracle: unknown template " + identifier);
  }

  bool instance_of(const ModelElement& e, const std::string& cls) const {
    // Walk the declared supertype chain directly.
    const ClassDef* cur = schema_.find_class(e.class_name);
    while (cur) {
      if (cur->name == cls) return true;
      cur = cur->supertype ? schema_.find_class(*cur->supertype) : nullptr;
    }
    return false;
  }

  std::vector<const ModelElement*> match_set(const std::string& identifier) const {
    const TemplateAst& t = template_named(identifier);
    std::vector<const ModelElement*> out;
    for (const auto& [id, element] : snapshot_.elements) {
      if (instance_of(element, t.type_name) && satisfies(t, element)) {
        out.push_back(&element);
      }
    }
    std::sort(out.begin(), out.end(),
              [](const ModelElement* a, const ModelElement* b) { return a->id < b->id; });
    return out;
  }

  bool satisfies(const TemplateAst& t, const ModelElement& e) const {
    if (!t.restrictions) return true;
    for (const Conjunction& group : t.restrictions->groups) {
      bool all = true;
      for (const Restriction& r : group) {
        bool holds = false;
        if (const auto* attr = std::get_if<AttrRestriction>(&r.body)) {
          holds = attr_holds(*attr, e);
        } else {
          holds = ref_holds(std::get<RefRestriction>(r.body), t, e);
        }
        if (r.negated) holds = !holds;
        if (!holds) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
    return false;
  }

  bool attr_holds(const AttrRestriction& attr, const ModelElement& e) const {
    const auto it = e.attributes.find(attr.name);
    if (it == e.attributes.end()) return false;
    const AttrValue& value = it->second;
    if (std::holds_alternative<std::monostate>(value)) return false;

    if (const auto* b = std::get_if<AttrExprBool>(&attr.expr)) {
      return std::get<bool>(value) == b->value;
    }
    if (const auto* s = std::get_if<AttrExprString>(&attr.expr)) {
      const std::regex re(s->pattern, std::regex::ECMAScript);
      return std::regex_match(std::get<std::string>(value), re);
    }
    if (const auto* i = std::get_if<AttrExprInt>(&attr.expr)) {
      return compare_int(i->op, std::get<std::int64_t>(value), eval_int(*i->rhs));
    }
    if (const auto* f = std::get_if<AttrExprFloat>(&attr.expr)) {
      return compare_float(f->op, std::get<double>(value), eval_float(*f->rhs));
    }
    if (const auto* d = std::get_if<AttrExprDate>(&attr.expr)) {
      return compare_int(d->op, std::get<DateTime>(value).seconds, d->value.seconds);
    }
    return std::get<EnumVal>(value).name == std::get<AttrExprEnum>(attr.expr).literal;
  }

  static bool compare_int(CompareOp op, std::int64_t a, std::int64_t b) {
    switch (op) {
      case CompareOp::Le: return a <= b;
      case CompareOp::Lt: return a < b;
      case CompareOp::Eq: return a == b;
      case CompareOp::Gt: return a > b;
      case CompareOp::Ge: return a >= b;
    }
    return false;
  }

  static bool compare_float(CompareOp op, double a, double b) {
    switch (op) {
      case CompareOp::Le: return a <= b;
      case CompareOp::Lt: return a < b;
      case CompareOp::Eq: return a == b;
      case CompareOp::Gt: return a > b;
      case CompareOp::Ge: return a >= b;
    }
    return false;
  }

  static std::int64_t eval_int(const NumExpr& e) {
    switch (e.kind) {
      case NumExpr::Kind::IntLit: return e.int_value;
      case NumExpr::Kind::FloatLit: return static_cast<std::int64_t>(e.float_value);
      case NumExpr::Kind::Group: return eval_int(*e.rhs);
      case NumExpr::Kind::BinOp: {
        const std::int64_t a = eval_int(*e.lhs), b = eval_int(*e.rhs);
        switch (e.op) {
          case '+': return a + b;
          case '-': return a - b;
          case '*': return a * b;
          case '/': return a / b;  // div-zero rejected by validation
        }
        return 0;
      }
    }
    return 0;
  }

  static double eval_float(const NumExpr& e) {
    switch (e.kind) {
      case NumExpr::Kind::IntLit: return static_cast<double>(e.int_value);
      case NumExpr::Kind::FloatLit: return e.float_value;
      case NumExpr::Kind::Group: return eval_float(*e.rhs);
      case NumExpr::Kind::BinOp: {
        const double a = eval_float(*e.lhs), b = eval_float(*e.rhs);
        switch (e.op) {
          case '+': return a + b;
          case '-': return a - b;
          case '*': return a * b;
          case '/': return a / b;
        }
        return 0.0;
      }
    }
    return 0.0;
  }

  std::vector<const ModelElement*> reference_targets(const ModelElement& e,
                                                     const std::string& name) const {
    std::vector<const ModelElement*> out;
    const auto it = e.references.find(name);
    if (it == e.references.end()) return out;
    for (const std::string& id : it->second) {
      if (const ModelElement* target = snapshot_.find(id)) out.push_back(target);
    }
    return out;
  }

  bool ref_holds(const RefRestriction& ref, const TemplateAst& owner,
                 const ModelElement& e) const {
    // Re-resolve the relation name against the schema each time.
    const ShortcutDef* shortcut = nullptr;
    bool is_reference = false;
    for (const RefDef* r : schema_.all_references(owner.type_name)) {
      if (r->name == ref.relation) is_reference = true;
    }
    if (!is_reference) {
      for (const ShortcutDef& s : schema_.shortcuts()) {
        if (s.name == ref.relation && instance_of_class(owner.type_name, s.source)) {
          shortcut = &s;
        }
      }
    }

    // Distinct endpoints reachable along the relation.
    std::vector<const ModelElement*> targets;
    if (is_reference) {
      targets = reference_targets(e, ref.relation);
    } else if (shortcut) {
      std::vector<const ModelElement*> frontier{&e};
      for (const std::string& step : shortcut->path) {
        std::vector<const ModelElement*> next;
        for (const ModelElement* cur : frontier) {
          for (const ModelElement* t : reference_targets(*cur, step)) {
            if (std::find(next.begin(), next.end(), t) == next.end()) next.push_back(t);
          }
        }
        frontier = std::move(next);
      }
      targets = std::move(frontier);
    }

    // Referenced match set, recomputed from scratch.
    const std::vector<const ModelElement*> referenced = match_set(ref.target);
    const auto in_referenced = [&](const ModelElement* t) {
      return std::find(referenced.begin(), referenced.end(), t) != referenced.end();
    };

    if (!ref.quantifier) {
      return targets.size() == 1 && in_referenced(targets[0]);
    }

    std::size_t matching = 0;
    for (const ModelElement* t : targets) {
      if (in_referenced(t)) ++matching;
    }
    switch (ref.quantifier->kind) {
      case Quantifier::Kind::Exists:
        return matching >= 1;
      case Quantifier::Kind::ForAll:
        return matching == targets.size();
      case Quantifier::Kind::Count:
        return static_cast<std::int64_t>(matching) == ref.quantifier->low;
      case Quantifier::Kind::Range:
        return ref.quantifier->low <= static_cast<std::int64_t>(matching) &&
               static_cast<std::int64_t>(matching) <= ref.quantifier->high;
    }
    return false;
  }

  bool instance_of_class(const std::string& cls, const std::string& ancestor) const {
    const ClassDef* cur = schema_.find_class(cls);
    while (cur) {
      if (cur->name == ancestor) return true;
      cur = cur->supertype ? schema_.find_class(*cur->supertype) : nullptr;
    }
    return false;
  }

  const ValidatedQuery& query_;
  const VersionSnapshot& snapshot_;
  const Schema& schema_;
};

}  // namespace

QueryResult oracle_evaluate(const ValidatedQuery& query, const VersionedModel& model,
                            const Schema& schema) {
  const std::vector<int> versions =
      select_versions(query.ast().version, model.version_count());
  QueryResult result;
  for (int v : versions) {
    result.per_version.push_back(Oracle(query, model.snapshot(v), schema).run());
  }
  return result;
}

}  // namespace aiql

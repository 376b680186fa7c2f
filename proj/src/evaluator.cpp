#include "aiql/evaluator.hpp"

#include <unordered_set>

namespace aiql {

bool eval_attr_expr(const AttrValue& value, const AttrExpr& expr) {
  if (const auto* b = std::get_if<AttrExprBool>(&expr)) {
    return std::get<bool>(value) == b->value;
  }
  if (const auto* s = std::get_if<AttrExprString>(&expr)) {
    return s->matcher->matches(std::get<std::string>(value));
  }
  if (const auto* i = std::get_if<AttrExprInt>(&expr)) {
    return apply_compare<std::int64_t>(i->op, std::get<std::int64_t>(value),
                                       i->rhs->eval_int());
  }
  if (const auto* f = std::get_if<AttrExprFloat>(&expr)) {
    return apply_compare<double>(f->op, std::get<double>(value), f->rhs->eval_float());
  }
  if (const auto* d = std::get_if<AttrExprDate>(&expr)) {
    return apply_compare<DateTime>(d->op, std::get<DateTime>(value), d->value);
  }
  const auto& e = std::get<AttrExprEnum>(expr);
  return std::get<EnumVal>(value).name == e.literal;
}

namespace {

using ElementSet = std::unordered_set<const ModelElement*>;

class SnapshotEvaluator {
 public:
  SnapshotEvaluator(const ValidatedQuery& query, const VersionSnapshot& snapshot,
                    const Schema& schema)
      : query_(query), snapshot_(snapshot), schema_(schema) {}

  MatchSets run() {
    const std::size_t n = query_.templates().size();
    matched_.resize(n);
    member_sets_.resize(n);
    for (std::size_t index : query_.evaluation_order()) {
      evaluate_template(index);
    }
    MatchSets out;
    out.version = snapshot_.index;
    for (std::size_t i = 0; i < n; ++i) {
      out.sets.emplace(query_.templates()[i].ast->identifier, std::move(matched_[i]));
    }
    return out;
  }

 private:
  void evaluate_template(std::size_t index) {
    const ResolvedTemplate& t = query_.templates()[index];
    std::vector<const ModelElement*>& matched = matched_[index];
    for (const ModelElement* e : elements_of_type(snapshot_, t.cls->name, schema_)) {
      if (matches(t, *e)) matched.push_back(e);  // extent is id-ordered
    }
    member_sets_[index] = ElementSet(matched.begin(), matched.end());
  }

  bool matches(const ResolvedTemplate& t, const ModelElement& e) const {
    if (t.groups.empty()) return true;  // no RESTRICTIONS block
    for (const auto& group : t.groups) {
      bool all = true;
      for (const ResolvedMember& m : group) {
        const bool holds = member_holds(m, e);
        if (m.negated == holds) {  // negated XOR holds == false
          all = false;
          break;
        }
      }
      if (all) return true;
    }
    return false;
  }

  bool member_holds(const ResolvedMember& m, const ModelElement& e) const {
    if (const auto* attr = std::get_if<ResolvedAttrRestriction>(&m.body)) {
      const auto it = e.attributes.find(attr->def->name);
      if (it == e.attributes.end()) return false;
      if (std::holds_alternative<std::monostate>(it->second)) return false;  // null
      return eval_attr_expr(it->second, attr->ast->expr);
    }

    const auto& ref = std::get<ResolvedRefRestriction>(m.body);
    const ElementSet& target_set = member_sets_[ref.target_template];

    std::vector<const ModelElement*> targets;
    if (const auto* const* rd = std::get_if<const RefDef*>(&ref.relation)) {
      collect_targets(e, (*rd)->name, targets);
    } else {
      const ShortcutDef& sc = *std::get<const ShortcutDef*>(ref.relation);
      ElementSet frontier{&e};
      for (const std::string& step : sc.path) {
        ElementSet next;
        for (const ModelElement* cur : frontier) {
          std::vector<const ModelElement*> step_targets;
          collect_targets(*cur, step, step_targets);
          next.insert(step_targets.begin(), step_targets.end());
        }
        frontier = std::move(next);
      }
      targets.assign(frontier.begin(), frontier.end());
    }

    if (!ref.ast->quantifier) {
      // upper bound one: the target must exist and must match.
      return targets.size() == 1 && target_set.contains(targets[0]);
    }

    std::size_t matching = 0;
    for (const ModelElement* t : targets) {
      if (target_set.contains(t)) ++matching;
    }
    const Quantifier& q = *ref.ast->quantifier;
    switch (q.kind) {
      case Quantifier::Kind::Exists:
        return matching >= 1;
      case Quantifier::Kind::ForAll:
        return matching == targets.size();  // vacuously true when empty
      case Quantifier::Kind::Count:
        return static_cast<std::int64_t>(matching) == q.low;
      case Quantifier::Kind::Range:
        return q.low <= static_cast<std::int64_t>(matching) &&
               static_cast<std::int64_t>(matching) <= q.high;
    }
    return false;
  }

  void collect_targets(const ModelElement& e, const std::string& ref_name,
                       std::vector<const ModelElement*>& out) const {
    const auto it = e.references.find(ref_name);
    if (it == e.references.end()) return;
    for (const std::string& id : it->second) {
      if (const ModelElement* target = snapshot_.find(id)) out.push_back(target);
    }
  }

  const ValidatedQuery& query_;
  const VersionSnapshot& snapshot_;
  const Schema& schema_;
  std::vector<std::vector<const ModelElement*>> matched_;
  std::vector<ElementSet> member_sets_;
};

}  // namespace

QueryResult evaluate(const ValidatedQuery& query, const VersionedModel& model,
                     const Schema& schema) {
  const std::vector<int> versions =
      select_versions(query.ast().version, model.version_count());
  QueryResult result;
  for (int v : versions) {
    result.per_version.push_back(
        SnapshotEvaluator(query, model.snapshot(v), schema).run());
  }
  return result;
}

bool results_equal(const QueryResult& a, const QueryResult& b) {
  if (a.per_version.size() != b.per_version.size()) return false;
  for (std::size_t v = 0; v < a.per_version.size(); ++v) {
    const MatchSets& ma = a.per_version[v];
    const MatchSets& mb = b.per_version[v];
    if (ma.version != mb.version || ma.sets.size() != mb.sets.size()) return false;
    auto ib = mb.sets.begin();
    for (const auto& [id, elems] : ma.sets) {
      if (ib->first != id || ib->second.size() != elems.size()) return false;
      for (std::size_t i = 0; i < elems.size(); ++i) {
        // Compare by element id: the two results may come from evaluators
        // holding pointers into the same snapshot, but ids are the contract.
        if (elems[i]->id != ib->second[i]->id) return false;
      }
      ++ib;
    }
  }
  return true;
}

}  // namespace aiql

#pragma once

#include <map>
#include <string>
#include <vector>

#include "aiql/model.hpp"
#include "aiql/validator.hpp"

namespace aiql {

/// Per-version match sets: template identifier -> elements ordered by id.
struct MatchSets {
  int version = 0;
  std::map<std::string, std::vector<const ModelElement*>> sets;
};

struct QueryResult {
  std::vector<MatchSets> per_version;  // ascending version index
};

/// Executes a validated query over a model: per selected version, templates
/// are evaluated in dependency order with memoized match sets. Throws
/// EvalError when the VERSION filter selects nothing.
QueryResult evaluate(const ValidatedQuery& query, const VersionedModel& model,
                     const Schema& schema);

/// True iff a non-null attribute value satisfies the expression. The value
/// type is assumed to match the expression type (guaranteed by validation).
bool eval_attr_expr(const AttrValue& value, const AttrExpr& expr);

/// Independent brute-force evaluator with the same contract as evaluate():
/// no evaluation order, no memoization, no indexing; referenced match sets
/// are recomputed by full re-enumeration. Exists to check evaluate() and is
/// kept free of shared matching code.
QueryResult oracle_evaluate(const ValidatedQuery& query, const VersionedModel& model,
                            const Schema& schema);

bool results_equal(const QueryResult& a, const QueryResult& b);

}  // namespace aiql

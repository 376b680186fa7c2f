#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aiql/evaluator.hpp"

namespace aiql {

struct SerializeOptions {
  bool compact = false;
};

/// Marshals a query result into JSON. A single selected version renders as
/// one array per OUTPUT directive inside a top-level array; several selected
/// versions render as [{"version": i, "results": ...}, ...]. Byte-
/// deterministic for identical inputs.
std::string serialize(const QueryResult& result, const ValidatedQuery& query,
                      const Schema& schema, SerializeOptions options = {});

/// Stable sort by the given keys (ascending flag per key); null values sort
/// before non-null under ASC and after under DESC; ties fall back to the
/// element id, ascending.
std::vector<const ModelElement*> sort_elements(
    std::vector<const ModelElement*> elements,
    const std::vector<std::pair<const AttrDef*, bool>>& order_by);

}  // namespace aiql

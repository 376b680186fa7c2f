#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aiql/schema.hpp"

namespace aiql {

/// Context-sensitive continuation proposals for a partial query. When the
/// buffer ends in the middle of a word, proposals are filtered by that
/// prefix (e.g. "LIST Tech" proposes "TechnicalComponent"). Name positions
/// draw from the schema: class names after LIST, attribute/reference/
/// shortcut names of the template's class inside RESTRICTIONS, declared
/// template identifiers after OUTPUT. Sorted, duplicate-free.
std::vector<std::string> complete_proposals(std::string_view buffer, const Schema& schema);

/// True when the buffer is a prefix of some syntactically valid query (or a
/// complete query). Backs the invariant that accepting any proposal never
/// introduces a parse error.
bool is_viable_prefix(std::string_view buffer, const Schema& schema);

}  // namespace aiql

#pragma once

#include <string>
#include <string_view>

#include "aiql/ast.hpp"

namespace aiql {

/// Parses AIQL text into a QueryAst. Throws SyntaxError with the position
/// and an expected-token hint on the first error.
QueryAst parse_query(std::string_view text, std::string_view source_name = "");

/// Canonical pretty-printer; parse(format_query(ast)) equals ast.
std::string format_query(const QueryAst& ast);

}  // namespace aiql

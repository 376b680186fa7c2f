#pragma once

#include <string>
#include <string_view>

namespace aiql {

/// Quantitative query characteristics. Identifiers, strings and numeric
/// literals count as one character each; only syntactically required
/// single spaces count; comments never count.
struct QueryMetrics {
  int query_count = 1;
  int output_count = 0;
  int char_count = 0;
  int keyword_total = 0;
  int keyword_unique = 0;

  bool operator==(const QueryMetrics&) const = default;
};

/// Measures a query document. The text must parse; parse errors propagate.
QueryMetrics query_metrics(std::string_view text, std::string_view source_name = "");

}  // namespace aiql

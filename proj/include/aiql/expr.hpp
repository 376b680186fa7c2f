#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "aiql/diag.hpp"

namespace aiql {

enum class CompareOp { Le, Lt, Eq, Gt, Ge };

std::string_view compare_op_text(CompareOp op);

template <typename T>
bool apply_compare(CompareOp op, const T& lhs, const T& rhs) {
  switch (op) {
    case CompareOp::Le: return lhs <= rhs;
    case CompareOp::Lt: return lhs < rhs;
    case CompareOp::Eq: return lhs == rhs;
    case CompareOp::Gt: return lhs > rhs;
    case CompareOp::Ge: return lhs >= rhs;
  }
  return false;
}

/// Closed arithmetic expression tree (no variables). Literal nodes keep their
/// exact source lexeme so the pretty-printer round-trips faithfully.
struct NumExpr {
  enum class Kind { IntLit, FloatLit, Group, BinOp };

  Kind kind = Kind::IntLit;
  std::string lexeme;  // literals only, sign included
  std::int64_t int_value = 0;
  double float_value = 0.0;
  char op = 0;  // + - * /  (BinOp only)
  std::shared_ptr<const NumExpr> lhs;
  std::shared_ptr<const NumExpr> rhs;  // BinOp rhs, or Group inner

  bool contains_float() const;
  /// Evaluates the closed expression. Throws EvalError on division by zero.
  std::int64_t eval_int() const;
  double eval_float() const;
  std::string text() const;

  static std::shared_ptr<const NumExpr> int_lit(std::int64_t v);
};

bool num_expr_equal(const NumExpr& a, const NumExpr& b);

/// Calendar date-time with second precision, no time zone.
struct DateTime {
  std::int64_t seconds = 0;  // since 1970-01-01T00:00:00

  auto operator<=>(const DateTime&) const = default;

  /// Renders "YYYY-MM-DDThh:mm:ss".
  std::string iso() const;
  /// Parses strict "YYYY-MM-DDThh:mm:ss"; rejects out-of-range fields.
  static bool parse(std::string_view text, DateTime& out);
};

struct VersionSelector {
  enum class Kind { First, Last, Filter };

  Kind kind = Kind::Last;
  CompareOp op = CompareOp::Eq;          // Filter only
  std::shared_ptr<const NumExpr> rhs;    // Filter only, integer arithmetic

  bool operator==(const VersionSelector& other) const;
};

}  // namespace aiql

#include "aiql/expr.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace aiql {

std::string_view compare_op_text(CompareOp op) {
  switch (op) {
    case CompareOp::Le: return "<=";
    case CompareOp::Lt: return "<";
    case CompareOp::Eq: return "=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
  }
  return "?";
}

bool NumExpr::contains_float() const {
  switch (kind) {
    case Kind::FloatLit: return true;
    case Kind::IntLit: return false;
    case Kind::Group: return rhs->contains_float();
    case Kind::BinOp: return lhs->contains_float() || rhs->contains_float();
  }
  return false;
}

namespace {

[[noreturn]] void throw_div_zero() {
  throw EvalError(make_error("div-zero", "division by zero in arithmetic expression"));
}

// Wrapping arithmetic keeps overflow defined; query constants are small in
// practice so the exact wrap behavior never matters.
std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
}

}  // namespace

std::int64_t NumExpr::eval_int() const {
  switch (kind) {
    case Kind::IntLit: return int_value;
    case Kind::FloatLit: return static_cast<std::int64_t>(float_value);
    case Kind::Group: return rhs->eval_int();
    case Kind::BinOp: {
      const std::int64_t a = lhs->eval_int();
      const std::int64_t b = rhs->eval_int();
      switch (op) {
        case '+': return wrap_add(a, b);
        case '-': return wrap_sub(a, b);
        case '*': return wrap_mul(a, b);
        case '/':
          if (b == 0) throw_div_zero();
          if (a == INT64_MIN && b == -1) return INT64_MIN;  // wraps
          return a / b;
      }
      return 0;
    }
  }
  return 0;
}

double NumExpr::eval_float() const {
  switch (kind) {
    case Kind::IntLit: return static_cast<double>(int_value);
    case Kind::FloatLit: return float_value;
    case Kind::Group: return rhs->eval_float();
    case Kind::BinOp: {
      const double a = lhs->eval_float();
      const double b = rhs->eval_float();
      switch (op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/':
          if (b == 0.0) throw_div_zero();
          return a / b;
      }
      return 0.0;
    }
  }
  return 0.0;
}

std::string NumExpr::text() const {
  switch (kind) {
    case Kind::IntLit:
    case Kind::FloatLit:
      return lexeme;
    case Kind::Group:
      return "(" + rhs->text() + ")";
    case Kind::BinOp:
      return lhs->text() + " " + std::string(1, op) + " " + rhs->text();
  }
  return "";
}

std::shared_ptr<const NumExpr> NumExpr::int_lit(std::int64_t v) {
  auto e = std::make_shared<NumExpr>();
  e->kind = Kind::IntLit;
  e->int_value = v;
  e->lexeme = std::to_string(v);
  return e;
}

bool num_expr_equal(const NumExpr& a, const NumExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NumExpr::Kind::IntLit:
    case NumExpr::Kind::FloatLit:
      return a.lexeme == b.lexeme;
    case NumExpr::Kind::Group:
      return num_expr_equal(*a.rhs, *b.rhs);
    case NumExpr::Kind::BinOp:
      return a.op == b.op && num_expr_equal(*a.lhs, *b.lhs) &&
             num_expr_equal(*a.rhs, *b.rhs);
  }
  return false;
}

namespace {

// Civil-calendar conversion (proleptic Gregorian), no time zone.
std::int64_t days_from_civil(std::int64_t y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y += (m <= 2);
}

bool is_leap(std::int64_t y) {
  return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

int days_in_month(std::int64_t y, int m) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return kDays[static_cast<std::size_t>(m - 1)];
}

bool all_digits(std::string_view s) {
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return !s.empty();
}

int to_int(std::string_view s) {
  int v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

}  // namespace

std::string DateTime::iso() const {
  const std::int64_t days = seconds >= 0 ? seconds / 86400
                                         : (seconds - 86399) / 86400;
  const int rem = static_cast<int>(seconds - days * 86400);  // 0..86399
  std::int64_t y;
  int m, d;
  civil_from_days(days, y, m, d);
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%04lld-%02d-%02dT%02d:%02d:%02d",
                static_cast<long long>(y), m, d, rem / 3600, (rem % 3600) / 60,
                rem % 60);
  return buf;
}

bool DateTime::parse(std::string_view text, DateTime& out) {
  // YYYY-MM-DDThh:mm:ss
  if (text.size() != 19) return false;
  if (text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':' ||
      text[16] != ':') {
    return false;
  }
  const auto year_s = text.substr(0, 4), mon_s = text.substr(5, 2),
             day_s = text.substr(8, 2), hour_s = text.substr(11, 2),
             min_s = text.substr(14, 2), sec_s = text.substr(17, 2);
  if (!all_digits(year_s) || !all_digits(mon_s) || !all_digits(day_s) ||
      !all_digits(hour_s) || !all_digits(min_s) || !all_digits(sec_s)) {
    return false;
  }
  const int year = to_int(year_s), mon = to_int(mon_s), day = to_int(day_s);
  const int hour = to_int(hour_s), min = to_int(min_s), sec = to_int(sec_s);
  if (mon < 1 || mon > 12) return false;
  if (day < 1 || day > days_in_month(year, mon)) return false;
  if (hour > 23 || min > 59 || sec > 59) return false;
  out.seconds = days_from_civil(year, mon, day) * 86400 +
                static_cast<std::int64_t>(hour) * 3600 + min * 60 + sec;
  return true;
}

bool VersionSelector::operator==(const VersionSelector& other) const {
  if (kind != other.kind) return false;
  if (kind != Kind::Filter) return true;
  return op == other.op && num_expr_equal(*rhs, *other.rhs);
}

}  // namespace aiql

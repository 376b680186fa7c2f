#include "aiql/strmatch.hpp"

#include <regex>

namespace aiql {

struct StringMatcher::Impl {
  std::regex re;
};

StringMatcher::StringMatcher() = default;
StringMatcher::~StringMatcher() = default;

namespace {

bool is_plain_literal(std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '.': case '^': case '$': case '|': case '(': case ')':
      case '[': case ']': case '{': case '}': case '*': case '+':
      case '?': case '\\':
        return false;
      default:
        break;
    }
  }
  return true;
}

bool starts_with_any(std::string_view s) { return s.substr(0, 2) == ".*"; }

}  // namespace

std::shared_ptr<const StringMatcher> StringMatcher::compile(const std::string& pattern,
                                                            std::string& error) {
  auto m = std::shared_ptr<StringMatcher>(new StringMatcher());
  m->pattern_ = pattern;

  std::string_view p = pattern;
  const bool any_front = starts_with_any(p);
  const bool any_back = p.size() >= 2 && p.substr(p.size() - 2) == ".*";
  std::string_view core = p;
  if (any_front) core.remove_prefix(2);
  if (any_back && core.size() >= 2) core.remove_suffix(2);

  if (is_plain_literal(p)) {
    m->mode_ = Mode::Literal;
    m->literal_ = pattern;
    return m;
  }
  if (is_plain_literal(core) && (any_front || any_back)) {
    m->literal_ = std::string(core);
    if (any_front && any_back) {
      m->mode_ = Mode::Contains;
    } else if (any_front) {
      m->mode_ = Mode::Suffix;
    } else {
      m->mode_ = Mode::Prefix;
    }
    return m;
  }

  m->mode_ = Mode::Regex;
  m->impl_ = std::make_unique<Impl>();
  try {
    m->impl_->re.assign(pattern, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    error = e.what();
    return nullptr;
  }
  return m;
}

bool StringMatcher::matches(std::string_view value) const {
  switch (mode_) {
    case Mode::Literal:
      return value == literal_;
    case Mode::Prefix:
      return value.size() >= literal_.size() &&
             value.substr(0, literal_.size()) == literal_;
    case Mode::Suffix:
      return value.size() >= literal_.size() &&
             value.substr(value.size() - literal_.size()) == literal_;
    case Mode::Contains:
      return value.find(literal_) != std::string_view::npos;
    case Mode::Regex:
      return std::regex_match(value.begin(), value.end(), impl_->re);
  }
  return false;
}

}  // namespace aiql

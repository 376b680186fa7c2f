#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace aiql {

/// Whole-string regular expression matcher. Patterns without metacharacters
/// and the common `.*` prefix/suffix forms skip the regex engine entirely,
/// which keeps attribute scans cheap on large models.
class StringMatcher {
 public:
  /// Compiles `pattern` (ECMAScript dialect, full-match semantics).
  /// Returns nullptr and fills `error` if the pattern does not compile.
  static std::shared_ptr<const StringMatcher> compile(const std::string& pattern,
                                                      std::string& error);

  bool matches(std::string_view value) const;
  const std::string& pattern() const { return pattern_; }

  ~StringMatcher();
  StringMatcher(const StringMatcher&) = delete;
  StringMatcher& operator=(const StringMatcher&) = delete;

 private:
  StringMatcher();

  enum class Mode { Literal, Prefix, Suffix, Contains, Regex };

  Mode mode_ = Mode::Literal;
  std::string pattern_;
  std::string literal_;  // the literal part for the fast modes
  struct Impl;
  std::unique_ptr<Impl> impl_;  // compiled regex, Mode::Regex only
};

}  // namespace aiql

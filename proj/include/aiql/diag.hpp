#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aiql {

/// 1-based line/column position inside a source text.
struct Position {
  int line = 1;
  int column = 1;
  std::size_t offset = 0;

  bool operator==(const Position&) const = default;
};

enum class Severity { Error, Warning };

/// A single diagnostic message. `source` names the file (or "<input>"),
/// `pos` is absent for findings that have no textual location, e.g.
/// conformance errors inside a JSON model document.
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  std::optional<Position> pos;
  std::string source;

  std::string render() const;
};

std::string render_diagnostics(const std::vector<Diagnostic>& diags);

/// Base for all user-facing failures. Carries structured diagnostics so the
/// CLI can print them uniformly and tests can assert on codes.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, std::vector<Diagnostic> diags)
      : std::runtime_error(render_diagnostics(diags)),
        kind_(std::move(kind)),
        diagnostics_(std::move(diags)) {}

  Error(std::string kind, Diagnostic diag)
      : Error(std::move(kind), std::vector<Diagnostic>{std::move(diag)}) {}

  const std::string& kind() const { return kind_; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::string kind_;
  std::vector<Diagnostic> diagnostics_;
};

/// Lexical or grammatical error in query text. Always exactly one diagnostic.
class SyntaxError : public Error {
 public:
  explicit SyntaxError(Diagnostic diag) : Error("syntax", std::move(diag)) {}
};

/// Schema document failed to load or violates a meta-model invariant.
class SchemaError : public Error {
 public:
  explicit SchemaError(std::vector<Diagnostic> diags)
      : Error("schema", std::move(diags)) {}
  explicit SchemaError(Diagnostic diag) : Error("schema", std::move(diag)) {}
};

/// Model document failed to load or does not conform to the schema.
class ModelError : public Error {
 public:
  explicit ModelError(std::vector<Diagnostic> diags)
      : Error("model", std::move(diags)) {}
  explicit ModelError(Diagnostic diag) : Error("model", std::move(diag)) {}
};

/// Runtime query failure, e.g. a VERSION filter that selects no version.
class EvalError : public Error {
 public:
  explicit EvalError(Diagnostic diag) : Error("eval", std::move(diag)) {}
};

/// File-system level failure (unreadable file, missing path).
class IoError : public Error {
 public:
  explicit IoError(Diagnostic diag) : Error("io", std::move(diag)) {}
};

inline Diagnostic make_error(std::string code, std::string message,
                             std::optional<Position> pos = std::nullopt,
                             std::string source = "") {
  return Diagnostic{Severity::Error, std::move(code), std::move(message),
                    pos, std::move(source)};
}

inline Diagnostic make_warning(std::string code, std::string message,
                               std::optional<Position> pos = std::nullopt,
                               std::string source = "") {
  return Diagnostic{Severity::Warning, std::move(code), std::move(message),
                    pos, std::move(source)};
}

}  // namespace aiql

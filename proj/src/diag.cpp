#include "aiql/diag.hpp"

#include <sstream>

namespace aiql {

std::string Diagnostic::render() const {
  std::ostringstream out;
  out << (severity == Severity::Error ? "error" : "warning") << " ";
  out << (source.empty() ? "<input>" : source);
  if (pos) {
    out << ":" << pos->line << ":" << pos->column;
  }
  out << " " << code << " " << message;
  return out.str();
}

std::string render_diagnostics(const std::vector<Diagnostic>& diags) {
  std::string out;
  for (std::size_t i = 0; i < diags.size(); ++i) {
    if (i != 0) out += "\n";
    out += diags[i].render();
  }
  return out;
}

}  // namespace aiql

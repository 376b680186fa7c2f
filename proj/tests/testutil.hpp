#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "aiql/model.hpp"
#include "aiql/parser.hpp"
#include "aiql/schema.hpp"
#include "aiql/validator.hpp"

namespace aiql::test {

inline std::filesystem::path source_dir() { return AIQL_SOURCE_DIR; }
inline std::filesystem::path data_dir() { return source_dir() / "data"; }
inline std::filesystem::path bench_dir() { return source_dir() / "bench"; }

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline const Schema& shipped_schema() {
  static const Schema schema = Schema::load_file(data_dir() / "structural.schema.json");
  return schema;
}

inline const VersionedModel& client_server_model() {
  static const VersionedModel model =
      load_model_file(data_dir() / "client_server.model.json", shipped_schema());
  return model;
}

/// Parses and validates, aborting the test on diagnostics.
inline ValidatedQuery must_validate(const std::string& text, const Schema& schema) {
  ValidationResult result = validate_query(parse_query(text), schema);
  if (!result.ok()) {
    throw std::runtime_error("query failed to validate:\n" +
                             render_diagnostics(result.diagnostics) + "\n" + text);
  }
  return std::move(*result.query);
}

inline std::vector<std::string> ids_of(const std::vector<const ModelElement*>& elements) {
  std::vector<std::string> out;
  for (const ModelElement* e : elements) out.push_back(e->id);
  return out;
}

}  // namespace aiql::test

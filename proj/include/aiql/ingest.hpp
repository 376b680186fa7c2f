#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "aiql/model.hpp"

namespace aiql {

enum class EdgeMode { ContainmentOnly, ContainmentPlusImports };

/// Single-shot structural ingestion of a source tree: one SoftwareSystem,
/// one SUBSYSTEM component per directory, one CLASS component per source
/// file, ComponentEdges for containment and (optionally) textual imports.
struct IngestConfig {
  std::filesystem::path root;
  std::vector<std::string> include_globs;  // empty: every file
  std::vector<std::string> exclude_globs;
  std::string system_name = "system";
  EdgeMode edge_mode = EdgeMode::ContainmentOnly;
  /// Line regexes with one capture group naming the imported module.
  std::vector<std::string> import_patterns = default_import_patterns();

  static std::vector<std::string> default_import_patterns();
};

struct IngestResult {
  VersionedModel model;
  std::vector<Diagnostic> warnings;
};

/// Scans the tree and emits a one-version model conforming to the shipped
/// structural schema. Ids derive from relative paths, so identical tree
/// bytes produce identical models.
IngestResult scan_tree(const IngestConfig& config, const Schema& schema);

/// Glob matching for include/exclude patterns: `*` and `?` stop at '/',
/// `**` crosses directories. Exposed for tests.
bool glob_match(std::string_view pattern, std::string_view path);

}  // namespace aiql

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "aiql/expr.hpp"
#include "aiql/schema.hpp"

namespace aiql {

/// Enum attribute value; a distinct type so Enum and String never compare.
struct EnumVal {
  std::string name;
  auto operator<=>(const EnumVal&) const = default;
};

/// std::monostate encodes the explicit null, which fails every attribute
/// restriction.
using AttrValue =
    std::variant<std::monostate, bool, std::int64_t, double, std::string, EnumVal, DateTime>;

struct ModelElement {
  std::string id;
  std::string class_name;
  std::map<std::string, AttrValue> attributes;
  std::map<std::string, std::vector<std::string>> references;

  bool operator==(const ModelElement&) const = default;
};

struct VersionSnapshot {
  int index = 1;
  std::map<std::string, ModelElement> elements;  // keyed by id

  const ModelElement* find(std::string_view id) const {
    auto it = elements.find(std::string(id));
    return it == elements.end() ? nullptr : &it->second;
  }

  bool operator==(const VersionSnapshot&) const = default;
};

/// Ordered sequence of self-contained model snapshots, indices 1..N.
/// Immutable after load; safe to share across readers.
struct VersionedModel {
  std::string name;
  std::vector<VersionSnapshot> versions;

  int version_count() const { return static_cast<int>(versions.size()); }
  const VersionSnapshot& snapshot(int index) const {
    return versions[static_cast<std::size_t>(index - 1)];
  }

  bool operator==(const VersionedModel&) const = default;
};

/// Parses a model document and checks conformance against the schema.
/// Conformance errors are aggregated into one ModelError, not fail-fast.
VersionedModel load_model(const std::string& text, const Schema& schema,
                          std::string_view source_name = "");
VersionedModel load_model_file(const std::filesystem::path& path, const Schema& schema);

/// Deterministic serialization back to the model file format: versions
/// ascending, elements by id, attributes and references in schema order.
std::string serialize_model(const VersionedModel& model, const Schema& schema);

/// Resolves a VERSION selector against a model with `count` versions.
/// Returns ascending, duplicate-free indices in 1..count. A filter that
/// selects nothing throws EvalError (empty-version-selection).
std::vector<int> select_versions(const VersionSelector& selector, int count);

/// All elements whose class is `cls` or a subtype, ordered by id.
std::vector<const ModelElement*> elements_of_type(const VersionSnapshot& snapshot,
                                                  std::string_view cls,
                                                  const Schema& schema);

}  // namespace aiql

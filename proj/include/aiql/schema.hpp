#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aiql/diag.hpp"

namespace aiql {

enum class AttrType { Bool, String, Int, Float, Date, Enum };

std::string_view attr_type_name(AttrType t);

struct AttrDef {
  std::string name;
  AttrType type = AttrType::String;
  std::vector<std::string> literals;  // Enum only
};

struct RefDef {
  std::string name;
  std::string target;
  bool many = false;
};

/// User-defined named reference path. `target` and `many` are derived from
/// the path when the schema is loaded.
struct ShortcutDef {
  std::string name;
  std::string source;
  std::vector<std::string> path;
  std::string target;
  bool many = false;
};

struct ClassDef {
  std::string name;
  std::optional<std::string> supertype;
  bool abstract = false;
  std::vector<AttrDef> attributes;
  std::vector<RefDef> references;
};

/// The architecture meta-model: classes with single inheritance, typed
/// attributes, typed references, and shortcut relations whose names are
/// disjoint from reference names. Immutable after load.
class Schema {
 public:
  using Relation = std::variant<const RefDef*, const ShortcutDef*>;

  // The flattened lookup tables point into the definition storage, so a
  // Schema moves but does not copy.
  Schema() = default;
  Schema(const Schema&) = delete;
  Schema& operator=(const Schema&) = delete;
  Schema(Schema&&) = default;
  Schema& operator=(Schema&&) = default;

  /// Parses and validates a schema document. Throws SchemaError with all
  /// collected diagnostics if the document is malformed or inconsistent.
  static Schema load(const std::string& text, std::string_view source_name = "");
  static Schema load_file(const std::filesystem::path& path);

  const std::vector<ClassDef>& classes() const { return classes_; }
  const std::vector<ShortcutDef>& shortcuts() const { return shortcuts_; }

  const ClassDef* find_class(std::string_view name) const;

  /// Attributes of the class including inherited ones, ancestor-first.
  /// Throws SchemaError for an unknown class.
  const std::vector<const AttrDef*>& all_attributes(std::string_view cls) const;

  /// References of the class including inherited ones, ancestor-first.
  /// Shortcuts are not references and never appear here.
  const std::vector<const RefDef*>& all_references(std::string_view cls) const;

  /// True iff `sub` equals `sup` or `sup` is a transitive ancestor of `sub`.
  bool is_subtype(std::string_view sub, std::string_view sup) const;

  /// Resolves a relation name on a class: the (inherited) reference if one
  /// matches, otherwise the shortcut whose source is a supertype of `cls`.
  /// Throws SchemaError if nothing matches.
  Relation resolve_relation(std::string_view cls, std::string_view name) const;

  const AttrDef* find_attribute(std::string_view cls, std::string_view name) const;
  const RefDef* find_reference(std::string_view cls, std::string_view name) const;
  const ShortcutDef* find_shortcut(std::string_view cls, std::string_view name) const;

  /// Shortcuts applicable to a class (source is the class or an ancestor).
  std::vector<const ShortcutDef*> shortcuts_for(std::string_view cls) const;

 private:
  friend class SchemaBuilder;

  struct ClassInfo {
    std::vector<const AttrDef*> attributes;  // flattened, ancestor-first
    std::vector<const RefDef*> references;
    std::vector<std::string> ancestors;  // self first, then up the chain
  };

  const ClassInfo& info(std::string_view cls) const;

  std::vector<ClassDef> classes_;
  std::vector<ShortcutDef> shortcuts_;
  std::map<std::string, std::size_t, std::less<>> class_index_;
  std::map<std::string, ClassInfo, std::less<>> class_info_;
};

}  // namespace aiql

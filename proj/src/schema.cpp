#include "aiql/schema.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace aiql {

using nlohmann::json;

class SchemaBuilder {
 public:
  explicit SchemaBuilder(std::string_view source) : source_(source) {}

  Schema build(const std::string& text) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      error("syntax", e.what());
      throw_all();
    }
    try {
      parse_document(doc);
      resolve();
    } catch (const json::exception& e) {  // wrong-typed fields
      error("syntax", e.what());
      throw_all();
    }
    if (!diags_.empty()) throw_all();
    return std::move(schema_);
  }

 private:
  void error(std::string code, std::string message) {
    diags_.push_back(make_error(std::move(code), std::move(message),
                                std::nullopt, std::string(source_)));
  }

  [[noreturn]] void throw_all() { throw SchemaError(std::move(diags_)); }

  bool is_identifier(std::string_view s) const {
    if (s.empty()) return false;
    auto head = s[0];
    if (!(head == '_' || (head >= 'a' && head <= 'z') || (head >= 'A' && head <= 'Z')))
      return false;
    for (char c : s) {
      if (!(c == '_' || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
            (c >= '0' && c <= '9')))
        return false;
    }
    return true;
  }

  bool is_uppercase_identifier(std::string_view s) const {
    if (s.empty()) return false;
    if (!(s[0] >= 'A' && s[0] <= 'Z')) return false;
    for (char c : s) {
      if (!((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_'))
        return false;
    }
    return true;
  }

  std::optional<AttrType> parse_attr_type(std::string_view name) {
    if (name == "Boolean" || name == "Bool") return AttrType::Bool;
    if (name == "String") return AttrType::String;
    if (name == "Int") return AttrType::Int;
    if (name == "Float") return AttrType::Float;
    if (name == "Date") return AttrType::Date;
    if (name == "Enum") return AttrType::Enum;
    return std::nullopt;
  }

  void parse_document(const json& doc) {
    if (!doc.is_object()) {
      error("syntax", "schema document must be a JSON object");
      throw_all();
    }
    for (const auto& [key, value] : doc.items()) {
      if (key != "classes" && key != "shortcuts") {
        error("unknown-key", "unknown top-level key \"" + key + "\"");
      }
    }
    const json classes = doc.value("classes", json::array());
    if (!classes.is_array()) {
      error("syntax", "\"classes\" must be an array");
      throw_all();
    }
    for (const json& c : classes) parse_class(c);

    const json shortcuts = doc.value("shortcuts", json::array());
    if (!shortcuts.is_array()) {
      error("syntax", "\"shortcuts\" must be an array");
      throw_all();
    }
    for (const json& s : shortcuts) parse_shortcut(s);
  }

  void parse_class(const json& c) {
    if (!c.is_object()) {
      error("syntax", "class entry must be an object");
      return;
    }
    ClassDef def;
    def.name = c.value("name", "");
    if (!is_identifier(def.name)) {
      error("class-name", "class name \"" + def.name + "\" is not a valid identifier");
      return;
    }
    if (c.contains("supertype")) {
      if (!c["supertype"].is_string()) {
        error("syntax", "class " + def.name + ": \"supertype\" must be a string");
      } else {
        def.supertype = c["supertype"].get<std::string>();
      }
    }
    def.abstract = c.value("abstract", false);

    for (const json& a : c.value("attributes", json::array())) {
      AttrDef attr;
      attr.name = a.value("name", "");
      if (!is_identifier(attr.name)) {
        error("attr-name", "class " + def.name + ": attribute name \"" +
                               attr.name + "\" is not a valid identifier");
        continue;
      }
      const std::string type_name = a.value("type", "");
      const auto type = parse_attr_type(type_name);
      if (!type) {
        error("attr-type", "class " + def.name + ", attribute " + attr.name +
                               ": unknown type \"" + type_name + "\"");
        continue;
      }
      attr.type = *type;
      if (attr.type == AttrType::Enum) {
        for (const json& lit : a.value("literals", json::array())) {
          if (lit.is_string()) attr.literals.push_back(lit.get<std::string>());
        }
        if (attr.literals.empty()) {
          error("enum-literals", "class " + def.name + ", attribute " + attr.name +
                                     ": enum attribute needs a non-empty literal set");
        }
        std::set<std::string> seen;
        for (const std::string& lit : attr.literals) {
          if (!is_uppercase_identifier(lit)) {
            error("enum-literals", "class " + def.name + ", attribute " + attr.name +
                                       ": literal \"" + lit +
                                       "\" must be an uppercase identifier");
          }
          if (!seen.insert(lit).second) {
            error("enum-literals", "class " + def.name + ", attribute " + attr.name +
                                       ": duplicate literal \"" + lit + "\"");
          }
        }
      } else if (a.contains("literals")) {
        error("attr-type", "class " + def.name + ", attribute " + attr.name +
                               ": only Enum attributes take \"literals\"");
      }
      def.attributes.push_back(std::move(attr));
    }

    for (const json& r : c.value("references", json::array())) {
      RefDef ref;
      ref.name = r.value("name", "");
      if (!is_identifier(ref.name)) {
        error("ref-name", "class " + def.name + ": reference name \"" + ref.name +
                              "\" is not a valid identifier");
        continue;
      }
      ref.target = r.value("target", "");
      const std::string bound = r.value("upperBound", "one");
      if (bound == "many") {
        ref.many = true;
      } else if (bound == "one") {
        ref.many = false;
      } else {
        error("ref-bound", "class " + def.name + ", reference " + ref.name +
                               ": upperBound must be \"one\" or \"many\"");
      }
      def.references.push_back(std::move(ref));
    }

    classes_.push_back(std::move(def));
  }

  void parse_shortcut(const json& s) {
    if (!s.is_object()) {
      error("syntax", "shortcut entry must be an object");
      return;
    }
    ShortcutDef def;
    def.name = s.value("name", "");
    if (!is_identifier(def.name)) {
      error("shortcut-name", "shortcut name \"" + def.name + "\" is not a valid identifier");
      return;
    }
    def.source = s.value("source", "");
    for (const json& step : s.value("path", json::array())) {
      if (step.is_string()) def.path.push_back(step.get<std::string>());
    }
    if (def.path.empty()) {
      error("shortcut-path", "shortcut " + def.name + ": path must be non-empty");
      return;
    }
    shortcuts_.push_back(std::move(def));
  }

  // Second pass: name resolution, inheritance flattening, and the
  // meta-model invariants (acyclic inheritance, disjoint shortcut names,
  // well-typed shortcut paths).
  void resolve() {
    std::map<std::string, std::size_t, std::less<>> index;
    for (std::size_t i = 0; i < classes_.size(); ++i) {
      if (!index.emplace(classes_[i].name, i).second) {
        error("dup-class", "duplicate class name \"" + classes_[i].name + "\"");
      }
    }
    for (const ClassDef& c : classes_) {
      if (c.supertype && index.find(*c.supertype) == index.end()) {
        error("unknown-supertype", "class " + c.name + ": unknown supertype \"" +
                                       *c.supertype + "\"");
      }
      for (const RefDef& r : c.references) {
        if (index.find(r.target) == index.end()) {
          error("unknown-target", "class " + c.name + ", reference " + r.name +
                                      ": unknown target class \"" + r.target + "\"");
        }
      }
    }
    if (!diags_.empty()) throw_all();

    // Inheritance cycles: walk each chain with a step budget.
    for (const ClassDef& c : classes_) {
      const ClassDef* cur = &c;
      std::size_t steps = 0;
      while (cur->supertype) {
        cur = &classes_[index.at(*cur->supertype)];
        if (++steps > classes_.size()) {
          error("inheritance-cycle",
                "inheritance cycle involving class \"" + c.name + "\"");
          throw_all();
        }
      }
    }

    schema_.classes_ = std::move(classes_);
    schema_.shortcuts_ = std::move(shortcuts_);
    schema_.class_index_ = std::move(index);

    // Flatten attribute/reference lists, ancestor-first.
    for (const ClassDef& c : schema_.classes_) {
      std::vector<const ClassDef*> chain;
      const ClassDef* cur = &c;
      for (;;) {
        chain.push_back(cur);
        if (!cur->supertype) break;
        cur = &schema_.classes_[schema_.class_index_.at(*cur->supertype)];
      }

      Schema::ClassInfo info;
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        for (const AttrDef& a : (*it)->attributes) info.attributes.push_back(&a);
        for (const RefDef& r : (*it)->references) info.references.push_back(&r);
      }
      for (const ClassDef* anc : chain) info.ancestors.push_back(anc->name);

      std::set<std::string_view> names;
      for (const AttrDef* a : info.attributes) {
        if (!names.insert(a->name).second) {
          error("dup-member", "class " + c.name + ": attribute \"" + a->name +
                                  "\" redeclares an inherited or sibling name");
        }
      }
      for (const RefDef* r : info.references) {
        if (!names.insert(r->name).second) {
          error("dup-member", "class " + c.name + ": reference \"" + r->name +
                                  "\" redeclares an inherited or sibling name");
        }
      }
      schema_.class_info_.emplace(c.name, std::move(info));
    }
    if (!diags_.empty()) throw_all();

    // Shortcut paths type-check from their source; derived target/bound.
    for (ShortcutDef& s : schema_.shortcuts_) {
      if (!schema_.find_class(s.source)) {
        error("unknown-source", "shortcut " + s.name + ": unknown source class \"" +
                                    s.source + "\"");
        continue;
      }
      std::string cur = s.source;
      bool many = false;
      bool ok = true;
      for (const std::string& step : s.path) {
        const RefDef* ref = schema_.find_reference(cur, step);
        if (!ref) {
          error("shortcut-path", "shortcut " + s.name + ": \"" + step +
                                     "\" is not a reference of class \"" + cur + "\"");
          ok = false;
          break;
        }
        many = many || ref->many;
        cur = ref->target;
      }
      if (!ok) continue;
      s.target = cur;
      s.many = many;
    }
    if (!diags_.empty()) throw_all();

    // R and S are disjoint per class: no class reachable from the shortcut's
    // source may declare or inherit a reference with the shortcut's name.
    for (const ShortcutDef& s : schema_.shortcuts_) {
      for (const ClassDef& c : schema_.classes_) {
        if (!schema_.is_subtype(c.name, s.source)) continue;
        if (schema_.find_reference(c.name, s.name)) {
          error("shortcut-collision",
                "shortcut \"" + s.name + "\" collides with reference \"" + s.name +
                    "\" on class \"" + c.name + "\"");
        }
      }
    }
    std::set<std::pair<std::string_view, std::string_view>> shortcut_keys;
    for (const ShortcutDef& s : schema_.shortcuts_) {
      if (!shortcut_keys.emplace(s.source, s.name).second) {
        error("dup-shortcut", "duplicate shortcut \"" + s.name + "\" on source \"" +
                                  s.source + "\"");
      }
    }
  }

  std::string_view source_;
  std::vector<Diagnostic> diags_;
  std::vector<ClassDef> classes_;
  std::vector<ShortcutDef> shortcuts_;
  Schema schema_;
};

namespace {

[[noreturn]] void unknown_class(std::string_view cls) {
  throw SchemaError(make_error("unknown-class",
                               "unknown class \"" + std::string(cls) + "\""));
}

}  // namespace

std::string_view attr_type_name(AttrType t) {
  switch (t) {
    case AttrType::Bool: return "Boolean";
    case AttrType::String: return "String";
    case AttrType::Int: return "Int";
    case AttrType::Float: return "Float";
    case AttrType::Date: return "Date";
    case AttrType::Enum: return "Enum";
  }
  return "?";
}

Schema Schema::load(const std::string& text, std::string_view source_name) {
  return SchemaBuilder(source_name).build(text);
}

Schema Schema::load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in || !std::filesystem::is_regular_file(path)) {
    throw IoError(make_error("open", "cannot open schema file: " + path.string()));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load(buf.str(), path.string());
}

const ClassDef* Schema::find_class(std::string_view name) const {
  auto it = class_index_.find(name);
  return it == class_index_.end() ? nullptr : &classes_[it->second];
}

const Schema::ClassInfo& Schema::info(std::string_view cls) const {
  auto it = class_info_.find(cls);
  if (it == class_info_.end()) unknown_class(cls);
  return it->second;
}

const std::vector<const AttrDef*>& Schema::all_attributes(std::string_view cls) const {
  return info(cls).attributes;
}

const std::vector<const RefDef*>& Schema::all_references(std::string_view cls) const {
  return info(cls).references;
}

bool Schema::is_subtype(std::string_view sub, std::string_view sup) const {
  if (!find_class(sup)) unknown_class(sup);
  for (const std::string& anc : info(sub).ancestors) {
    if (anc == sup) return true;
  }
  return false;
}

const AttrDef* Schema::find_attribute(std::string_view cls, std::string_view name) const {
  for (const AttrDef* a : all_attributes(cls)) {
    if (a->name == name) return a;
  }
  return nullptr;
}

const RefDef* Schema::find_reference(std::string_view cls, std::string_view name) const {
  for (const RefDef* r : all_references(cls)) {
    if (r->name == name) return r;
  }
  return nullptr;
}

const ShortcutDef* Schema::find_shortcut(std::string_view cls, std::string_view name) const {
  info(cls);  // existence check
  for (const ShortcutDef& s : shortcuts_) {
    if (s.name == name && is_subtype(cls, s.source)) return &s;
  }
  return nullptr;
}

std::vector<const ShortcutDef*> Schema::shortcuts_for(std::string_view cls) const {
  info(cls);
  std::vector<const ShortcutDef*> out;
  for (const ShortcutDef& s : shortcuts_) {
    if (is_subtype(cls, s.source)) out.push_back(&s);
  }
  return out;
}

Schema::Relation Schema::resolve_relation(std::string_view cls, std::string_view name) const {
  if (const RefDef* r = find_reference(cls, name)) return r;
  if (const ShortcutDef* s = find_shortcut(cls, name)) return s;
  throw SchemaError(make_error(
      "unknown-relation", "class \"" + std::string(cls) +
                              "\" has no reference or shortcut named \"" +
                              std::string(name) + "\""));
}

}  // namespace aiql

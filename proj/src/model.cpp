#include "aiql/model.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace aiql {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

class ModelBuilder {
 public:
  ModelBuilder(const Schema& schema, std::string_view source)
      : schema_(schema), source_(source) {}

  VersionedModel build(const std::string& text) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      error("syntax", e.what());
      throw_all();
    }
    if (!doc.is_object()) {
      error("syntax", "model document must be a JSON object");
      throw_all();
    }
    VersionedModel model;
    if (!doc.contains("name") || !doc["name"].is_string()) {
      error("syntax", "model document needs a string \"name\"");
    } else {
      model.name = doc["name"].get<std::string>();
    }
    try {
      const json versions = doc.value("versions", json::array());
      if (!versions.is_array() || versions.empty()) {
        error("no-versions", "model must contain at least one version");
        throw_all();
      }
      int expected = 1;
      for (const json& v : versions) {
        model.versions.push_back(parse_version(v, expected));
        ++expected;
      }
      for (VersionSnapshot& snapshot : model.versions) {
        check_conformance(snapshot);
      }
    } catch (const json::exception& e) {  // wrong-typed fields
      error("syntax", e.what());
      throw_all();
    }
    if (!diags_.empty()) throw_all();
    return model;
  }

 private:
  void error(std::string code, std::string message) {
    diags_.push_back(make_error(std::move(code), std::move(message),
                                std::nullopt, std::string(source_)));
  }

  [[noreturn]] void throw_all() { throw ModelError(std::move(diags_)); }

  std::string where(const VersionSnapshot& snapshot, const ModelElement& e) {
    return "v" + std::to_string(snapshot.index) + "/element \"" + e.id + "\"";
  }

  VersionSnapshot parse_version(const json& v, int expected_index) {
    VersionSnapshot snapshot;
    snapshot.index = expected_index;
    if (!v.is_object()) {
      error("syntax", "version entry must be an object");
      return snapshot;
    }
    const int index = v.value("index", -1);
    if (index != expected_index) {
      error("version-index",
            "version indices must be contiguous ascending from 1; expected " +
                std::to_string(expected_index) + ", found " + std::to_string(index));
    }
    for (const json& e : v.value("elements", json::array())) {
      ModelElement element = parse_element(e, expected_index);
      if (element.id.empty()) continue;
      if (!snapshot.elements.emplace(element.id, element).second) {
        error("dup-id", "v" + std::to_string(expected_index) +
                            ": duplicate element id \"" + element.id + "\"");
      }
    }
    return snapshot;
  }

  ModelElement parse_element(const json& e, int version_index) {
    ModelElement element;
    if (!e.is_object()) {
      error("syntax", "element entry must be an object");
      return element;
    }
    element.id = e.value("id", "");
    element.class_name = e.value("class", "");
    if (element.id.empty()) {
      error("element-id", "v" + std::to_string(version_index) +
                              ": element without an \"id\"");
      return element;
    }
    const json attrs = e.value("attributes", json::object());
    if (attrs.is_object()) {
      for (const auto& [key, value] : attrs.items()) {
        if (!value.is_primitive()) {
          error("attr-type", "v" + std::to_string(version_index) + "/element \"" +
                                 element.id + "\": attribute \"" + key +
                                 "\" must be a scalar or null");
          continue;
        }
        element.attributes.emplace(key, json_to_raw(value));
      }
    }
    const json refs = e.value("references", json::object());
    if (refs.is_object()) {
      for (const auto& [key, value] : refs.items()) {
        std::vector<std::string> ids;
        if (value.is_array()) {
          for (const json& id : value) {
            if (id.is_string()) ids.push_back(id.get<std::string>());
          }
        }
        element.references.emplace(key, std::move(ids));
      }
    }
    return element;
  }

  // Raw JSON values become provisional AttrValues; typing against the
  // AttrDef happens in check_conformance where the class is known.
  AttrValue json_to_raw(const json& v) {
    if (v.is_null()) return std::monostate{};
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) return v.get<double>();
    if (v.is_string()) return v.get<std::string>();
    return std::monostate{};
  }

  void check_conformance(VersionSnapshot& snapshot) {
    for (auto& [id, element] : snapshot.elements) {
      check_element(snapshot, element);
    }
  }

  void check_element(const VersionSnapshot& snapshot, ModelElement& element) {
    const ClassDef* cls = schema_.find_class(element.class_name);
    if (!cls) {
      error("unknown-class", where(snapshot, element) + ": unknown class \"" +
                                 element.class_name + "\"");
      return;
    }
    if (cls->abstract) {
      error("abstract-class", where(snapshot, element) +
                                  ": abstract class \"" + cls->name +
                                  "\" cannot be instantiated");
      return;
    }

    const auto& attrs = schema_.all_attributes(cls->name);
    for (const auto& [name, value] : element.attributes) {
      const AttrDef* def = schema_.find_attribute(cls->name, name);
      if (!def) {
        error("unknown-attr", where(snapshot, element) + ": class \"" + cls->name +
                                  "\" has no attribute \"" + name + "\"");
      }
    }
    for (const AttrDef* def : attrs) {
      auto it = element.attributes.find(def->name);
      if (it == element.attributes.end()) {
        error("missing-attr", where(snapshot, element) + ": attribute \"" +
                                  def->name + "\" is unset (use null explicitly)");
        continue;
      }
      retype_attr(snapshot, element, *def, it->second);
    }

    for (const auto& [name, targets] : element.references) {
      const RefDef* def = schema_.find_reference(cls->name, name);
      if (!def) {
        error("unknown-ref", where(snapshot, element) + ": class \"" + cls->name +
                                 "\" has no reference \"" + name + "\"");
        continue;
      }
      if (!def->many && targets.size() > 1) {
        error("cardinality", where(snapshot, element) + ": reference \"" + name +
                                 "\" has upper bound one but " +
                                 std::to_string(targets.size()) + " targets");
      }
      std::set<std::string_view> unique_targets;
      for (const std::string& target_id : targets) {
        if (!unique_targets.insert(target_id).second) {
          error("dup-target", where(snapshot, element) + ": reference \"" + name +
                                  "\" lists target \"" + target_id + "\" twice");
        }
      }
      for (const std::string& target_id : targets) {
        const ModelElement* target = snapshot.find(target_id);
        if (!target) {
          error("dangling-ref", where(snapshot, element) + ": reference \"" + name +
                                    "\" points to missing id \"" + target_id + "\"");
          continue;
        }
        if (!schema_.find_class(target->class_name)) continue;  // reported there
        if (!schema_.is_subtype(target->class_name, def->target)) {
          error("ref-type", where(snapshot, element) + ": reference \"" + name +
                                "\" target \"" + target_id + "\" has class \"" +
                                target->class_name + "\", expected \"" +
                                def->target + "\" or a subtype");
        }
      }
    }
  }

  // Converts the provisional value in place to the schema type, or reports
  // a type mismatch.
  void retype_attr(const VersionSnapshot& snapshot, ModelElement& element,
                   const AttrDef& def, AttrValue& value) {
    if (std::holds_alternative<std::monostate>(value)) return;  // explicit null

    const auto mismatch = [&](std::string_view detail) {
      error("attr-type", where(snapshot, element) + ": attribute \"" + def.name +
                             "\" expects " + std::string(attr_type_name(def.type)) +
                             ", " + std::string(detail));
    };

    switch (def.type) {
      case AttrType::Bool:
        if (!std::holds_alternative<bool>(value)) mismatch("got a non-boolean");
        break;
      case AttrType::Int:
        if (!std::holds_alternative<std::int64_t>(value)) mismatch("got a non-integer");
        break;
      case AttrType::Float:
        if (auto* i = std::get_if<std::int64_t>(&value)) {
          value = static_cast<double>(*i);
        } else if (!std::holds_alternative<double>(value)) {
          mismatch("got a non-number");
        }
        break;
      case AttrType::String:
        if (!std::holds_alternative<std::string>(value)) mismatch("got a non-string");
        break;
      case AttrType::Enum: {
        auto* s = std::get_if<std::string>(&value);
        if (!s) {
          mismatch("got a non-string");
          break;
        }
        bool known = false;
        for (const std::string& lit : def.literals) known = known || lit == *s;
        if (!known) {
          mismatch("\"" + *s + "\" is not one of its literals");
          break;
        }
        value = EnumVal{*s};
        break;
      }
      case AttrType::Date: {
        auto* s = std::get_if<std::string>(&value);
        DateTime dt;
        if (!s || !DateTime::parse(*s, dt)) {
          mismatch("got an invalid date (want YYYY-MM-DDThh:mm:ss)");
          break;
        }
        value = dt;
        break;
      }
    }
  }

  const Schema& schema_;
  std::string_view source_;
  std::vector<Diagnostic> diags_;
};

ordered_json value_to_json(const AttrValue& value) {
  if (std::holds_alternative<std::monostate>(value)) return nullptr;
  if (const auto* b = std::get_if<bool>(&value)) return *b;
  if (const auto* i = std::get_if<std::int64_t>(&value)) return *i;
  if (const auto* f = std::get_if<double>(&value)) return *f;
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  if (const auto* e = std::get_if<EnumVal>(&value)) return e->name;
  if (const auto* d = std::get_if<DateTime>(&value)) return d->iso();
  return nullptr;
}

}  // namespace

VersionedModel load_model(const std::string& text, const Schema& schema,
                          std::string_view source_name) {
  return ModelBuilder(schema, source_name).build(text);
}

VersionedModel load_model_file(const std::filesystem::path& path, const Schema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in || !std::filesystem::is_regular_file(path)) {
    throw IoError(make_error("open", "cannot open model file: " + path.string()));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str(), schema, path.string());
}

std::string serialize_model(const VersionedModel& model, const Schema& schema) {
  ordered_json doc;
  doc["name"] = model.name;
  ordered_json versions = ordered_json::array();
  for (const VersionSnapshot& snapshot : model.versions) {
    ordered_json v;
    v["index"] = snapshot.index;
    ordered_json elements = ordered_json::array();
    for (const auto& [id, element] : snapshot.elements) {
      ordered_json e;
      e["id"] = element.id;
      e["class"] = element.class_name;
      ordered_json attrs = ordered_json::object();
      for (const AttrDef* def : schema.all_attributes(element.class_name)) {
        auto it = element.attributes.find(def->name);
        if (it != element.attributes.end()) attrs[def->name] = value_to_json(it->second);
      }
      e["attributes"] = std::move(attrs);
      ordered_json refs = ordered_json::object();
      for (const RefDef* def : schema.all_references(element.class_name)) {
        auto it = element.references.find(def->name);
        if (it == element.references.end()) continue;
        refs[def->name] = it->second;
      }
      e["references"] = std::move(refs);
      elements.push_back(std::move(e));
    }
    v["elements"] = std::move(elements);
    versions.push_back(std::move(v));
  }
  doc["versions"] = std::move(versions);
  return doc.dump(2) + "\n";
}

std::vector<int> select_versions(const VersionSelector& selector, int count) {
  std::vector<int> out;
  switch (selector.kind) {
    case VersionSelector::Kind::First:
      out.push_back(1);
      break;
    case VersionSelector::Kind::Last:
      out.push_back(count);
      break;
    case VersionSelector::Kind::Filter: {
      const std::int64_t rhs = selector.rhs->eval_int();
      for (int i = 1; i <= count; ++i) {
        if (apply_compare<std::int64_t>(selector.op, i, rhs)) out.push_back(i);
      }
      if (out.empty()) {
        throw EvalError(make_error(
            "empty-version-selection",
            "VERSION " + std::string(compare_op_text(selector.op)) + " " +
                selector.rhs->text() + " selects no version (model has " +
                std::to_string(count) + ")"));
      }
      break;
    }
  }
  return out;
}

std::vector<const ModelElement*> elements_of_type(const VersionSnapshot& snapshot,
                                                  std::string_view cls,
                                                  const Schema& schema) {
  if (!schema.find_class(cls)) {
    throw SchemaError(make_error("unknown-class",
                                 "unknown class \"" + std::string(cls) + "\""));
  }
  std::vector<const ModelElement*> out;
  for (const auto& [id, element] : snapshot.elements) {
    if (schema.find_class(element.class_name) &&
        schema.is_subtype(element.class_name, cls)) {
      out.push_back(&element);
    }
  }
  return out;  // std::map iteration is already id-ordered
}

}  // namespace aiql

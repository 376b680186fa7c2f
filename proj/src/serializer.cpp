#include "aiql/serializer.hpp"

#include <algorithm>

#include <json.hpp>

namespace aiql {

namespace {

using ordered_json = nlohmann::ordered_json;

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

// -1 / 0 / +1 ordering of two values of one attribute type; null first.
int compare_values(const AttrValue& a, const AttrValue& b) {
  const bool a_null = std::holds_alternative<std::monostate>(a);
  const bool b_null = std::holds_alternative<std::monostate>(b);
  if (a_null || b_null) return a_null == b_null ? 0 : (a_null ? -1 : 1);

  const auto cmp = [](auto x, auto y) { return x < y ? -1 : (y < x ? 1 : 0); };
  if (const auto* x = std::get_if<bool>(&a)) return cmp(*x, std::get<bool>(b));
  if (const auto* x = std::get_if<std::int64_t>(&a)) return cmp(*x, std::get<std::int64_t>(b));
  if (const auto* x = std::get_if<double>(&a)) return cmp(*x, std::get<double>(b));
  if (const auto* x = std::get_if<std::string>(&a)) return cmp(*x, std::get<std::string>(b));
  if (const auto* x = std::get_if<EnumVal>(&a)) return cmp(x->name, std::get<EnumVal>(b).name);
  if (const auto* x = std::get_if<DateTime>(&a)) return cmp(x->seconds, std::get<DateTime>(b).seconds);
  return 0;
}

const AttrValue* attr_of(const ModelElement& e, const std::string& name) {
  const auto it = e.attributes.find(name);
  return it == e.attributes.end() ? nullptr : &it->second;
}

ordered_json element_to_json(const ModelElement& e, const ResolvedOutput& output,
                             const Schema& schema) {
  ordered_json obj;
  obj["type"] = e.class_name;

  if (output.projection) {
    // Projection keeps "type", keeps only the listed attributes (in schema
    // order), and drops references.
    for (const AttrDef* def : schema.all_attributes(e.class_name)) {
      const bool listed =
          std::find(output.projection->begin(), output.projection->end(), def) !=
          output.projection->end();
      if (!listed) continue;
      if (const AttrValue* v = attr_of(e, def->name)) obj[def->name] = value_to_json(*v);
    }
    return obj;
  }

  for (const AttrDef* def : schema.all_attributes(e.class_name)) {
    if (const AttrValue* v = attr_of(e, def->name)) obj[def->name] = value_to_json(*v);
  }
  for (const RefDef* def : schema.all_references(e.class_name)) {
    ordered_json ids = ordered_json::array();
    const auto it = e.references.find(def->name);
    if (it != e.references.end()) {
      for (const std::string& id : it->second) ids.push_back(id);
    }
    obj[def->name] = std::move(ids);
  }
  return obj;
}

ordered_json version_to_json(const MatchSets& match_sets, const ValidatedQuery& query,
                             const Schema& schema) {
  ordered_json outputs = ordered_json::array();
  for (const ResolvedOutput& output : query.outputs()) {
    const std::string& identifier =
        query.templates()[output.template_index].ast->identifier;
    std::vector<const ModelElement*> elements = match_sets.sets.at(identifier);
    elements = sort_elements(std::move(elements), output.order_by);

    ordered_json arr = ordered_json::array();
    for (const ModelElement* e : elements) {
      arr.push_back(element_to_json(*e, output, schema));
    }
    outputs.push_back(std::move(arr));
  }
  return outputs;
}

}  // namespace

std::vector<const ModelElement*> sort_elements(
    std::vector<const ModelElement*> elements,
    const std::vector<std::pair<const AttrDef*, bool>>& order_by) {
  static const AttrValue kNull = std::monostate{};
  std::sort(elements.begin(), elements.end(),
            [&](const ModelElement* a, const ModelElement* b) {
              for (const auto& [def, ascending] : order_by) {
                const AttrValue* va = attr_of(*a, def->name);
                const AttrValue* vb = attr_of(*b, def->name);
                const int c = compare_values(va ? *va : kNull, vb ? *vb : kNull);
                if (c != 0) return ascending ? c < 0 : c > 0;
              }
              return a->id < b->id;
            });
  return elements;
}

std::string serialize(const QueryResult& result, const ValidatedQuery& query,
                      const Schema& schema, SerializeOptions options) {
  ordered_json doc;
  if (result.per_version.size() == 1) {
    doc = version_to_json(result.per_version.front(), query, schema);
  } else {
    doc = ordered_json::array();
    for (const MatchSets& match_sets : result.per_version) {
      ordered_json entry;
      entry["version"] = match_sets.version;
      entry["results"] = version_to_json(match_sets, query, schema);
      doc.push_back(std::move(entry));
    }
  }
  return options.compact ? doc.dump() : doc.dump(2) + "\n";
}

}  // namespace aiql

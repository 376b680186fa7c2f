#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aiql/schema.hpp"
#include "testutil.hpp"

using namespace aiql;
using namespace aiql::test;

namespace {

std::vector<std::string> names_of_attrs(const std::vector<const AttrDef*>& attrs) {
  std::vector<std::string> out;
  for (const AttrDef* a : attrs) out.push_back(a->name);
  return out;
}

std::vector<std::string> names_of_refs(const std::vector<const RefDef*>& refs) {
  std::vector<std::string> out;
  for (const RefDef* r : refs) out.push_back(r->name);
  return out;
}

bool has_error_code(const SchemaError& e, const std::string& code) {
  for (const Diagnostic& d : e.diagnostics()) {
    if (d.code == code) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("shipped structural schema loads") {
  const Schema& schema = shipped_schema();
  CHECK(schema.classes().size() == 4);
  CHECK(schema.shortcuts().size() == 1);
  CHECK(schema.find_class("SoftwareSystem") != nullptr);
  CHECK(schema.find_class("TechnicalComponent") != nullptr);
  CHECK(schema.find_class("ComponentEdge") != nullptr);
  CHECK(schema.find_class("Component")->abstract);
  CHECK(schema.find_class("NoSuch") == nullptr);
}

TEST_CASE("empty class list loads as empty schema") {
  const Schema schema = Schema::load(R"({"classes": []})");
  CHECK(schema.classes().empty());
  CHECK(schema.shortcuts().empty());
}

TEST_CASE("load is deterministic") {
  const std::string text = read_file(data_dir() / "structural.schema.json");
  const Schema a = Schema::load(text);
  const Schema b = Schema::load(text);
  REQUIRE(a.classes().size() == b.classes().size());
  for (std::size_t i = 0; i < a.classes().size(); ++i) {
    CHECK(a.classes()[i].name == b.classes()[i].name);
    CHECK(a.classes()[i].attributes.size() == b.classes()[i].attributes.size());
    CHECK(a.classes()[i].references.size() == b.classes()[i].references.size());
  }
  REQUIRE(a.shortcuts().size() == b.shortcuts().size());
  CHECK(a.shortcuts()[0].name == b.shortcuts()[0].name);
  CHECK(a.shortcuts()[0].target == b.shortcuts()[0].target);
}

TEST_CASE("shortcut colliding with a reference is rejected") {
  const char* text = R"({
    "classes": [
      { "name": "A",
        "references": [ { "name": "Children", "target": "A", "upperBound": "many" } ] }
    ],
    "shortcuts": [ { "name": "Children", "source": "A", "path": ["Children"] } ]
  })";
  try {
    Schema::load(text);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(has_error_code(e, "shortcut-collision"));
  }
}

TEST_CASE("unknown supertype and unknown target are reported together") {
  const char* text = R"({
    "classes": [
      { "name": "A", "supertype": "Nope",
        "references": [ { "name": "r", "target": "AlsoNope" } ] }
    ]
  })";
  try {
    Schema::load(text);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(has_error_code(e, "unknown-supertype"));
    CHECK(has_error_code(e, "unknown-target"));
  }
}

TEST_CASE("inheritance cycles are rejected") {
  const char* text = R"({
    "classes": [
      { "name": "A", "supertype": "B" },
      { "name": "B", "supertype": "A" }
    ]
  })";
  CHECK_THROWS_AS(Schema::load(text), SchemaError);
}

TEST_CASE("redeclaring an inherited attribute is rejected") {
  const char* text = R"({
    "classes": [
      { "name": "A", "attributes": [ { "name": "x", "type": "Int" } ] },
      { "name": "B", "supertype": "A",
        "attributes": [ { "name": "x", "type": "String" } ] }
    ]
  })";
  try {
    Schema::load(text);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(has_error_code(e, "dup-member"));
  }
}

TEST_CASE("ill-typed shortcut path is rejected") {
  const char* text = R"({
    "classes": [
      { "name": "A", "references": [ { "name": "r", "target": "A" } ] }
    ],
    "shortcuts": [ { "name": "s", "source": "A", "path": ["r", "nope"] } ]
  })";
  try {
    Schema::load(text);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(has_error_code(e, "shortcut-path"));
  }
}

TEST_CASE("syntax errors carry a position message") {
  CHECK_THROWS_AS(Schema::load("{ not json"), SchemaError);
}

TEST_CASE("wrong-typed JSON fields are schema errors, not crashes") {
  CHECK_THROWS_AS(Schema::load(R"({"classes":[{"name":42}]})"), SchemaError);
  CHECK_THROWS_AS(Schema::load(R"({"classes":[{"name":"A","abstract":"yes"}]})"),
                  SchemaError);
  CHECK_THROWS_AS(Schema::load(R"({"classes":{"name":"A"}})"), SchemaError);
}

TEST_CASE("all_attributes is inherited, ancestor-first") {
  const Schema& schema = shipped_schema();
  CHECK(names_of_attrs(schema.all_attributes("TechnicalComponent")) ==
        std::vector<std::string>{"Name", "Type", "Version"});
  // subclass declaring nothing inherits exactly the supertype list
  CHECK(names_of_attrs(schema.all_attributes("SoftwareSystem")) ==
        std::vector<std::string>{"Name"});
  CHECK(names_of_attrs(schema.all_attributes("Component")) ==
        std::vector<std::string>{"Name"});
  CHECK(schema.all_attributes("ComponentEdge").empty());
  CHECK_THROWS_AS(schema.all_attributes("NoSuch"), SchemaError);
}

TEST_CASE("all_references is inherited and excludes shortcuts") {
  const Schema& schema = shipped_schema();
  CHECK(names_of_refs(schema.all_references("Component")) ==
        std::vector<std::string>{"ComponentEdge"});
  CHECK(names_of_refs(schema.all_references("TechnicalComponent")) ==
        std::vector<std::string>{"ComponentEdge"});
  CHECK(names_of_refs(schema.all_references("ComponentEdge")) ==
        std::vector<std::string>{"Parent", "Child"});
}

TEST_CASE("subclass lists are supersets of superclass lists") {
  const Schema& schema = shipped_schema();
  for (const char* sub : {"SoftwareSystem", "TechnicalComponent"}) {
    const auto super_attrs = names_of_attrs(schema.all_attributes("Component"));
    const auto sub_attrs = names_of_attrs(schema.all_attributes(sub));
    for (const std::string& a : super_attrs) {
      CHECK(std::find(sub_attrs.begin(), sub_attrs.end(), a) != sub_attrs.end());
    }
    const auto super_refs = names_of_refs(schema.all_references("Component"));
    const auto sub_refs = names_of_refs(schema.all_references(sub));
    for (const std::string& r : super_refs) {
      CHECK(std::find(sub_refs.begin(), sub_refs.end(), r) != sub_refs.end());
    }
  }
}

TEST_CASE("is_subtype") {
  const Schema& schema = shipped_schema();
  CHECK(schema.is_subtype("TechnicalComponent", "Component"));
  CHECK(schema.is_subtype("TechnicalComponent", "TechnicalComponent"));
  CHECK_FALSE(schema.is_subtype("Component", "TechnicalComponent"));
  CHECK_FALSE(schema.is_subtype("SoftwareSystem", "TechnicalComponent"));
  CHECK_THROWS_AS(schema.is_subtype("NoSuch", "Component"), SchemaError);
  CHECK_THROWS_AS(schema.is_subtype("Component", "NoSuch"), SchemaError);
}

TEST_CASE("resolve_relation prefers references, falls back to shortcuts") {
  const Schema& schema = shipped_schema();

  const auto children = schema.resolve_relation("SoftwareSystem", "Children");
  REQUIRE(std::holds_alternative<const ShortcutDef*>(children));
  const ShortcutDef* sc = std::get<const ShortcutDef*>(children);
  CHECK(sc->path == std::vector<std::string>{"ComponentEdge", "Child"});
  CHECK(sc->target == "Component");
  CHECK(sc->many);

  const auto child = schema.resolve_relation("ComponentEdge", "Child");
  REQUIRE(std::holds_alternative<const RefDef*>(child));
  CHECK_FALSE(std::get<const RefDef*>(child)->many);

  CHECK_THROWS_AS(schema.resolve_relation("SoftwareSystem", "NoSuch"), SchemaError);
}

TEST_CASE("shortcut names stay disjoint from reference names on every class") {
  const Schema& schema = shipped_schema();
  for (const ClassDef& c : schema.classes()) {
    for (const ShortcutDef* s : schema.shortcuts_for(c.name)) {
      CHECK(schema.find_reference(c.name, s->name) == nullptr);
    }
  }
}

TEST_CASE("shortcut paths re-typecheck after load") {
  const Schema& schema = shipped_schema();
  for (const ShortcutDef& s : schema.shortcuts()) {
    std::string cur = s.source;
    bool many = false;
    for (const std::string& step : s.path) {
      const RefDef* ref = schema.find_reference(cur, step);
      REQUIRE(ref != nullptr);
      many = many || ref->many;
      cur = ref->target;
    }
    CHECK(cur == s.target);
    CHECK(many == s.many);
  }
}

TEST_CASE("shortcut upper bound derives from its path") {
  const char* text = R"({
    "classes": [
      { "name": "A", "references": [ { "name": "r1", "target": "B" } ] },
      { "name": "B", "references": [
          { "name": "r2", "target": "C" },
          { "name": "fan", "target": "C", "upperBound": "many" } ] },
      { "name": "C" }
    ],
    "shortcuts": [
      { "name": "narrow", "source": "A", "path": ["r1", "r2"] },
      { "name": "wide", "source": "A", "path": ["r1", "fan"] }
    ]
  })";
  const Schema schema = Schema::load(text);
  const ShortcutDef* narrow = schema.find_shortcut("A", "narrow");
  REQUIRE(narrow != nullptr);
  CHECK_FALSE(narrow->many);  // every step has upper bound one
  CHECK(narrow->target == "C");
  const ShortcutDef* wide = schema.find_shortcut("A", "wide");
  REQUIRE(wide != nullptr);
  CHECK(wide->many);
  CHECK(wide->target == "C");
}

TEST_CASE("enum literal invariants") {
  CHECK_THROWS_AS(Schema::load(R"({"classes":[{"name":"A","attributes":[
      {"name":"t","type":"Enum","literals":[]}]}]})"),
                  SchemaError);
  CHECK_THROWS_AS(Schema::load(R"({"classes":[{"name":"A","attributes":[
      {"name":"t","type":"Enum","literals":["lower"]}]}]})"),
                  SchemaError);
  CHECK_THROWS_AS(Schema::load(R"({"classes":[{"name":"A","attributes":[
      {"name":"t","type":"Enum","literals":["X","X"]}]}]})"),
                  SchemaError);
}

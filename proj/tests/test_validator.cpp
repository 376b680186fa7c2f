#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aiql/validator.hpp"
#include "testutil.hpp"

using namespace aiql;
using namespace aiql::test;

namespace {

ValidationResult check(const std::string& body) {
  const std::string text = "MODEL \"m\";\nVERSION LAST;\n" + body;
  return validate_query(parse_query(text, "q.aiql"), shipped_schema(), "q.aiql");
}

bool has_code(const ValidationResult& r, const std::string& code) {
  for (const Diagnostic& d : r.diagnostics) {
    if (d.code == code) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("the running example validates and orders dependencies first") {
  const std::string text = read_file(data_dir() / "fig3.aiql");
  ValidationResult result = validate_query(parse_query(text), shipped_schema());
  REQUIRE(result.ok());
  CHECK(result.diagnostics.empty());
  CHECK(template_order(*result.query) ==
        std::vector<std::string>{"serverComponent", "system"});
}

TEST_CASE("all published queries validate cleanly") {
  std::vector<std::string> texts;
  texts.push_back(read_file(data_dir() / "fig3.aiql"));
  for (const char* name : {"q1", "q2", "q3", "q4", "q5", "q6", "q7"}) {
    texts.push_back(read_file(bench_dir() / (std::string(name) + ".aiql")));
  }
  for (const std::string& text : texts) {
    CAPTURE(text);
    ValidationResult result = validate_query(parse_query(text), shipped_schema());
    CHECK(result.ok());
    CHECK(result.diagnostics.empty());
  }
}

TEST_CASE("quantifier rules follow the relation's upper bound") {
  // EXISTS removed from a many-shortcut
  ValidationResult missing = check(
      "LIST SoftwareSystem s RESTRICTIONS: (Children t);\n"
      "LIST TechnicalComponent t;\nOUTPUT s; OUTPUT t;");
  CHECK_FALSE(missing.ok());
  CHECK(has_code(missing, "quant-missing"));

  // quantifier added to a one-reference
  ValidationResult superfluous = check(
      "LIST ComponentEdge e RESTRICTIONS: (EXISTS Child t);\n"
      "LIST TechnicalComponent t;\nOUTPUT e; OUTPUT t;");
  CHECK_FALSE(superfluous.ok());
  CHECK(has_code(superfluous, "quant-superfluous"));

  // unquantified one-reference is exactly what query 4 does
  ValidationResult q4 = check(
      "LIST ComponentEdge e RESTRICTIONS: (Child t);\n"
      "LIST TechnicalComponent t;\nOUTPUT e; OUTPUT t;");
  CHECK(q4.ok());
}

TEST_CASE("template order for the scalability queries") {
  const auto order_of = [](const char* file) {
    const ValidatedQuery q =
        must_validate(read_file(bench_dir() / file), shipped_schema());
    return template_order(q);
  };
  CHECK(order_of("q6.aiql") ==
        std::vector<std::string>{"handler", "edge", "handlerParent"});
  CHECK(order_of("q5.aiql") == std::vector<std::string>{"edge", "handler"});
  CHECK(order_of("q1.aiql") == std::vector<std::string>{"comp"});
}

TEST_CASE("forward and backward template references both work") {
  ValidationResult backward = check(
      "LIST TechnicalComponent t;\n"
      "LIST SoftwareSystem s RESTRICTIONS: (EXISTS Children t);\n"
      "OUTPUT s;");
  CHECK(backward.ok());

  ValidationResult forward = check(
      "LIST SoftwareSystem s RESTRICTIONS: (EXISTS Children t);\n"
      "LIST TechnicalComponent t;\n"
      "OUTPUT s;");
  CHECK(forward.ok());
  CHECK(template_order(*forward.query) == std::vector<std::string>{"t", "s"});
}

TEST_CASE("every diagnostic kind fires with a position") {
  struct Case {
    const char* body;
    const char* code;
  };
  const Case cases[] = {
      {"LIST Nope t;\nOUTPUT t;", "unknown-type"},
      {"LIST TechnicalComponent t;\nLIST SoftwareSystem t;\nOUTPUT t;", "dup-template"},
      {"LIST TechnicalComponent t RESTRICTIONS: (Nope 'x');\nOUTPUT t;", "unknown-attr"},
      {"LIST TechnicalComponent t RESTRICTIONS: (EXISTS Nope t);\nOUTPUT t;",
       "unknown-relation"},
      {"LIST TechnicalComponent t RESTRICTIONS: (Name = 1);\nOUTPUT t;", "type-mismatch"},
      {"LIST TechnicalComponent t RESTRICTIONS: (Version 'x');\nOUTPUT t;",
       "type-mismatch"},
      {"LIST TechnicalComponent t RESTRICTIONS: (Type 'CLASS');\nOUTPUT t;",
       "type-mismatch"},
      {"LIST TechnicalComponent t RESTRICTIONS: (Active true);\nOUTPUT t;",
       "unknown-attr"},
      {"LIST TechnicalComponent t RESTRICTIONS: (Type LIBRARY);\nOUTPUT t;",
       "enum-literal"},
      {"LIST SoftwareSystem s RESTRICTIONS: (EXISTS ComponentEdge s);\nOUTPUT s;",
       "tmpl-type"},
      {"LIST SoftwareSystem s RESTRICTIONS: (EXISTS Children ghost);\nOUTPUT s;",
       "tmpl-unresolved"},
      {"LIST TechnicalComponent t;\nOUTPUT ghost;", "unknown-output"},
      {"LIST TechnicalComponent t;\nOUTPUT t ORDER_BY Nope ASC;", "orderby-attr"},
      {"LIST TechnicalComponent t;\nOUTPUT t ATTRIBUTE Nope;", "projection-attr"},
      {"LIST TechnicalComponent t RESTRICTIONS: (Version >= 1/0);\nOUTPUT t;",
       "div-zero"},
  };
  for (const Case& c : cases) {
    CAPTURE(c.body);
    ValidationResult result = check(c.body);
    CHECK_FALSE(result.ok());
    CHECK(has_code(result, c.code));
    for (const Diagnostic& d : result.diagnostics) {
      CHECK(d.pos.has_value());
      CHECK(d.source == "q.aiql");
    }
  }
}

TEST_CASE("self-reference and longer cycles are rejected") {
  ValidationResult self = check(
      "LIST SoftwareSystem s RESTRICTIONS: (EXISTS Children s);\nOUTPUT s;");
  // SoftwareSystem is a Component, so the target type fits; the cycle is the error.
  CHECK_FALSE(self.ok());
  CHECK(has_code(self, "tmpl-cycle"));

  ValidationResult pair = check(
      "LIST SoftwareSystem a RESTRICTIONS: (EXISTS Children b);\n"
      "LIST SoftwareSystem b RESTRICTIONS: (EXISTS Children a);\n"
      "OUTPUT a;");
  CHECK_FALSE(pair.ok());
  CHECK(has_code(pair, "tmpl-cycle"));
}

TEST_CASE("diagnostics aggregate across templates in one pass") {
  ValidationResult result = check(
      "LIST Nope a;\n"
      "LIST TechnicalComponent b RESTRICTIONS: (Ghost 'x' Type NOPE);\n"
      "OUTPUT ghost;");
  CHECK_FALSE(result.ok());
  CHECK(has_code(result, "unknown-type"));
  CHECK(has_code(result, "unknown-attr"));
  CHECK(has_code(result, "enum-literal"));
  CHECK(has_code(result, "unknown-output"));
}

TEST_CASE("unused templates warn but stay valid") {
  ValidationResult result = check(
      "LIST TechnicalComponent used;\nLIST TechnicalComponent unused;\nOUTPUT used;");
  CHECK(result.ok());
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].severity == Severity::Warning);
  CHECK(result.diagnostics[0].code == "unused-template");
}

TEST_CASE("a template may restrict every attribute of its class") {
  ValidationResult result = check(
      "LIST TechnicalComponent t RESTRICTIONS: "
      "(Name '.*' Type CLASS Version >= 0);\nOUTPUT t;");
  CHECK(result.ok());
}

TEST_CASE("validation is deterministic") {
  const char* body =
      "LIST Nope a;\nLIST TechnicalComponent b RESTRICTIONS: (Ghost 'x');\nOUTPUT z;";
  const ValidationResult a = check(body);
  const ValidationResult b = check(body);
  REQUIRE(a.diagnostics.size() == b.diagnostics.size());
  for (std::size_t i = 0; i < a.diagnostics.size(); ++i) {
    CHECK(a.diagnostics[i].code == b.diagnostics[i].code);
    CHECK(a.diagnostics[i].message == b.diagnostics[i].message);
    CHECK(a.diagnostics[i].pos == b.diagnostics[i].pos);
  }
}

TEST_CASE("the enum/reference hint names the escape") {
  ValidationResult result = check(
      "LIST ComponentEdge e RESTRICTIONS: (Child HANDLER);\n"
      "LIST TechnicalComponent ^HANDLER;\n"
      "OUTPUT e;");
  CHECK_FALSE(result.ok());
  REQUIRE(has_code(result, "unknown-attr"));
  bool hinted = false;
  for (const Diagnostic& d : result.diagnostics) {
    hinted = hinted || d.message.find("^HANDLER") != std::string::npos;
  }
  CHECK(hinted);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aiql/complete.hpp"
#include "aiql/evaluator.hpp"
#include "aiql/metrics.hpp"
#include "randomgen.hpp"
#include "testutil.hpp"

using namespace aiql;
using namespace aiql::test;

namespace {

// Raw grammar sentence generator: syntactically valid, not necessarily
// well-typed. Exercises the lexer/parser/formatter corners the typed
// generator avoids.
std::string grammar_sentence(Rng& rng) {
  std::ostringstream out;
  const auto ident = [&] {
    static const std::vector<std::string> pool = {"a", "b1", "_x", "Name", "veryLong_name9",
                                                  "^LIST", "^OUTPUT", "T"};
    return pick(rng, pool);
  };
  const auto maybe_comment = [&] {
    if (rand_int(rng, 0, 6) == 0) out << " // noise ; LIST OUTPUT\n";
  };

  out << "MODEL " << (rand_int(rng, 0, 1) ? "\"p/q.model\"" : "'p.model'") << ";";
  maybe_comment();
  out << "\nVERSION ";
  switch (rand_int(rng, 0, 3)) {
    case 0: out << "FIRST"; break;
    case 1: out << "LAST"; break;
    default: {
      static const std::vector<std::string> ops = {"<=", "<", "=", ">", ">="};
      static const std::vector<std::string> arith = {
          "1", "-2", "1+2*3", "(1+2)*3", "2*(3-1)/2", "-1+-2", "((7))"};
      out << pick(rng, ops) << " " << pick(rng, arith);
      break;
    }
  }
  out << ";\n";

  const int templates = rand_int(rng, 1, 3);
  std::vector<std::string> names;
  for (int t = 0; t < templates; ++t) {
    const std::string name = "tm" + std::to_string(t);
    names.push_back(name);
    out << "LIST " << ident() << " " << name;
    if (rand_int(rng, 0, 1)) {
      out << " RESTRICTIONS: ";
      const int groups = rand_int(rng, 1, 3);
      for (int g = 0; g < groups; ++g) {
        if (g) out << " OR ";
        out << "(";
        const int members = rand_int(rng, 1, 3);
        for (int m = 0; m < members; ++m) {
          if (m) out << " ";
          if (rand_int(rng, 0, 3) == 0) out << "NOT ";
          switch (rand_int(rng, 0, 6)) {
            case 0: out << ident() << " true"; break;
            case 1: out << ident() << " false"; break;
            case 2: out << ident() << " '.*x'"; break;
            case 3: out << ident() << " >= 2+2"; break;
            case 4: out << ident() << " < 2024-02-29T23:59:59"; break;
            case 5: out << ident() << " CLASS"; break;
            default: {
              static const std::vector<std::string> quants = {
                  "", "EXISTS ", "FOR_ALL ", "COUNT(0) ", "RANGE(1, 4) "};
              out << pick(rng, quants) << ident() << " " << pick(rng, names);
              break;
            }
          }
        }
        out << ")";
      }
    }
    out << ";";
    maybe_comment();
    out << "\n";
  }

  const int outputs = rand_int(rng, 1, 3);
  for (int o = 0; o < outputs; ++o) {
    out << "OUTPUT " << pick(rng, names);
    if (rand_int(rng, 0, 2) == 0) {
      out << " ORDER_BY na" << o << (rand_int(rng, 0, 1) ? " ASC" : " DESC");
      if (rand_int(rng, 0, 1)) out << ", nb" << o << " DESC";
    }
    if (rand_int(rng, 0, 2) == 0) out << " ATTRIBUTE x" << o << ", y" << o;
    out << ";\n";
  }
  return out.str();
}

}  // namespace

TEST_CASE("random grammar sentences parse and round-trip through format") {
  Rng rng(2024);
  for (int i = 0; i < 500; ++i) {
    const std::string text = grammar_sentence(rng);
    CAPTURE(text);
    QueryAst once;
    try {
      once = parse_query(text);
    } catch (const SyntaxError& e) {
      FAIL("generated sentence failed to parse: " << e.what() << "\n" << text);
    }
    const std::string formatted = format_query(once);
    CAPTURE(formatted);
    const QueryAst twice = parse_query(formatted);
    CHECK(once == twice);
  }
}

TEST_CASE("metrics are insensitive to random comment insertion") {
  Rng rng(77);
  for (int i = 0; i < 50; ++i) {
    const std::string text = grammar_sentence(rng);
    std::string commented;
    for (char c : text) {
      commented += c;
      if (c == '\n' && rand_int(rng, 0, 2) == 0) {
        commented += "// comment LIST 'x' \n";
      }
    }
    CHECK(query_metrics(text) == query_metrics(commented));
  }
}

TEST_CASE("arbitrary input is rejected cleanly, never crashing") {
  Rng rng(1);
  const std::string charset =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789"
      " \t\n'\"();:,.<>=+-*/^_{}[]@#\\";
  int parsed = 0;
  for (int i = 0; i < 3000; ++i) {
    std::string text;
    const int len = rand_int(rng, 0, 80);
    for (int c = 0; c < len; ++c) {
      text += charset[static_cast<std::size_t>(
          rand_int(rng, 0, static_cast<int>(charset.size()) - 1))];
    }
    try {
      parse_query(text);
      ++parsed;
    } catch (const SyntaxError&) {
    }
    (void)complete_proposals(text, extended_schema());
  }
  CHECK(parsed >= 0);  // reaching here without a crash is the property
}

TEST_CASE("typed random queries validate against the extended schema") {
  Rng rng(4242);
  int validated = 0;
  for (int i = 0; i < 300; ++i) {
    const std::string text = random_query(rng, 3);
    CAPTURE(text);
    ValidationResult result = validate_query(parse_query(text), extended_schema());
    CHECK_MESSAGE(result.ok(), render_diagnostics(result.diagnostics));
    if (result.ok()) ++validated;
  }
  CHECK(validated == 300);
}

TEST_CASE("differential: evaluate matches the oracle on random cases") {
  Rng rng(31337);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const int templates = rand_int(rng, 1, 4);
    const int max_elements = templates >= 4 ? 40 : (templates == 3 ? 70 : 200);
    const VersionedModel model = random_model(rng, max_elements);
    const std::string text = random_query(rng, model.version_count(), templates);
    CAPTURE(text);

    ValidationResult validated = validate_query(parse_query(text), extended_schema());
    REQUIRE_MESSAGE(validated.ok(), render_diagnostics(validated.diagnostics));

    const QueryResult fast = evaluate(*validated.query, model, extended_schema());
    const QueryResult slow = oracle_evaluate(*validated.query, model, extended_schema());
    const bool equal = results_equal(fast, slow);
    CHECK_MESSAGE(equal, "divergence on:\n" << text);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("random models round-trip through the file format") {
  Rng rng(808);
  for (int i = 0; i < 30; ++i) {
    const VersionedModel model = random_model(rng, 80);
    const std::string bytes = serialize_model(model, extended_schema());
    const VersionedModel reloaded = load_model(bytes, extended_schema());
    CHECK(model == reloaded);
    CHECK(bytes == serialize_model(reloaded, extended_schema()));
  }
}

TEST_CASE("differential: multi-version filters agree too") {
  Rng rng(555);
  for (int i = 0; i < 40; ++i) {
    const VersionedModel model = random_model(rng, 60, 3);
    std::string text = random_query(rng, model.version_count(), 2);
    text.replace(text.find("VERSION"), text.find(";\n", text.find("VERSION")) + 1 -
                                           text.find("VERSION"),
                 "VERSION >= 1;");
    CAPTURE(text);
    ValidationResult validated = validate_query(parse_query(text), extended_schema());
    REQUIRE(validated.ok());
    const QueryResult fast = evaluate(*validated.query, model, extended_schema());
    const QueryResult slow = oracle_evaluate(*validated.query, model, extended_schema());
    CHECK(results_equal(fast, slow));
    CHECK(fast.per_version.size() == static_cast<std::size_t>(model.version_count()));
  }
}

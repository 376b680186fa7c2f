#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aiql/complete.hpp"
#include "testutil.hpp"

using namespace aiql;
using namespace aiql::test;

namespace {

bool proposes(const std::vector<std::string>& proposals, const std::string& item) {
  return std::find(proposals.begin(), proposals.end(), item) != proposals.end();
}

}  // namespace

TEST_CASE("class names complete after LIST") {
  const auto proposals =
      complete_proposals("MODEL \"m\"; VERSION LAST; LIST Tech", shipped_schema());
  CHECK(proposals == std::vector<std::string>{"TechnicalComponent"});

  const auto all =
      complete_proposals("MODEL \"m\"; VERSION LAST; LIST ", shipped_schema());
  CHECK(proposes(all, "Component"));
  CHECK(proposes(all, "SoftwareSystem"));
  CHECK(proposes(all, "TechnicalComponent"));
  CHECK(proposes(all, "ComponentEdge"));
}

TEST_CASE("attribute and relation names complete inside RESTRICTIONS") {
  const auto proposals = complete_proposals(
      "MODEL \"m\"; VERSION LAST; LIST TechnicalComponent t RESTRICTIONS: (",
      shipped_schema());
  // the class's attributes (including inherited Name)
  CHECK(proposes(proposals, "Name"));
  CHECK(proposes(proposals, "Type"));
  CHECK(proposes(proposals, "Version"));
  // relations and shortcuts of the class
  CHECK(proposes(proposals, "ComponentEdge"));
  CHECK(proposes(proposals, "Children"));
  // structural keywords
  CHECK(proposes(proposals, "NOT"));
  CHECK(proposes(proposals, "EXISTS"));
  CHECK_FALSE(proposes(proposals, "Parent"));  // belongs to ComponentEdge
}

TEST_CASE("completion is context-sensitive on the template's class") {
  const auto edge = complete_proposals(
      "MODEL \"m\"; VERSION LAST; LIST ComponentEdge e RESTRICTIONS: (",
      shipped_schema());
  CHECK(proposes(edge, "Parent"));
  CHECK(proposes(edge, "Child"));
  CHECK_FALSE(proposes(edge, "Type"));
  CHECK_FALSE(proposes(edge, "Children"));  // shortcut source is Component
}

TEST_CASE("typed value positions propose typed continuations") {
  const std::string base = "MODEL \"m\"; VERSION LAST; LIST TechnicalComponent t "
                           "RESTRICTIONS: (";
  const auto enum_values = complete_proposals(base + "Type ", shipped_schema());
  CHECK(proposes(enum_values, "SUBSYSTEM"));
  CHECK(proposes(enum_values, "CLASS"));

  const auto int_ops = complete_proposals(base + "Version ", shipped_schema());
  CHECK(proposes(int_ops, ">="));
  CHECK(proposes(int_ops, "="));
}

TEST_CASE("quantifiers narrow relation proposals to many-relations") {
  const auto proposals = complete_proposals(
      "MODEL \"m\"; VERSION LAST; LIST SoftwareSystem s RESTRICTIONS: (EXISTS ",
      shipped_schema());
  CHECK(proposes(proposals, "Children"));
  CHECK(proposes(proposals, "ComponentEdge"));
  CHECK_FALSE(proposes(proposals, "Name"));
}

TEST_CASE("OUTPUT completes declared template identifiers") {
  const auto proposals = complete_proposals(
      "MODEL \"m\"; VERSION LAST; LIST TechnicalComponent comp; OUTPUT ",
      shipped_schema());
  CHECK(proposals == std::vector<std::string>{"comp"});

  const auto after = complete_proposals(
      "MODEL \"m\"; VERSION LAST; LIST TechnicalComponent comp; OUTPUT comp ",
      shipped_schema());
  CHECK(proposes(after, "ORDER_BY"));
  CHECK(proposes(after, "ATTRIBUTE"));
  CHECK(proposes(after, ";"));

  const auto order_attrs = complete_proposals(
      "MODEL \"m\"; VERSION LAST; LIST TechnicalComponent comp; OUTPUT comp ORDER_BY ",
      shipped_schema());
  CHECK(proposes(order_attrs, "Name"));
  CHECK(proposes(order_attrs, "Version"));
}

TEST_CASE("the empty buffer and header positions") {
  CHECK(complete_proposals("", shipped_schema()) == std::vector<std::string>{"MODEL"});
  CHECK(proposes(complete_proposals("MODEL \"m\"; ", shipped_schema()), "VERSION"));
  const auto version = complete_proposals("MODEL \"m\"; VERSION ", shipped_schema());
  CHECK(proposes(version, "FIRST"));
  CHECK(proposes(version, "LAST"));
  CHECK(proposes(version, "<="));
}

TEST_CASE("a complete query proposes further OUTPUT directives") {
  const auto proposals = complete_proposals(
      "MODEL \"m\"; VERSION LAST; LIST TechnicalComponent t; OUTPUT t;",
      shipped_schema());
  CHECK(proposals == std::vector<std::string>{"OUTPUT"});
}

TEST_CASE("partial keywords filter the proposal list") {
  const auto proposals = complete_proposals(
      "MODEL \"m\"; VERSION LAST; LIST TechnicalComponent t RESTRICTIONS: "
      "(Name 'x'); OUTPUT t ORD",
      shipped_schema());
  CHECK(proposals == std::vector<std::string>{"ORDER_BY"});
}

TEST_CASE("unparseable buffers yield no proposals") {
  CHECK(complete_proposals("OUTPUT OUTPUT OUTPUT", shipped_schema()).empty());
  CHECK(complete_proposals("MODEL 'unterminated", shipped_schema()).empty());
  CHECK_FALSE(is_viable_prefix("OUTPUT nope", shipped_schema()));
}

TEST_CASE("every proposal extends the buffer to a viable prefix") {
  const std::string fig3 = read_file(data_dir() / "fig3.aiql");
  std::vector<std::string> prefixes;
  // every whitespace-boundary prefix of the running example
  for (std::size_t i = 0; i <= fig3.size(); ++i) {
    if (i == fig3.size() || fig3[i] == ' ' || fig3[i] == '\n') {
      prefixes.push_back(fig3.substr(0, i));
    }
  }
  prefixes.push_back("MODEL \"m\"; VERSION ");
  prefixes.push_back("MODEL \"m\"; VERSION <= 1+");
  prefixes.push_back("MODEL \"m\"; VERSION <= (1+2)");
  prefixes.push_back("MODEL \"m\"; VERSION LAST; LIST ComponentEdge e RESTRICTIONS: (");
  prefixes.push_back(
      "MODEL \"m\"; VERSION LAST; LIST ComponentEdge e RESTRICTIONS: (NOT ");
  prefixes.push_back(
      "MODEL \"m\"; VERSION LAST; LIST TechnicalComponent t RESTRICTIONS: "
      "(Version >= 1");
  prefixes.push_back(
      "MODEL \"m\"; VERSION LAST; LIST TechnicalComponent t RESTRICTIONS: "
      "(Name 'x') OR ");
  prefixes.push_back("MODEL \"m\"; VERSION LAST; LIST TechnicalComponent t; OUTPUT t ");

  int proposal_count = 0;
  for (const std::string& prefix : prefixes) {
    REQUIRE(is_viable_prefix(prefix, shipped_schema()));
    for (const std::string& proposal : complete_proposals(prefix, shipped_schema())) {
      ++proposal_count;
      const std::string extended = prefix + " " + proposal;
      CAPTURE(prefix);
      CAPTURE(proposal);
      CHECK(is_viable_prefix(extended, shipped_schema()));
    }
  }
  CHECK(proposal_count > 50);  // the sweep actually exercised proposals
}

TEST_CASE("accepting proposals repeatedly reaches a parseable query") {
  // Drive the engine from a seed prefix, steering toward closure: take ";"
  // or ")" or "OUTPUT" when offered, otherwise fill free-form positions with
  // canned tokens, otherwise take the last proposal. The result must parse.
  const std::vector<std::string> seeds = {
      "",
      "MODEL \"m\"; VERSION ",
      "MODEL \"m\"; VERSION LAST; LIST TechnicalComponent t RESTRICTIONS: (",
      "MODEL \"m\"; VERSION LAST; LIST SoftwareSystem s RESTRICTIONS: (EXISTS ",
  };
  for (std::string buffer : seeds) {
    bool done = false;
    for (int step = 0; step < 60 && !done; ++step) {
      try {
        parse_query(buffer);
        done = true;
        break;
      } catch (const SyntaxError&) {
      }
      const auto proposals = complete_proposals(buffer, shipped_schema());
      const auto take = [&](const char* want) {
        if (!proposes(proposals, want)) return false;
        buffer += std::string(want) + " ";
        return true;
      };
      if (take(";") || take(")") || take("OUTPUT")) continue;

      bool filled = false;
      for (const char* filler : {"t", "\"m\"", "'x'", "1"}) {
        const std::string candidate = buffer + filler + " ";
        if (is_viable_prefix(candidate, shipped_schema())) {
          buffer = candidate;
          filled = true;
          break;
        }
      }
      if (filled) continue;
      REQUIRE_MESSAGE(!proposals.empty(), "stuck at: " << buffer);
      buffer += proposals.back() + " ";
    }
    CAPTURE(buffer);
    CHECK(done);
  }
}

// aiql: query engine for architecture information models.
//
// Subcommands: run, validate, metrics, ingest, bench, repl.
// Exit codes: 0 success, 1 user error (parse/validation/empty version
// selection), 2 I/O error, 3 internal defect.

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "aiql/bench.hpp"
#include "aiql/complete.hpp"
#include "aiql/evaluator.hpp"
#include "aiql/ingest.hpp"
#include "aiql/metrics.hpp"
#include "aiql/parser.hpp"
#include "aiql/serializer.hpp"
#include "aiql/validator.hpp"

namespace fs = std::filesystem;
using namespace aiql;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUser = 1;
constexpr int kExitIo = 2;
constexpr int kExitInternal = 3;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in || !fs::is_regular_file(path)) {
    throw IoError(make_error("open", "cannot open file: " + path.string()));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError(make_error("write", "cannot write file: " + path.string()));
  }
  out << bytes;
}

Schema load_schema_or_die(const std::string& schema_path) {
  if (schema_path.empty()) {
    throw IoError(make_error("schema",
                             "no schema given (pass --schema or set AIQL_SCHEMA)"));
  }
  return Schema::load_file(schema_path);
}

void print_diagnostics(const std::vector<Diagnostic>& diags) {
  for (const Diagnostic& d : diags) std::cerr << d.render() << "\n";
}

std::string diagnostics_json(const std::vector<Diagnostic>& diags) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Diagnostic& d : diags) {
    nlohmann::ordered_json entry;
    entry["severity"] = d.severity == Severity::Error ? "error" : "warning";
    entry["code"] = d.code;
    entry["message"] = d.message;
    if (d.pos) {
      entry["line"] = d.pos->line;
      entry["column"] = d.pos->column;
    }
    if (!d.source.empty()) entry["source"] = d.source;
    arr.push_back(std::move(entry));
  }
  return arr.dump(2) + "\n";
}

struct RunArgs {
  std::string query_file;
  std::string schema_path;
  std::string model_override;
  std::string out_file;
  bool compact = false;
};

int cmd_run(const RunArgs& args) {
  const Schema schema = load_schema_or_die(args.schema_path);
  const std::string text = read_file(args.query_file);
  const QueryAst ast = parse_query(text, args.query_file);

  // Relative header paths resolve against the query file's directory.
  fs::path model_path;
  if (!args.model_override.empty()) {
    model_path = args.model_override;
  } else {
    model_path = ast.model_path;
    if (model_path.is_relative()) {
      model_path = fs::path(args.query_file).parent_path() / model_path;
    }
  }
  const VersionedModel model = load_model_file(model_path, schema);

  ValidationResult validated = validate_query(ast, schema, args.query_file);
  print_diagnostics(validated.diagnostics);
  if (!validated.ok()) return kExitUser;

  const QueryResult result = evaluate(*validated.query, model, schema);
  const std::string payload =
      serialize(result, *validated.query, schema, SerializeOptions{args.compact});
  if (args.out_file.empty()) {
    std::cout << payload;
  } else {
    write_file(args.out_file, payload);
  }
  return kExitOk;
}

int cmd_validate(const std::string& query_file, const std::string& schema_path,
                 bool as_json) {
  const Schema schema = load_schema_or_die(schema_path);
  const std::string text = read_file(query_file);

  std::vector<Diagnostic> diags;
  bool ok = false;
  try {
    ValidationResult validated = validate_query(parse_query(text, query_file), schema,
                                                query_file);
    diags = validated.diagnostics;
    ok = validated.ok();
  } catch (const SyntaxError& e) {
    diags = e.diagnostics();
  }

  if (as_json) {
    std::cout << diagnostics_json(diags);
  } else {
    print_diagnostics(diags);
    if (ok) std::cout << query_file << ": ok\n";
  }
  return ok ? kExitOk : kExitUser;
}

int cmd_metrics(const std::vector<std::string>& query_files) {
  std::printf("%-32s %8s %8s %8s %10s %8s\n", "query", "queries", "outputs", "chars",
              "keywords", "unique");
  for (const std::string& file : query_files) {
    const QueryMetrics m = query_metrics(read_file(file), file);
    std::printf("%-32s %8d %8d %8d %10d %8d\n",
                fs::path(file).filename().string().c_str(), m.query_count,
                m.output_count, m.char_count, m.keyword_total, m.keyword_unique);
  }
  return kExitOk;
}

struct IngestArgs {
  std::string root;
  std::string schema_path;
  std::string out_file;
  std::string system_name = "system";
  std::vector<std::string> includes;
  std::vector<std::string> excludes;
  bool imports = false;
};

int cmd_ingest(const IngestArgs& args) {
  const Schema schema = load_schema_or_die(args.schema_path);
  IngestConfig config;
  config.root = args.root;
  config.include_globs = args.includes;
  config.exclude_globs = args.excludes;
  config.system_name = args.system_name;
  config.edge_mode =
      args.imports ? EdgeMode::ContainmentPlusImports : EdgeMode::ContainmentOnly;

  IngestResult result = scan_tree(config, schema);
  print_diagnostics(result.warnings);
  const std::string bytes = serialize_model(result.model, schema);
  if (args.out_file.empty()) {
    std::cout << bytes;
  } else {
    write_file(args.out_file, bytes);
    std::cerr << "wrote " << args.out_file << " ("
              << result.model.snapshot(1).elements.size() << " elements)\n";
  }
  return kExitOk;
}

struct BenchArgs {
  std::string schema_path;
  std::string sizes = "1000,10000,50000";
  std::uint64_t seed = 42;
  int reps = 5;
  std::string queries_dir;
  std::string json_file;
};

int cmd_bench(const BenchArgs& args) {
  const Schema schema = load_schema_or_die(args.schema_path);

  std::vector<int> sizes;
  {
    std::stringstream ss(args.sizes);
    std::string item;
    while (std::getline(ss, item, ',')) {
      int value = 0;
      const auto res = std::from_chars(item.data(), item.data() + item.size(), value);
      if (res.ec != std::errc() || res.ptr != item.data() + item.size() || value < 1) {
        throw Error("usage", make_error("sizes", "--sizes expects positive integers, got \"" +
                                                     item + "\""));
      }
      sizes.push_back(value);
    }
    if (sizes.empty()) {
      throw Error("usage", make_error("sizes", "--sizes must name at least one size"));
    }
  }

  // Element budget: half components (1:55 subsystem:class split), half edges.
  std::vector<VersionedModel> models;
  std::vector<BenchModel> refs;
  for (int size : sizes) {
    SynthParams p;
    const int budget = (size - 1) / 2;
    p.component_count = std::max(1, budget / 56);
    p.class_count = budget - p.component_count;
    p.edge_count = size - 1 - budget;
    p.handler_fraction = 0.1;
    p.seed = args.seed;
    models.push_back(generate_model(p));
  }
  for (std::size_t i = 0; i < models.size(); ++i) {
    refs.push_back(BenchModel{
        std::to_string(models[i].snapshot(1).elements.size()) + "-elements",
        &models[i]});
  }

  std::vector<BenchQuery> queries;
  fs::path dir = args.queries_dir;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".aiql") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw IoError(make_error("queries", "no .aiql files in " + dir.string()));
  }
  for (const fs::path& f : files) {
    queries.push_back(BenchQuery{f.stem().string(), read_file(f)});
  }

  const BenchReport report = run_benchmark(refs, queries, args.reps, schema);
  std::cout << report.render_table();
  if (!args.json_file.empty()) {
    write_file(args.json_file, report.to_json());
    std::cerr << "wrote " << args.json_file << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// REPL

void repl_help() {
  std::cout << "Enter a query across multiple lines; finish with a line "
               "containing only ;;\n"
               "The MODEL/VERSION header is optional: the loaded model and "
               "VERSION LAST are assumed.\n"
               "End a line with ? to see completion proposals at that point "
               "(the probe line is not kept).\n"
               "Meta commands: :schema  :templates  :help  :quit\n";
}

// Queries typed without a header run against the loaded model at VERSION LAST.
std::string with_repl_header(const std::string& buffer) {
  const auto first = buffer.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && buffer.compare(first, 5, "MODEL") == 0) {
    return buffer;
  }
  return "MODEL \"repl\";\nVERSION LAST;\n" + buffer;
}

void repl_print_schema(const Schema& schema) {
  for (const ClassDef& c : schema.classes()) {
    std::cout << (c.abstract ? "abstract class " : "class ") << c.name;
    if (c.supertype) std::cout << " : " << *c.supertype;
    std::cout << "\n";
    for (const AttrDef* a : schema.all_attributes(c.name)) {
      std::cout << "  attr " << a->name << " : " << attr_type_name(a->type);
      if (a->type == AttrType::Enum) {
        std::cout << " {";
        for (std::size_t i = 0; i < a->literals.size(); ++i) {
          if (i) std::cout << ", ";
          std::cout << a->literals[i];
        }
        std::cout << "}";
      }
      std::cout << "\n";
    }
    for (const RefDef* r : schema.all_references(c.name)) {
      std::cout << "  ref " << r->name << " -> " << r->target << " ["
                << (r->many ? "many" : "one") << "]\n";
    }
    for (const ShortcutDef* s : schema.shortcuts_for(c.name)) {
      std::cout << "  shortcut " << s->name << " -> " << s->target << " [";
      for (std::size_t i = 0; i < s->path.size(); ++i) {
        if (i) std::cout << ".";
        std::cout << s->path[i];
      }
      std::cout << "]\n";
    }
  }
}

int cmd_repl(const std::string& schema_path, const std::string& model_path) {
  const Schema schema = load_schema_or_die(schema_path);
  std::optional<VersionedModel> model;
  if (!model_path.empty()) {
    model = load_model_file(model_path, schema);
    std::cout << "loaded model " << model->name << " (" << model->version_count()
              << " version(s))\n";
  } else {
    std::cout << "no model loaded; queries will only be validated\n";
  }
  repl_help();

  std::string buffer;
  std::vector<std::string> last_templates;
  std::string line;
  std::cout << "aiql> " << std::flush;
  while (std::getline(std::cin, line)) {
    if (line == ":quit" || line == ":q") return kExitOk;
    if (line == ":help") {
      repl_help();
    } else if (line == ":schema") {
      repl_print_schema(schema);
    } else if (line == ":templates") {
      if (last_templates.empty()) {
        std::cout << "no templates yet; run a query first\n";
      } else {
        for (const std::string& t : last_templates) std::cout << t << "\n";
      }
    } else if (!line.empty() && line.back() == '?') {
      const std::string probe =
          with_repl_header(buffer + line.substr(0, line.size() - 1));
      const auto proposals = complete_proposals(probe, schema);
      if (proposals.empty()) {
        std::cout << "(no proposals)\n";
      } else {
        for (const std::string& p : proposals) std::cout << p << "\n";
      }
    } else if (line == ";;") {
      try {
        ValidationResult validated = validate_query(
            parse_query(with_repl_header(buffer), "<repl>"), schema, "<repl>");
        print_diagnostics(validated.diagnostics);
        if (validated.ok()) {
          last_templates.clear();
          for (const ResolvedTemplate& t : validated.query->templates()) {
            last_templates.push_back(t.ast->identifier + " : " + t.ast->type_name);
          }
          if (model) {
            const QueryResult result = evaluate(*validated.query, *model, schema);
            std::cout << serialize(result, *validated.query, schema);
          } else {
            std::cout << "ok (no model loaded)\n";
          }
        }
      } catch (const Error& e) {
        print_diagnostics(e.diagnostics());
      }
      buffer.clear();
    } else {
      buffer += line;
      buffer += "\n";
    }
    std::cout << (buffer.empty() ? "aiql> " : "  ... ") << std::flush;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AIQL: architecture information query language"};
  app.require_subcommand(1);

  const char* env_schema = std::getenv("AIQL_SCHEMA");
  const std::string default_schema = env_schema ? env_schema : "";

  RunArgs run_args;
  run_args.schema_path = default_schema;
  CLI::App* run = app.add_subcommand("run", "execute a query file");
  run->add_option("query", run_args.query_file, "query file (.aiql)")->required();
  run->add_option("--schema", run_args.schema_path, "schema file");
  run->add_option("--model-override", run_args.model_override,
                  "model file overriding the query header");
  run->add_option("--out", run_args.out_file, "write JSON here instead of stdout");
  run->add_flag("--compact", run_args.compact, "compact JSON output");

  std::string validate_file;
  std::string validate_schema = default_schema;
  bool validate_json = false;
  CLI::App* validate = app.add_subcommand("validate", "parse and type-check a query");
  validate->add_option("query", validate_file, "query file (.aiql)")->required();
  validate->add_option("--schema", validate_schema, "schema file");
  validate->add_flag("--json", validate_json, "machine-readable diagnostics");

  std::vector<std::string> metrics_files;
  CLI::App* metrics = app.add_subcommand("metrics", "query characteristic counts");
  metrics->add_option("query", metrics_files, "query files (.aiql)")->required();

  IngestArgs ingest_args;
  ingest_args.schema_path = default_schema;
  CLI::App* ingest = app.add_subcommand("ingest", "build a structural model from a tree");
  ingest->add_option("root", ingest_args.root, "source tree root")->required();
  ingest->add_option("--schema", ingest_args.schema_path, "schema file");
  ingest->add_option("--out", ingest_args.out_file, "output model file");
  ingest->add_option("--system-name", ingest_args.system_name, "SoftwareSystem name");
  ingest->add_option("--include", ingest_args.includes, "include glob (repeatable)");
  ingest->add_option("--exclude", ingest_args.excludes, "exclude glob (repeatable)");
  ingest->add_flag("--imports", ingest_args.imports,
                   "add import edges from textual import/include lines");

  BenchArgs bench_args;
  bench_args.schema_path = default_schema;
  CLI::App* bench = app.add_subcommand("bench", "scalability benchmark on synthetic models");
  bench->add_option("--schema", bench_args.schema_path, "schema file");
  bench->add_option("--sizes", bench_args.sizes, "comma-separated element counts");
  bench->add_option("--seed", bench_args.seed, "generator seed");
  bench->add_option("--reps", bench_args.reps, "timed repetitions per pair")
      ->check(CLI::PositiveNumber);
  bench->add_option("--queries", bench_args.queries_dir, "directory of .aiql files")
      ->required();
  bench->add_option("--json", bench_args.json_file, "also write a JSON report");

  std::string repl_schema = default_schema;
  std::string repl_model;
  CLI::App* repl = app.add_subcommand("repl", "interactive session with completion");
  repl->add_option("--schema", repl_schema, "schema file");
  repl->add_option("--model", repl_model, "model file to query");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUser;
  }

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (validate->parsed()) return cmd_validate(validate_file, validate_schema, validate_json);
    if (metrics->parsed()) return cmd_metrics(metrics_files);
    if (ingest->parsed()) return cmd_ingest(ingest_args);
    if (bench->parsed()) return cmd_bench(bench_args);
    if (repl->parsed()) return cmd_repl(repl_schema, repl_model);
  } catch (const IoError& e) {
    print_diagnostics(e.diagnostics());
    return kExitIo;
  } catch (const Error& e) {
    print_diagnostics(e.diagnostics());
    return kExitUser;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;  // unreachable
}

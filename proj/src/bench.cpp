#include "aiql/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include <json.hpp>

#include "aiql/evaluator.hpp"
#include "aiql/parser.hpp"
#include "aiql/serializer.hpp"
#include "aiql/validator.hpp"

namespace aiql {

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::string pad_id(const char* prefix, int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%07d", prefix, i);
  return buf;
}

}  // namespace

VersionedModel generate_model(const SynthParams& params) {
  std::mt19937_64 rng(params.seed);
  VersionedModel model;
  model.name = "synthetic";
  VersionSnapshot snapshot;
  snapshot.index = 1;

  const auto make_component = [](std::string id, std::string name, const char* type) {
    ModelElement e;
    e.id = std::move(id);
    e.class_name = "TechnicalComponent";
    e.attributes["Name"] = std::move(name);
    e.attributes["Type"] = EnumVal{type};
    e.attributes["Version"] = std::int64_t{1};
    e.references["ComponentEdge"] = {};
    return e;
  };

  ModelElement system;
  system.id = "sys";
  system.class_name = "SoftwareSystem";
  system.attributes["Name"] = std::string("synthetic");
  system.references["ComponentEdge"] = {};
  snapshot.elements.emplace(system.id, std::move(system));

  std::vector<std::string> subsystems;
  for (int i = 0; i < params.component_count; ++i) {
    const std::string id = pad_id("sub-", i);
    snapshot.elements.emplace(
        id, make_component(id, "subsystem" + std::to_string(i), "SUBSYSTEM"));
    subsystems.push_back(id);
  }

  // handler_fraction of the classes get a *Handler name, picked by shuffle.
  std::vector<int> class_order(static_cast<std::size_t>(params.class_count));
  for (int i = 0; i < params.class_count; ++i) class_order[static_cast<std::size_t>(i)] = i;
  std::shuffle(class_order.begin(), class_order.end(), rng);
  const auto handler_count = static_cast<std::size_t>(
      std::lround(params.handler_fraction * params.class_count));
  std::vector<bool> is_handler(static_cast<std::size_t>(params.class_count), false);
  for (std::size_t i = 0; i < handler_count && i < class_order.size(); ++i) {
    is_handler[static_cast<std::size_t>(class_order[i])] = true;
  }

  std::vector<std::string> classes;
  for (int i = 0; i < params.class_count; ++i) {
    const std::string id = pad_id("cls-", i);
    std::string name = "Class" + std::to_string(i);
    if (is_handler[static_cast<std::size_t>(i)]) name += "Handler";
    snapshot.elements.emplace(id, make_component(id, std::move(name), "CLASS"));
    classes.push_back(id);
  }

  // Containment parents: subsystems hang off the system or an earlier
  // subsystem, classes hang off a subsystem (or the system when none exist).
  std::vector<std::pair<std::string, std::string>> containment;
  for (int i = 0; i < params.component_count; ++i) {
    std::string parent = "sys";
    if (i > 0) {
      std::uniform_int_distribution<int> pick(-1, i - 1);
      const int p = pick(rng);
      if (p >= 0) parent = subsystems[static_cast<std::size_t>(p)];
    }
    containment.emplace_back(parent, subsystems[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i < params.class_count; ++i) {
    std::string parent = "sys";
    if (!subsystems.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, subsystems.size() - 1);
      parent = subsystems[pick(rng)];
    }
    containment.emplace_back(parent, classes[static_cast<std::size_t>(i)]);
  }

  std::vector<std::string> all_components;
  all_components.push_back("sys");
  all_components.insert(all_components.end(), subsystems.begin(), subsystems.end());
  all_components.insert(all_components.end(), classes.begin(), classes.end());

  const auto add_edge = [&snapshot](const std::string& id, const std::string& parent,
                                    const std::string& child) {
    ModelElement edge;
    edge.id = id;
    edge.class_name = "ComponentEdge";
    edge.references["Parent"] = {parent};
    edge.references["Child"] = {child};
    snapshot.elements.at(parent).references["ComponentEdge"].push_back(id);
    snapshot.elements.emplace(id, std::move(edge));
  };

  int edge_index = 0;
  for (const auto& [parent, child] : containment) {
    if (edge_index >= params.edge_count) break;
    add_edge(pad_id("edge-", edge_index), parent, child);
    ++edge_index;
  }
  std::uniform_int_distribution<std::size_t> any(0, all_components.size() - 1);
  while (edge_index < params.edge_count) {
    add_edge(pad_id("edge-", edge_index), all_components[any(rng)],
             all_components[any(rng)]);
    ++edge_index;
  }

  model.versions.push_back(std::move(snapshot));
  return model;
}

BenchReport run_benchmark(const std::vector<BenchModel>& models,
                          const std::vector<BenchQuery>& queries, int repetitions,
                          const Schema& schema) {
  using clock = std::chrono::steady_clock;
  const auto ms_since = [](clock::time_point start) {
    return std::chrono::duration<double, std::milli>(clock::now() - start).count();
  };

  BenchReport report;
  for (const BenchModel& m : models) {
    for (const BenchQuery& q : queries) {
      const auto pipeline = [&](double& exec_ms, double& marshal_ms) {
        const auto t0 = clock::now();
        ValidationResult validated = validate_query(parse_query(q.text, q.label),
                                                    schema, q.label);
        if (!validated.ok()) {
          throw Error("validate", validated.diagnostics);
        }
        const QueryResult result = evaluate(*validated.query, *m.model, schema);
        exec_ms = ms_since(t0);

        const auto t1 = clock::now();
        std::string payload = serialize(result, *validated.query, schema);
        marshal_ms = ms_since(t1);
        return payload;
      };

      BenchRow row;
      row.system = m.label;
      row.query = q.label;
      row.element_count = m.model->snapshot(1).elements.size();

      double exec = 0, marshal = 0;
      const std::string warm_payload = pipeline(exec, marshal);  // warm-up
      row.payload_hash = fnv1a(warm_payload);
      row.payload_bytes = warm_payload.size();

      double exec_total = 0, marshal_total = 0;
      for (int rep = 0; rep < repetitions; ++rep) {
        const std::string payload = pipeline(exec, marshal);
        if (payload != warm_payload) {
          throw Error("bench", make_error("nondeterministic",
                                          "payload changed between repetitions for " +
                                              m.label + "/" + q.label));
        }
        exec_total += exec;
        marshal_total += marshal;
      }
      row.execution_ms = exec_total / repetitions;
      row.marshaling_ms = marshal_total / repetitions;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string BenchReport::render_table() const {
  std::size_t system_w = 6, query_w = 5;
  for (const BenchRow& r : rows) {
    system_w = std::max(system_w, r.system.size());
    query_w = std::max(query_w, r.query.size());
  }
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-*s  %-*s  %10s  %12s  %14s\n",
                static_cast<int>(system_w), "system", static_cast<int>(query_w),
                "query", "elements", "exec (ms)", "marshal (ms)");
  out << line;
  for (const BenchRow& r : rows) {
    std::snprintf(line, sizeof(line), "%-*s  %-*s  %10zu  %12.3f  %14.3f\n",
                  static_cast<int>(system_w), r.system.c_str(),
                  static_cast<int>(query_w), r.query.c_str(), r.element_count,
                  r.execution_ms, r.marshaling_ms);
    out << line;
  }
  return out.str();
}

std::string BenchReport::to_json() const {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const BenchRow& r : rows) {
    nlohmann::ordered_json row;
    row["system"] = r.system;
    row["query"] = r.query;
    row["elements"] = r.element_count;
    row["executionTimeMs"] = r.execution_ms;
    row["marshalingTimeMs"] = r.marshaling_ms;
    row["payloadBytes"] = r.payload_bytes;
    doc.push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

}  // namespace aiql

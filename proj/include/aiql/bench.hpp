#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aiql/model.hpp"

namespace aiql {

/// Knobs for the synthetic structural-model generator.
struct SynthParams {
  int component_count = 0;       // SUBSYSTEM components
  int class_count = 0;           // CLASS components
  int edge_count = 0;            // total ComponentEdge elements
  double handler_fraction = 0.0; // share of classes named *Handler
  std::uint64_t seed = 1;
};

/// Seeded-deterministic model conforming to the structural schema: one
/// SoftwareSystem, a containment tree of SUBSYSTEM components with CLASS
/// components under them, exactly edge_count ComponentEdges. Containment
/// edges come first; any surplus becomes random extra edges.
VersionedModel generate_model(const SynthParams& params);

struct BenchRow {
  std::string system;
  std::string query;
  std::size_t element_count = 0;
  double execution_ms = 0.0;   // parse + validate + evaluate
  double marshaling_ms = 0.0;  // serialize only
  std::uint64_t payload_hash = 0;
  std::size_t payload_bytes = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  std::string render_table() const;
  std::string to_json() const;
};

struct BenchModel {
  std::string label;
  const VersionedModel* model = nullptr;
};

struct BenchQuery {
  std::string label;
  std::string text;
};

/// Times every (model, query) pair: one warm-up run, then `repetitions`
/// timed runs averaged. Execution and marshaling are timed separately; the
/// serialized payload must be identical across repetitions.
BenchReport run_benchmark(const std::vector<BenchModel>& models,
                          const std::vector<BenchQuery>& queries, int repetitions,
                          const Schema& schema);

std::uint64_t fnv1a(std::string_view bytes);

}  // namespace aiql

#include "aiql/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <set>

namespace aiql {

namespace fs = std::filesystem;

std::vector<std::string> IngestConfig::default_import_patterns() {
  return {
      R"(^\s*#\s*include\s*["<]([^">]+)[">])",       // C/C++
      R"(^\s*import\s+(?:static\s+)?([\w.]+)\s*;)",  // Java
      R"(^\s*from\s+([\w.]+)\s+import\b)",           // Python
      R"(^\s*import\s+([\w.]+)\s*$)",                // Python
  };
}

bool glob_match(std::string_view pattern, std::string_view path) {
  // Translate once per call; ingest pattern lists are tiny.
  std::string re;
  re.reserve(pattern.size() * 2);
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const char c = pattern[i];
    if (c == '*') {
      if (i + 1 < pattern.size() && pattern[i + 1] == '*') {
        re += ".*";
        ++i;
      } else {
        re += "[^/]*";
      }
    } else if (c == '?') {
      re += "[^/]";
    } else if (std::string_view("\\^$.|+()[]{}").find(c) != std::string_view::npos) {
      re += '\\';
      re += c;
    } else {
      re += c;
    }
  }
  return std::regex_match(path.begin(), path.end(), std::regex(re));
}

namespace {

std::string stem_of(const std::string& rel_path) {
  const auto slash = rel_path.find_last_of('/');
  std::string base = slash == std::string::npos ? rel_path : rel_path.substr(slash + 1);
  const auto dot = base.find_last_of('.');
  if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
  return base;
}

// Last path-ish segment of an import spec: "a/b/c.h" -> "c", "a.b.C" -> "C".
std::string import_stem(const std::string& spec) {
  std::string last = spec;
  const auto slash = last.find_last_of("/\\");
  if (slash != std::string::npos) last = last.substr(slash + 1);
  return stem_of(last);
}

class TreeScanner {
 public:
  TreeScanner(const IngestConfig& config, const Schema& schema)
      : config_(config), schema_(schema) {}

  IngestResult run() {
    for (const char* cls : {"SoftwareSystem", "TechnicalComponent", "ComponentEdge"}) {
      if (!schema_.find_class(cls)) {
        throw SchemaError(make_error(
            "unknown-class",
            std::string("ingest needs the structural schema; missing class \"") + cls +
                "\""));
      }
    }
    if (!fs::exists(config_.root) || !fs::is_directory(config_.root)) {
      throw IoError(make_error("root", "ingest root is not a readable directory: " +
                                           config_.root.string()));
    }
    try {
      collect_files();
    } catch (const fs::filesystem_error& e) {
      throw IoError(make_error("scan", std::string("cannot scan tree: ") + e.what()));
    }
    if (files_.empty() && !config_.include_globs.empty()) {
      warnings_.push_back(make_warning(
          "no-match", "include globs matched no file under " + config_.root.string()));
    }
    build_elements();
    if (config_.edge_mode == EdgeMode::ContainmentPlusImports) add_import_edges();
    return finish();
  }

 private:
  bool included(const std::string& rel) const {
    bool in = config_.include_globs.empty();
    for (const std::string& g : config_.include_globs) in = in || glob_match(g, rel);
    if (!in) return false;
    for (const std::string& g : config_.exclude_globs) {
      if (glob_match(g, rel)) return false;
    }
    return true;
  }

  void collect_files() {
    for (const auto& entry : fs::recursive_directory_iterator(config_.root)) {
      if (!entry.is_regular_file()) continue;
      const std::string rel =
          entry.path().lexically_relative(config_.root).generic_string();
      if (included(rel)) files_.push_back(rel);
    }
    std::sort(files_.begin(), files_.end());

    // Directories on the path to any included file.
    for (const std::string& rel : files_) {
      std::size_t pos = rel.find('/');
      while (pos != std::string::npos) {
        dirs_.insert(rel.substr(0, pos));
        pos = rel.find('/', pos + 1);
      }
    }
  }

  std::string parent_component(const std::string& rel) const {
    const auto slash = rel.find_last_of('/');
    if (slash == std::string::npos) return system_id_;
    return "dir:" + rel.substr(0, slash);
  }

  ModelElement component(std::string id, std::string name, std::string type) {
    ModelElement e;
    e.id = std::move(id);
    e.class_name = id_is_system(e.id) ? "SoftwareSystem" : "TechnicalComponent";
    e.attributes["Name"] = std::move(name);
    if (!id_is_system(e.id)) {
      e.attributes["Type"] = EnumVal{std::move(type)};
      e.attributes["Version"] = std::int64_t{1};
    }
    e.references["ComponentEdge"] = {};
    return e;
  }

  bool id_is_system(const std::string& id) const { return id == system_id_; }

  void add_edge(const std::string& edge_id, const std::string& parent,
                const std::string& child) {
    ModelElement edge;
    edge.id = edge_id;
    edge.class_name = "ComponentEdge";
    edge.references["Parent"] = {parent};
    edge.references["Child"] = {child};
    add_element(std::move(edge));
    elements_.at(parent).references["ComponentEdge"].push_back(edge_id);
  }

  void add_element(ModelElement e) {
    const std::string id = e.id;
    if (!elements_.emplace(id, std::move(e)).second) {
      throw ModelError(make_error("id-collision", "ingest produced duplicate id \"" +
                                                      id + "\""));
    }
  }

  void build_elements() {
    add_element(component(system_id_, config_.system_name, ""));
    for (const std::string& dir : dirs_) {
      add_element(component("dir:" + dir, stem_of(dir), "SUBSYSTEM"));
    }
    for (const std::string& file : files_) {
      add_element(component("file:" + file, stem_of(file), "CLASS"));
    }
    // Containment edges, one per non-root component.
    for (const std::string& dir : dirs_) {
      add_edge("edge:dir:" + dir, parent_component(dir), "dir:" + dir);
    }
    for (const std::string& file : files_) {
      add_edge("edge:file:" + file, parent_component(file), "file:" + file);
    }
  }

  void add_import_edges() {
    std::vector<std::regex> patterns;
    for (const std::string& p : config_.import_patterns) patterns.emplace_back(p);

    // Imported names resolve by unique file stem.
    std::map<std::string, std::vector<std::string>> by_stem;
    for (const std::string& file : files_) by_stem[stem_of(file)].push_back(file);

    for (const std::string& file : files_) {
      std::ifstream in(config_.root / fs::path(file));
      if (!in) continue;
      std::set<std::string> targets;
      std::string line;
      while (std::getline(in, line)) {
        for (const std::regex& re : patterns) {
          std::smatch m;
          if (!std::regex_search(line, m, re)) continue;
          const auto it = by_stem.find(import_stem(m[1].str()));
          if (it == by_stem.end() || it->second.size() != 1) break;  // unresolved/ambiguous
          if (it->second.front() != file) targets.insert(it->second.front());
          break;
        }
      }
      for (const std::string& target : targets) {
        add_edge("imp:" + file + "->" + target, "file:" + file, "file:" + target);
      }
    }
  }

  IngestResult finish() {
    VersionedModel model;
    model.name = config_.system_name;
    VersionSnapshot snapshot;
    snapshot.index = 1;
    for (auto& [id, element] : elements_) {
      const auto it = element.references.find("ComponentEdge");
      if (it != element.references.end()) std::sort(it->second.begin(), it->second.end());
      snapshot.elements.emplace(id, std::move(element));
    }
    model.versions.push_back(std::move(snapshot));
    return IngestResult{std::move(model), std::move(warnings_)};
  }

  const IngestConfig& config_;
  const Schema& schema_;
  const std::string system_id_ = "system";
  std::vector<std::string> files_;
  std::set<std::string> dirs_;
  std::map<std::string, ModelElement> elements_;
  std::vector<Diagnostic> warnings_;
};

}  // namespace

IngestResult scan_tree(const IngestConfig& config, const Schema& schema) {
  return TreeScanner(config, schema).run();
}

}  // namespace aiql

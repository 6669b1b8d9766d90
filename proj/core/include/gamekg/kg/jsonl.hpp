#pragma once

// Line-delimited JSON persistence. Records are tagged by "kind" and written
// documents first (by id), then entities (by id), then edges ordered by
// (subject, predicate, object). Each record kind has a fixed key order.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "gamekg/kg/graph.hpp"

namespace gamekg::kg {

nlohmann::ordered_json to_json(const Document& document);
nlohmann::ordered_json to_json(const Entity& entity);
nlohmann::ordered_json to_json(const Edge& edge);
nlohmann::ordered_json to_json(const Provenance& provenance);

void write_jsonl(const KnowledgeGraph& graph, std::ostream& out);
std::string to_jsonl(const KnowledgeGraph& graph);

/// Throws Error{parse} naming the 1-based line for malformed JSON or unknown
/// kinds, and Error{integrity} (also naming the line) for dangling references.
KnowledgeGraph read_jsonl(std::istream& in);
KnowledgeGraph from_jsonl(const std::string& text);

KnowledgeGraph load_graph(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
void save_graph(const KnowledgeGraph& graph, const std::filesystem::path& path);

}  // namespace gamekg::kg

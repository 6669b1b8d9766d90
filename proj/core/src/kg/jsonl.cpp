#include "gamekg/kg/jsonl.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gamekg/error.hpp"

namespace gamekg::kg {

using nlohmann::ordered_json;

ordered_json to_json(const Document& document) {
  ordered_json j;
  j["kind"] = "document";
  j["id"] = document.id;
  j["title"] = document.title;
  j["body"] = document.body;
  j["source_uri"] = document.source_uri ? ordered_json(*document.source_uri) : ordered_json();
  return j;
}

ordered_json to_json(const Entity& entity) {
  ordered_json j;
  j["kind"] = "entity";
  j["id"] = entity.id;
  j["name"] = entity.canonical_name;
  j["aliases"] = entity.aliases;
  j["type"] = to_string(entity.type);
  j["source_doc_ids"] = entity.source_doc_ids;
  return j;
}

ordered_json to_json(const Provenance& provenance) {
  ordered_json j;
  if (const auto* source = std::get_if<ExplicitSource>(&provenance)) {
    j["kind"] = "explicit";
    j["doc_id"] = source->doc_id;
    j["sentence_index"] = source->sentence_index;
  } else {
    j["kind"] = "human";
    j["first_proposer"] = std::get<HumanProposal>(provenance).first_proposer;
  }
  return j;
}

ordered_json to_json(const Edge& edge) {
  ordered_json j;
  j["kind"] = "edge";
  j["id"] = edge.id;
  j["subject"] = edge.subject_id;
  j["predicate"] = edge.predicate;
  j["object"] = edge.object_id;
  j["provenance"] = to_json(edge.provenance);
  j["weight"] = edge.weight;
  j["status"] = to_string(edge.status);
  return j;
}

void write_jsonl(const KnowledgeGraph& graph, std::ostream& out) {
  for (const auto& [id, document] : graph.documents()) out << to_json(document).dump() << '\n';
  for (const auto& [id, entity] : graph.entities()) out << to_json(entity).dump() << '\n';
  for (const Edge* edge : graph.edges_by_triple()) out << to_json(*edge).dump() << '\n';
}

std::string to_jsonl(const KnowledgeGraph& graph) {
  std::ostringstream out;
  write_jsonl(graph, out);
  return out.str();
}

namespace {

Document document_from(const nlohmann::json& j) {
  Document d;
  d.id = j.at("id").get<std::string>();
  d.title = j.value("title", "");
  d.body = j.at("body").get<std::string>();
  if (auto it = j.find("source_uri"); it != j.end() && !it->is_null()) {
    d.source_uri = it->get<std::string>();
  }
  return d;
}

Entity entity_from(const nlohmann::json& j) {
  Entity e;
  e.id = j.at("id").get<std::string>();
  e.canonical_name = j.at("name").get<std::string>();
  e.aliases = j.at("aliases").get<std::set<std::string>>();
  e.type = entity_type_from_string(j.at("type").get<std::string>());
  e.source_doc_ids = j.at("source_doc_ids").get<std::set<std::string>>();
  return e;
}

Provenance provenance_from(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "explicit") {
    return ExplicitSource{j.at("doc_id").get<std::string>(),
                          j.at("sentence_index").get<std::size_t>()};
  }
  if (kind == "human") return HumanProposal{j.at("first_proposer").get<std::string>()};
  fail(ErrorCode::parse, "unknown provenance kind '" + kind + "'");
}

Edge edge_from(const nlohmann::json& j) {
  Edge e;
  e.id = j.at("id").get<std::string>();
  e.subject_id = j.at("subject").get<std::string>();
  e.predicate = j.at("predicate").get<std::string>();
  e.object_id = j.at("object").get<std::string>();
  e.provenance = provenance_from(j.at("provenance"));
  e.weight = j.at("weight").get<double>();
  e.status = edge_status_from_string(j.at("status").get<std::string>());
  return e;
}

}  // namespace

KnowledgeGraph read_jsonl(std::istream& in) {
  KnowledgeGraph graph;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    try {
      const auto record = nlohmann::json::parse(line);
      const auto kind = record.at("kind").get<std::string>();
      if (kind == "document") {
        graph.add_document(document_from(record));
      } else if (kind == "entity") {
        graph.insert_entity(entity_from(record));
      } else if (kind == "edge") {
        graph.insert_edge(edge_from(record));
      } else {
        fail(ErrorCode::parse, "unknown record kind '" + kind + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::parse, where + e.what());
    } catch (const Error& e) {
      throw Error(e.code(), where + e.what());
    }
  }
  return graph;
}

KnowledgeGraph from_jsonl(const std::string& text) {
  std::istringstream in(text);
  return read_jsonl(in);
}

KnowledgeGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open graph file " + path.string());
  try {
    return read_jsonl(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void save_graph(const KnowledgeGraph& graph, const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::io, "cannot write graph file " + tmp.string());
    write_jsonl(graph, out);
    out.flush();
    if (!out) fail(ErrorCode::io, "failed writing graph file " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::io, "cannot replace " + path.string() + ": " + ec.message());
}

}  // namespace gamekg::kg

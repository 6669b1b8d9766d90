#include "gamekg/kg/dot.hpp"

#include <sstream>

namespace gamekg::kg {

namespace {

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string export_dot(const KnowledgeGraph& graph) {
  std::ostringstream out;
  out << "digraph knowledge_graph {\n";
  out << "  node [shape=box];\n";
  for (const auto& [id, entity] : graph.entities()) {
    out << "  " << quoted(id) << " [label=" << quoted(entity.canonical_name) << "];\n";
  }
  for (const Edge* edge : graph.edges_by_triple()) {
    if (!edge->is_active()) continue;
    out << "  " << quoted(edge->subject_id) << " -> " << quoted(edge->object_id)
        << " [id=" << quoted(edge->id) << ", label=" << quoted(edge->predicate)
        << ", style=" << (edge->is_human_proposed() ? "dashed" : "solid") << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace gamekg::kg

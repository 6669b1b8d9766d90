#pragma once

#include <string>

#include "gamekg/kg/graph.hpp"

namespace gamekg::kg {

/// Graphviz rendering. Explicit edges are solid, human-proposed edges are
/// `style=dashed`, filtered edges are omitted, predicates become labels.
std::string export_dot(const KnowledgeGraph& graph);

}  // namespace gamekg::kg

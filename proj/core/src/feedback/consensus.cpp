#include "gamekg/feedback/consensus.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "gamekg/error.hpp"

namespace gamekg::feedback {

void ConsensusThresholds::validate() const {
  if (!std::isfinite(accept) || accept < 0.0) {
    fail(ErrorCode::validation, "accept threshold must be >= 0");
  }
  if (!std::isfinite(reject) || reject > 0.0) {
    fail(ErrorCode::validation, "reject threshold must be <= 0");
  }
}

kg::EdgeStatus consensus_status(const kg::Edge& edge, const ConsensusThresholds& thresholds) {
  if (edge.is_human_proposed()) {
    return edge.weight >= thresholds.accept ? kg::EdgeStatus::active : kg::EdgeStatus::filtered;
  }
  return edge.weight <= thresholds.reject ? kg::EdgeStatus::filtered : kg::EdgeStatus::active;
}

std::size_t apply_consensus(kg::KnowledgeGraph& graph, const VoteLedger& ledger,
                            const ConsensusThresholds& thresholds) {
  thresholds.validate();
  std::vector<std::string> ids;
  ids.reserve(graph.edges().size());
  for (const auto& [id, edge] : graph.edges()) ids.push_back(id);

  std::size_t changed = 0;
  for (const auto& id : ids) {
    graph.set_edge_weight(id, ledger.weight_of(id));
    const kg::EdgeStatus before = graph.edge(id).status;
    if (apply_consensus_to_edge(graph, id, thresholds) != before) ++changed;
  }
  return changed;
}

kg::EdgeStatus apply_consensus_to_edge(kg::KnowledgeGraph& graph, std::string_view edge_id,
                                       const ConsensusThresholds& thresholds) {
  const kg::EdgeStatus status = consensus_status(graph.edge(edge_id), thresholds);
  graph.set_edge_status(edge_id, status);
  return status;
}

}  // namespace gamekg::feedback

#pragma once

#include <cstddef>
#include <string_view>

#include "gamekg/feedback/ledger.hpp"
#include "gamekg/kg/graph.hpp"

namespace gamekg::feedback {

struct ConsensusThresholds {
  double accept = 2.0;
  double reject = -2.0;

  /// Requires accept >= 0 and reject <= 0.
  void validate() const;
};

/// HumanProposed edges are active iff weight >= accept. Explicit edges stay
/// active unless weight <= reject.
kg::EdgeStatus consensus_status(const kg::Edge& edge, const ConsensusThresholds& thresholds);

/// Recomputes every edge weight from the ledger and persists the resulting
/// statuses on the graph. Returns the number of edges whose status changed.
std::size_t apply_consensus(kg::KnowledgeGraph& graph, const VoteLedger& ledger,
                            const ConsensusThresholds& thresholds);

/// Same rule for a single edge, using its cached weight.
kg::EdgeStatus apply_consensus_to_edge(kg::KnowledgeGraph& graph, std::string_view edge_id,
                                       const ConsensusThresholds& thresholds);

}  // namespace gamekg::feedback

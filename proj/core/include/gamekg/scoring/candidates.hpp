#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gamekg/kg/graph.hpp"
#include "gamekg/scoring/embedding.hpp"

namespace gamekg::scoring {

enum class FindingKind {
  suspect_edge,  // connected, but the endpoints look unrelated
  missing_edge,  // unconnected, but the endpoints look closely related
};

std::string_view to_string(FindingKind kind) noexcept;

struct CandidateFinding {
  std::string entity_a;  // entity_a < entity_b
  std::string entity_b;
  double similarity = 0.0;
  FindingKind kind = FindingKind::missing_edge;
  std::optional<std::string> edge_id;  // set iff kind == suspect_edge

  /// "kind|a|b|edge" -- identifies a finding across runs.
  std::string key() const;

  bool operator==(const CandidateFinding&) const = default;
};

struct CandidateThresholds {
  double tau_low = 0.2;
  double tau_high = 0.6;

  /// Requires 0 <= tau_low <= tau_high <= 1.
  void validate() const;
};

/// Scores every unordered entity pair. Connected pairs with similarity below
/// tau_low yield one suspect finding per active edge between them;
/// unconnected pairs above tau_high yield a missing-edge finding. Suspect
/// findings come first (ascending similarity), then missing-edge findings
/// (descending); ties fall back to the pair, then the edge id.
std::vector<CandidateFinding> identify_candidates(const kg::KnowledgeGraph& graph,
                                                  const EmbeddingProvider& provider,
                                                  const CandidateThresholds& thresholds,
                                                  std::size_t max_results);

nlohmann::ordered_json to_json(const CandidateFinding& finding);

}  // namespace gamekg::scoring

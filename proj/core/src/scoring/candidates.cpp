#include "gamekg/scoring/candidates.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "gamekg/error.hpp"

namespace gamekg::scoring {

std::string_view to_string(FindingKind kind) noexcept {
  return kind == FindingKind::suspect_edge ? "suspect_edge" : "missing_edge";
}

std::string CandidateFinding::key() const {
  return std::string(to_string(kind)) + "|" + entity_a + "|" + entity_b + "|" +
         edge_id.value_or("");
}

void CandidateThresholds::validate() const {
  const bool ok = std::isfinite(tau_low) && std::isfinite(tau_high) && tau_low >= 0.0 &&
                  tau_low <= tau_high && tau_high <= 1.0;
  if (!ok) {
    fail(ErrorCode::validation,
         "thresholds must satisfy 0 <= tau_low <= tau_high <= 1 (got tau_low=" +
             std::to_string(tau_low) + ", tau_high=" + std::to_string(tau_high) + ")");
  }
}

namespace {

bool ranks_before(const CandidateFinding& x, const CandidateFinding& y) {
  if (x.kind != y.kind) return x.kind == FindingKind::suspect_edge;
  if (x.similarity != y.similarity) {
    return x.kind == FindingKind::suspect_edge ? x.similarity < y.similarity
                                               : x.similarity > y.similarity;
  }
  return std::tie(x.entity_a, x.entity_b, x.edge_id) <
         std::tie(y.entity_a, y.entity_b, y.edge_id);
}

}  // namespace

std::vector<CandidateFinding> identify_candidates(const kg::KnowledgeGraph& graph,
                                                  const EmbeddingProvider& provider,
                                                  const CandidateThresholds& thresholds,
                                                  std::size_t max_results) {
  thresholds.validate();

  // Entity ids come out of the map sorted, so i < j implies id_i < id_j.
  const SentenceLookup sentences(graph);
  std::vector<std::string> ids;
  std::vector<EmbeddingVector> vectors;
  ids.reserve(graph.entities().size());
  for (const auto& [id, entity] : graph.entities()) {
    ids.push_back(id);
    vectors.push_back(provider.embed(entity_context(graph, id, sentences)));
  }

  std::vector<CandidateFinding> findings;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const double similarity = cosine(vectors[i], vectors[j]);
      const auto edges = graph.active_edges_between(ids[i], ids[j]);
      if (!edges.empty()) {
        if (similarity < thresholds.tau_low) {
          for (const kg::Edge* edge : edges) {
            findings.push_back(
                {ids[i], ids[j], similarity, FindingKind::suspect_edge, edge->id});
          }
        }
      } else if (similarity > thresholds.tau_high) {
        findings.push_back(
            {ids[i], ids[j], similarity, FindingKind::missing_edge, std::nullopt});
      }
    }
  }

  std::sort(findings.begin(), findings.end(), ranks_before);
  if (findings.size() > max_results) findings.resize(max_results);
  return findings;
}

nlohmann::ordered_json to_json(const CandidateFinding& finding) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(finding.kind);
  j["entity_a"] = finding.entity_a;
  j["entity_b"] = finding.entity_b;
  j["similarity"] = finding.similarity;
  j["edge_id"] = finding.edge_id ? nlohmann::ordered_json(*finding.edge_id)
                                 : nlohmann::ordered_json();
  return j;
}

}  // namespace gamekg::scoring

#pragma once

// A case is an anonymized subgraph handed to players. Clients only ever see
// pseudonyms and per-case opaque tokens; the token -> entity mapping stays
// on the server.

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gamekg/kg/graph.hpp"
#include "gamekg/narrative/narrative.hpp"
#include "gamekg/narrative/pseudonyms.hpp"
#include "gamekg/scoring/candidates.hpp"

namespace gamekg::app {

enum class CaseStrategy {
  priority,  // highest-ranked unserved finding; random when none is left
  random,    // seeded random connected subgraph
};

std::string_view to_string(CaseStrategy strategy) noexcept;
CaseStrategy case_strategy_from_string(std::string_view name);

struct CaseOptions {
  CaseStrategy strategy = CaseStrategy::priority;
  std::size_t entity_cap = 12;
  std::vector<std::string> predicates;  // vocabulary offered to players
  narrative::NarrativeOptions narrative;
};

struct PresentedEntity {
  std::string token;
  std::string pseudonym;
  std::string entity_id;  // server side only

  bool operator==(const PresentedEntity&) const = default;
};

struct Case {
  std::string case_id;
  std::uint64_t seed = 0;
  std::vector<std::string> entity_ids;  // sorted
  std::vector<kg::Edge> edges;          // active subgraph edges in triple order
  narrative::Narrative narrative;
  narrative::PseudonymMap pseudonyms;
  std::vector<scoring::CandidateFinding> findings;  // restricted to the subgraph
  std::vector<PresentedEntity> presented;           // ordered by pseudonym
  std::vector<std::string> predicates;              // sorted
  std::optional<std::string> finding_key;           // the finding the case was built around

  const PresentedEntity* by_token(std::string_view token) const;
  const PresentedEntity* by_entity(std::string_view entity_id) const;
  bool allows_predicate(std::string_view predicate) const;

  bool operator==(const Case&) const = default;
};

/// Builds a case from `graph` and its ranked findings, skipping findings
/// whose key is in `served`. The same inputs and seed give the same case.
/// Throws Error{no_case} when the graph has fewer than two entities or no
/// usable subgraph, and propagates pool exhaustion from the narrative layer.
Case build_case(const kg::KnowledgeGraph& graph,
                std::span<const scoring::CandidateFinding> ranked_findings,
                const std::set<std::string>& served, const CaseOptions& options,
                std::uint64_t seed, narrative::TextGenerator* external = nullptr,
                const narrative::NamePools& pools = narrative::NamePools::defaults());

/// What a player's client receives: case_id, narrative, presented_entities
/// [{token, pseudonym}], candidate_hints [{source_token, target_token, kind}],
/// predicates and connections [{source_token, predicate, target_token, style}].
nlohmann::ordered_json client_view(const Case& c);

}  // namespace gamekg::app

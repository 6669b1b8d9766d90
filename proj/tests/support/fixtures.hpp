#pragma once

#include <string>
#include <vector>

#include "gamekg/ingest/builder.hpp"
#include "gamekg/ingest/extractor.hpp"
#include "gamekg/kg/graph.hpp"

namespace gamekg::testing {

inline const std::string kClaimText =
    "Kizer transported victims across state borders. Villaman was an accomplice to Kizer.";
inline const std::string kBackgroundText =
    "The press release states Kizer broke the Mann Act when he transported a victim across "
    "state borders.";
inline const std::string kVillamanQuestion = "What act did Villaman break?";
inline const std::string kRefusalText = "The knowledge to generate an answer is not found.";

inline std::vector<kg::Document> case_documents() {
  return {{"claim", "Claim", kClaimText, std::nullopt},
          {"press-release", "Background Knowledge", kBackgroundText, std::nullopt}};
}

/// The original graph: Kizer-transported->victims, Kizer-violated->Mann Act,
/// Villaman-accomplice_to->Kizer, all explicit.
inline kg::KnowledgeGraph case_graph() {
  const auto docs = case_documents();
  return ingest::ingest_documents(docs, ingest::RuleBasedExtractor());
}

}  // namespace gamekg::testing

#pragma once

// Curation service behind the HTTP API. Each method takes and returns the
// JSON bodies of one endpoint so the HTTP layer stays a thin adapter.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gamekg/app/case.hpp"
#include "gamekg/app/config.hpp"
#include "gamekg/feedback/ledger.hpp"
#include "gamekg/kg/graph.hpp"
#include "gamekg/narrative/narrative.hpp"
#include "gamekg/narrative/pseudonyms.hpp"
#include "gamekg/qa/qa.hpp"
#include "gamekg/scoring/candidates.hpp"

namespace gamekg::app {

class CurationService {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  /// Replays `history` onto `graph` and applies consensus with the
  /// configured thresholds.
  CurationService(ServerConfig config, kg::KnowledgeGraph graph,
                  const std::vector<feedback::FeedbackEvent>& history, Clock clock = {});

  /// Loads kg.jsonl and ledger.jsonl from the data directory and appends new
  /// feedback to the ledger file.
  static std::unique_ptr<CurationService> open(const ServerConfig& config);

  CurationService(const CurationService&) = delete;
  CurationService& operator=(const CurationService&) = delete;

  void attach_ledger_writer(std::unique_ptr<feedback::LedgerWriter> writer);
  void set_text_generator(std::shared_ptr<narrative::TextGenerator> generator);

  /// GET /case/next -> client view. Throws Error{no_case}.
  nlohmann::ordered_json next_case();

  /// POST /feedback. Throws Error{validation} for a malformed body and
  /// Error{not_found} / Error{expired} for unknown cases or tokens; the
  /// ledger is untouched in every error case.
  nlohmann::ordered_json submit_feedback(const nlohmann::json& body);

  /// POST /qa {question} -> Answer JSON.
  nlohmann::ordered_json ask(const nlohmann::json& body) const;

  /// GET /candidates -> findings over the current graph.
  nlohmann::ordered_json candidates() const;

  /// GET /kg -> JSONL of the active view (filtered) or the whole graph.
  std::string export_kg(bool filtered) const;

  bool authorized(std::string_view bearer_token) const;
  const ServerConfig& config() const noexcept { return config_; }

  // Inspection for tests and tools.
  kg::KnowledgeGraph graph_snapshot() const;
  feedback::VoteLedger ledger_snapshot() const;
  std::optional<Case> find_case(std::string_view case_id) const;

 private:
  struct LiveCase {
    std::shared_ptr<const Case> data;
    std::chrono::steady_clock::time_point expires;
  };

  std::vector<scoring::CandidateFinding> findings_locked() const;
  std::shared_ptr<const Case> live_case(std::string_view case_id) const;
  std::uint64_t next_seed();

  ServerConfig config_;
  Clock clock_;
  CaseOptions case_options_;
  qa::SynonymTable synonyms_;
  narrative::NamePools pools_;
  std::unique_ptr<scoring::EmbeddingProvider> embedder_;

  mutable std::shared_mutex state_mutex_;  // graph_, ledger_, writer_
  kg::KnowledgeGraph graph_;
  feedback::VoteLedger ledger_;
  std::unique_ptr<feedback::LedgerWriter> writer_;

  mutable std::mutex cache_mutex_;
  mutable std::optional<std::vector<scoring::CandidateFinding>> findings_cache_;

  mutable std::mutex cases_mutex_;  // cases_, served_, seed state
  std::map<std::string, LiveCase, std::less<>> cases_;
  std::set<std::string> served_;
  std::uint64_t seed_base_ = 0;
  std::uint64_t seed_counter_ = 0;

  std::shared_ptr<narrative::TextGenerator> generator_;
};

}  // namespace gamekg::app

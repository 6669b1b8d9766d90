#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "gamekg/app/case.hpp"
#include "gamekg/feedback/consensus.hpp"
#include "gamekg/scoring/candidates.hpp"

namespace gamekg::app {

enum class NarrativeProvider { template_text, transcript };

struct ServerConfig {
  std::string listen_host = "127.0.0.1";
  int listen_port = 8080;
  std::filesystem::path data_dir = "data";  // holds kg.jsonl and ledger.jsonl
  std::string operator_token;

  scoring::CandidateThresholds candidates;
  std::size_t max_candidates = 100;
  std::size_t embedding_dimension = 256;
  feedback::ConsensusThresholds consensus;
  std::map<std::string, double> player_multipliers;

  CaseStrategy strategy = CaseStrategy::priority;
  std::size_t case_entity_cap = 12;
  std::chrono::seconds case_ttl{24 * 60 * 60};
  std::optional<std::uint64_t> seed;  // unset: seeded from std::random_device

  NarrativeProvider narrative_provider = NarrativeProvider::template_text;
  std::optional<std::filesystem::path> transcript;  // recorded external replies
  std::chrono::milliseconds narrative_timeout{30'000};

  std::optional<std::filesystem::path> lexicon;     // merged over the seed lexicon
  std::optional<std::filesystem::path> synonyms;    // merged over the seed table
  std::optional<std::filesystem::path> name_pools;  // replaces the shipped pools

  bool fsync_ledger = false;
  bool qa_requires_operator = false;

  std::filesystem::path kg_path() const { return data_dir / "kg.jsonl"; }
  std::filesystem::path ledger_path() const { return data_dir / "ledger.jsonl"; }

  /// Throws Error{validation} when a threshold or limit is out of range.
  void validate() const;

  /// Unknown keys are rejected. Relative paths resolve against `base_dir`.
  static ServerConfig from_json(const nlohmann::json& object,
                                const std::filesystem::path& base_dir = {});
  static ServerConfig load(const std::filesystem::path& path);

  /// GAMEKG_DATA_DIR, GAMEKG_OPERATOR_TOKEN and GAMEKG_LISTEN ("host:port")
  /// override the file. `getenv` is injectable for tests.
  void apply_environment(
      const std::function<std::optional<std::string>(const char*)>& getenv = {});
};

/// "host:port"; the host may be empty ("":8080 -> 0.0.0.0).
std::pair<std::string, int> parse_listen(std::string_view listen);

}  // namespace gamekg::app

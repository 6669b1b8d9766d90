#include "gamekg/app/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>

#include "gamekg/error.hpp"

namespace gamekg::app {

namespace {

void reject_unknown(const nlohmann::json& object, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (!known.contains(key)) fail(ErrorCode::parse, "unknown key '" + key + "' in " + where);
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

std::pair<std::string, int> parse_listen(std::string_view listen) {
  const auto colon = listen.rfind(':');
  if (colon == std::string_view::npos) {
    fail(ErrorCode::validation, "listen address must be host:port, got '" + std::string(listen) + "'");
  }
  std::string host(listen.substr(0, colon));
  const std::string_view port_text = listen.substr(colon + 1);
  int port = 0;
  const auto [end, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc() || end != port_text.data() + port_text.size() || port < 0 || port > 65535) {
    fail(ErrorCode::validation, "invalid port in listen address '" + std::string(listen) + "'");
  }
  if (host.empty()) host = "0.0.0.0";
  return {host, port};
}

void ServerConfig::validate() const {
  candidates.validate();
  consensus.validate();
  if (case_entity_cap < 2) fail(ErrorCode::validation, "case entity cap must be at least 2");
  if (embedding_dimension == 0) fail(ErrorCode::validation, "embedding dimension must be positive");
  if (case_ttl.count() <= 0) fail(ErrorCode::validation, "case TTL must be positive");
  if (listen_port < 0 || listen_port > 65535) fail(ErrorCode::validation, "listen port out of range");
  if (narrative_provider == NarrativeProvider::transcript && !transcript) {
    fail(ErrorCode::validation, "the transcript narrative provider needs a transcript path");
  }
  for (const auto& [player, m] : player_multipliers) {
    if (!(m > 0.0)) fail(ErrorCode::validation, "multiplier for '" + player + "' must be positive");
  }
}

ServerConfig ServerConfig::from_json(const nlohmann::json& j, const std::filesystem::path& base) {
  if (!j.is_object()) fail(ErrorCode::parse, "config must be a JSON object");
  reject_unknown(j,
                 {"listen", "data_dir", "operator_token", "candidates", "consensus",
                  "player_multipliers", "case", "narrative", "embedding_dimension", "lexicon",
                  "synonyms", "name_pools", "fsync_ledger", "qa_requires_operator"},
                 "config");
  ServerConfig c;
  try {
    if (j.contains("listen")) {
      std::tie(c.listen_host, c.listen_port) = parse_listen(j.at("listen").get<std::string>());
    }
    if (j.contains("data_dir")) c.data_dir = resolve(base, j.at("data_dir").get<std::string>());
    c.operator_token = j.value("operator_token", "");
    if (auto it = j.find("candidates"); it != j.end()) {
      reject_unknown(*it, {"tau_low", "tau_high", "max_results"}, "candidates");
      c.candidates.tau_low = it->value("tau_low", c.candidates.tau_low);
      c.candidates.tau_high = it->value("tau_high", c.candidates.tau_high);
      c.max_candidates = it->value("max_results", c.max_candidates);
    }
    if (auto it = j.find("consensus"); it != j.end()) {
      reject_unknown(*it, {"accept", "reject"}, "consensus");
      c.consensus.accept = it->value("accept", c.consensus.accept);
      c.consensus.reject = it->value("reject", c.consensus.reject);
    }
    if (auto it = j.find("player_multipliers"); it != j.end()) {
      c.player_multipliers = it->get<std::map<std::string, double>>();
    }
    if (auto it = j.find("case"); it != j.end()) {
      reject_unknown(*it, {"strategy", "entity_cap", "ttl_seconds", "seed"}, "case");
      if (it->contains("strategy")) {
        c.strategy = case_strategy_from_string(it->at("strategy").get<std::string>());
      }
      c.case_entity_cap = it->value("entity_cap", c.case_entity_cap);
      c.case_ttl = std::chrono::seconds(it->value("ttl_seconds", c.case_ttl.count()));
      if (auto seed = it->find("seed"); seed != it->end() && !seed->is_null()) {
        c.seed = seed->get<std::uint64_t>();
      }
    }
    if (auto it = j.find("narrative"); it != j.end()) {
      reject_unknown(*it, {"provider", "transcript", "timeout_ms"}, "narrative");
      const std::string provider = it->value("provider", "template");
      if (provider == "template") {
        c.narrative_provider = NarrativeProvider::template_text;
      } else if (provider == "transcript") {
        c.narrative_provider = NarrativeProvider::transcript;
      } else {
        fail(ErrorCode::validation, "unknown narrative provider '" + provider + "'");
      }
      if (it->contains("transcript")) {
        c.transcript = resolve(base, it->at("transcript").get<std::string>());
      }
      c.narrative_timeout = std::chrono::milliseconds(
          it->value("timeout_ms", static_cast<std::int64_t>(c.narrative_timeout.count())));
    }
    c.embedding_dimension = j.value("embedding_dimension", c.embedding_dimension);
    if (j.contains("lexicon")) c.lexicon = resolve(base, j.at("lexicon").get<std::string>());
    if (j.contains("synonyms")) c.synonyms = resolve(base, j.at("synonyms").get<std::string>());
    if (j.contains("name_pools")) c.name_pools = resolve(base, j.at("name_pools").get<std::string>());
    c.fsync_ledger = j.value("fsync_ledger", c.fsync_ledger);
    c.qa_requires_operator = j.value("qa_requires_operator", c.qa_requires_operator);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("config: ") + e.what());
  }
  return c;
}

ServerConfig ServerConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, path.string() + ": " + e.what());
  }
  return from_json(j, path.parent_path());
}

void ServerConfig::apply_environment(
    const std::function<std::optional<std::string>(const char*)>& getenv) {
  auto lookup = [&](const char* name) -> std::optional<std::string> {
    if (getenv) return getenv(name);
    const char* value = std::getenv(name);
    return value == nullptr ? std::nullopt : std::optional<std::string>(value);
  };
  if (auto v = lookup("GAMEKG_DATA_DIR"); v && !v->empty()) data_dir = *v;
  if (auto v = lookup("GAMEKG_OPERATOR_TOKEN"); v) operator_token = *v;
  if (auto v = lookup("GAMEKG_LISTEN"); v && !v->empty()) {
    std::tie(listen_host, listen_port) = parse_listen(*v);
  }
}

}  // namespace gamekg::app

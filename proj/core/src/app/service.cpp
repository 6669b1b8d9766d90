#include "gamekg/app/service.hpp"

#include <random>

#include <spdlog/spdlog.h>

#include "gamekg/error.hpp"
#include "gamekg/feedback/consensus.hpp"
#include "gamekg/ingest/lexicon.hpp"
#include "gamekg/kg/jsonl.hpp"
#include "gamekg/scoring/embedding.hpp"

namespace gamekg::app {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

const std::string& required_string(const nlohmann::json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_string() || it->get_ref<const std::string&>().empty()) {
    fail(ErrorCode::validation, std::string("field '") + key + "' must be a non-empty string");
  }
  return it->get_ref<const std::string&>();
}

nlohmann::ordered_json acknowledgment(const std::string& event_id,
                                      const feedback::RecordOutcome& outcome) {
  nlohmann::ordered_json j;
  j["event_id"] = event_id;
  j["edge_weight"] = outcome.weight;
  j["status"] = kg::to_string(outcome.status);
  j["created"] = outcome.created;
  j["duplicate"] = outcome.duplicate;
  return j;
}

}  // namespace

CurationService::CurationService(ServerConfig config, kg::KnowledgeGraph graph,
                                 const std::vector<feedback::FeedbackEvent>& history,
                                 Clock clock)
    : config_(std::move(config)),
      clock_(clock ? std::move(clock) : Clock([] { return std::chrono::steady_clock::now(); })),
      graph_(std::move(graph)) {
  config_.validate();

  synonyms_ = qa::SynonymTable::defaults();
  if (config_.synonyms) synonyms_.merge(qa::SynonymTable::load(*config_.synonyms));
  pools_ = config_.name_pools ? narrative::NamePools::load(*config_.name_pools)
                              : narrative::NamePools::defaults();
  auto lexicon = ingest::PredicateLexicon::seed();
  if (config_.lexicon) lexicon.merge(ingest::PredicateLexicon::load(*config_.lexicon));

  case_options_.strategy = config_.strategy;
  case_options_.entity_cap = config_.case_entity_cap;
  case_options_.predicates = lexicon.predicates();
  case_options_.narrative.timeout = config_.narrative_timeout;
  embedder_ = std::make_unique<scoring::HashedBagProvider>(config_.embedding_dimension);

  ledger_ = feedback::replay(graph_, history);
  for (const auto& [player, m] : config_.player_multipliers) ledger_.set_player_multiplier(player, m);
  feedback::apply_consensus(graph_, ledger_, config_.consensus);

  seed_base_ = config_.seed ? *config_.seed
                            : (std::uint64_t{std::random_device{}()} << 32) ^ std::random_device{}();
}

std::unique_ptr<CurationService> CurationService::open(const ServerConfig& config) {
  auto graph = kg::load_graph(config.kg_path());
  auto history = feedback::load_ledger(config.ledger_path());
  auto service = std::make_unique<CurationService>(config, std::move(graph), history);
  service->attach_ledger_writer(
      std::make_unique<feedback::LedgerWriter>(config.ledger_path(), config.fsync_ledger));
  if (config.narrative_provider == NarrativeProvider::transcript) {
    service->set_text_generator(narrative::RecordedTranscript::load(*config.transcript));
  }
  spdlog::info("loaded {} entities, {} edges and {} ledger events from {}",
               service->graph_.entities().size(), service->graph_.edges().size(),
               history.size(), config.data_dir.string());
  return service;
}

void CurationService::attach_ledger_writer(std::unique_ptr<feedback::LedgerWriter> writer) {
  std::unique_lock lock(state_mutex_);
  writer_ = std::move(writer);
}

void CurationService::set_text_generator(std::shared_ptr<narrative::TextGenerator> generator) {
  std::lock_guard lock(cases_mutex_);
  generator_ = std::move(generator);
}

std::vector<scoring::CandidateFinding> CurationService::findings_locked() const {
  std::lock_guard lock(cache_mutex_);
  if (!findings_cache_) {
    findings_cache_ = scoring::identify_candidates(graph_, *embedder_, config_.candidates,
                                                   config_.max_candidates);
  }
  return *findings_cache_;
}

std::uint64_t CurationService::next_seed() { return splitmix64(seed_base_ + ++seed_counter_); }

std::shared_ptr<const Case> CurationService::live_case(std::string_view case_id) const {
  std::lock_guard lock(cases_mutex_);
  auto it = cases_.find(case_id);
  if (it == cases_.end()) fail(ErrorCode::not_found, "unknown case");
  if (clock_() >= it->second.expires) fail(ErrorCode::expired, "case has expired");
  return it->second.data;
}

nlohmann::ordered_json CurationService::next_case() {
  std::set<std::string> served;
  std::uint64_t seed = 0;
  std::shared_ptr<narrative::TextGenerator> generator;
  {
    std::lock_guard lock(cases_mutex_);
    const auto now = clock_();
    std::erase_if(cases_, [&](const auto& entry) { return now >= entry.second.expires; });
    served = served_;
    seed = next_seed();
    generator = generator_;
  }

  std::shared_ptr<const Case> built;
  {
    std::shared_lock lock(state_mutex_);
    const auto findings = findings_locked();
    built = std::make_shared<const Case>(
        build_case(graph_, findings, served, case_options_, seed, generator.get(), pools_));
  }

  std::lock_guard lock(cases_mutex_);
  if (built->finding_key) served_.insert(*built->finding_key);
  cases_[built->case_id] = {built, clock_() + config_.case_ttl};
  auto view = client_view(*built);
  view["ttl_seconds"] = config_.case_ttl.count();
  return view;
}

nlohmann::ordered_json CurationService::submit_feedback(const nlohmann::json& body) {
  if (!body.is_object()) fail(ErrorCode::validation, "feedback body must be a JSON object");
  feedback::FeedbackEvent event;
  event.event_id = required_string(body, "event_id");
  event.case_id = required_string(body, "case_id");
  event.player_id = required_string(body, "player_id");
  event.action = feedback::action_from_string(required_string(body, "action"));
  const std::string& source_token = required_string(body, "source_token");
  const std::string& target_token = required_string(body, "target_token");
  const std::string predicate = kg::normalize_predicate(required_string(body, "predicate"));
  if (auto it = body.find("vote_weight"); it != body.end() && !it->is_null()) {
    if (!it->is_number()) fail(ErrorCode::validation, "vote_weight must be a number");
    event.vote_weight = it->get<double>();
  }

  std::unique_lock lock(state_mutex_);
  if (const auto* seen = ledger_.find_event(event.event_id)) {
    const kg::Edge& edge = graph_.edge(seen->edge_id);
    return acknowledgment(event.event_id, {edge.id, edge.weight, edge.status, false, true});
  }

  const auto c = live_case(event.case_id);
  const PresentedEntity* source = c->by_token(source_token);
  const PresentedEntity* target = c->by_token(target_token);
  if (source == nullptr || target == nullptr) fail(ErrorCode::not_found, "unknown entity token");
  if (!c->allows_predicate(predicate)) {
    fail(ErrorCode::validation, "predicate '" + predicate + "' is not offered by this case");
  }

  event.edge_id = kg::make_edge_id(source->entity_id, predicate, target->entity_id);
  if (event.action == feedback::Action::propose) {
    event.target = feedback::TripleTarget{source->entity_id, predicate, target->entity_id};
  } else {
    if (graph_.find_edge(event.edge_id) == nullptr) {
      fail(ErrorCode::not_found, "no such connection to " + std::string(feedback::to_string(event.action)));
    }
    event.target = feedback::EdgeTarget{event.edge_id};
  }
  feedback::validate_event(event);
  event.sequence = ledger_.last_sequence() + 1;

  // The ledger file is the source of truth, so it is written first.
  if (writer_) writer_->append(event);
  const std::string event_id = event.event_id;
  auto outcome = feedback::record_feedback(ledger_, graph_, std::move(event));
  const kg::EdgeStatus before = outcome.status;
  outcome.status = feedback::apply_consensus_to_edge(graph_, outcome.edge_id, config_.consensus);
  if (outcome.created || outcome.status != before) {
    std::lock_guard cache_lock(cache_mutex_);
    findings_cache_.reset();
  }
  return acknowledgment(event_id, outcome);
}

nlohmann::ordered_json CurationService::ask(const nlohmann::json& body) const {
  if (!body.is_object()) fail(ErrorCode::validation, "qa body must be a JSON object");
  const std::string& question = required_string(body, "question");
  std::shared_lock lock(state_mutex_);
  return qa::to_json(qa::answer(question, graph_, synonyms_));
}

nlohmann::ordered_json CurationService::candidates() const {
  std::shared_lock lock(state_mutex_);
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& finding : findings_locked()) out.push_back(scoring::to_json(finding));
  return out;
}

std::string CurationService::export_kg(bool filtered) const {
  std::shared_lock lock(state_mutex_);
  return filtered ? kg::to_jsonl(kg::active_view(graph_)) : kg::to_jsonl(graph_);
}

bool CurationService::authorized(std::string_view bearer_token) const {
  if (config_.operator_token.empty() || bearer_token.size() != config_.operator_token.size()) {
    return false;
  }
  unsigned char diff = 0;
  for (std::size_t i = 0; i < bearer_token.size(); ++i) {
    diff |= static_cast<unsigned char>(bearer_token[i] ^ config_.operator_token[i]);
  }
  return diff == 0;
}

kg::KnowledgeGraph CurationService::graph_snapshot() const {
  std::shared_lock lock(state_mutex_);
  return graph_;
}

feedback::VoteLedger CurationService::ledger_snapshot() const {
  std::shared_lock lock(state_mutex_);
  return ledger_;
}

std::optional<Case> CurationService::find_case(std::string_view case_id) const {
  std::lock_guard lock(cases_mutex_);
  auto it = cases_.find(case_id);
  if (it == cases_.end()) return std::nullopt;
  return *it->second.data;
}

}  // namespace gamekg::app

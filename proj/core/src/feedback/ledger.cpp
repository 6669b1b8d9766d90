#include "gamekg/feedback/ledger.hpp"

#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>

#include <fcntl.h>
#include <unistd.h>

#include "gamekg/error.hpp"

namespace gamekg::feedback {

using nlohmann::ordered_json;

std::string_view to_string(Action action) noexcept {
  switch (action) {
    case Action::confirm: return "confirm";
    case Action::reject: return "reject";
    case Action::propose: return "propose";
  }
  return "confirm";
}

Action action_from_string(std::string_view name) {
  if (name == "confirm") return Action::confirm;
  if (name == "reject") return Action::reject;
  if (name == "propose") return Action::propose;
  fail(ErrorCode::validation, "unknown action '" + std::string(name) + "'");
}

void validate_event(const FeedbackEvent& event) {
  if (event.event_id.empty()) fail(ErrorCode::validation, "event_id must not be empty");
  if (event.player_id.empty()) fail(ErrorCode::validation, "player_id must not be empty");
  if (!std::isfinite(event.vote_weight) || event.vote_weight <= 0.0) {
    fail(ErrorCode::validation, "vote_weight must be a finite positive number");
  }
  const bool triple = std::holds_alternative<TripleTarget>(event.target);
  if (event.action == Action::propose && !triple) {
    fail(ErrorCode::validation, "propose requires a (subject, predicate, object) target");
  }
  if (event.action != Action::propose && triple) {
    fail(ErrorCode::validation, "confirm and reject require an edge_id target");
  }
}

const FeedbackEvent& VoteLedger::append(FeedbackEvent event) {
  if (event.edge_id.empty()) fail(ErrorCode::validation, "ledger events need a resolved edge id");
  if (by_event_id_.contains(event.event_id)) {
    fail(ErrorCode::integrity, "duplicate event_id '" + event.event_id + "'");
  }
  if (event.sequence == 0) {
    event.sequence = last_sequence() + 1;
  } else if (event.sequence <= last_sequence()) {
    fail(ErrorCode::integrity, "event sequence " + std::to_string(event.sequence) +
                                   " does not follow " + std::to_string(last_sequence()));
  }
  const std::size_t index = events_.size();
  by_event_id_.emplace(event.event_id, index);
  latest_[event.edge_id][event.player_id] = index;
  events_.push_back(std::move(event));
  return events_.back();
}

std::uint64_t VoteLedger::last_sequence() const noexcept {
  return events_.empty() ? 0 : events_.back().sequence;
}

const FeedbackEvent* VoteLedger::find_event(std::string_view event_id) const {
  auto it = by_event_id_.find(event_id);
  return it == by_event_id_.end() ? nullptr : &events_[it->second];
}

std::map<std::string, const FeedbackEvent*> VoteLedger::latest_votes(
    std::string_view edge_id) const {
  std::map<std::string, const FeedbackEvent*> out;
  if (auto it = latest_.find(edge_id); it != latest_.end()) {
    for (const auto& [player, index] : it->second) out.emplace(player, &events_[index]);
  }
  return out;
}

double VoteLedger::weight_of(std::string_view edge_id) const {
  double weight = 0.0;
  auto it = latest_.find(edge_id);
  if (it == latest_.end()) return weight;
  // Summed in player order so the result does not depend on arrival order.
  for (const auto& [player, index] : it->second) {
    const FeedbackEvent& vote = events_[index];
    const double w = vote.vote_weight * player_multiplier(player);
    weight += vote.action == Action::reject ? -w : w;
  }
  return weight;
}

void VoteLedger::set_player_multiplier(std::string player_id, double multiplier) {
  if (!std::isfinite(multiplier) || multiplier <= 0.0) {
    fail(ErrorCode::validation, "player multiplier must be a finite positive number");
  }
  multipliers_[std::move(player_id)] = multiplier;
}

double VoteLedger::player_multiplier(std::string_view player_id) const {
  auto it = multipliers_.find(player_id);
  return it == multipliers_.end() ? 1.0 : it->second;
}

RecordOutcome record_feedback(VoteLedger& ledger, kg::KnowledgeGraph& graph,
                              FeedbackEvent event) {
  validate_event(event);
  if (const FeedbackEvent* seen = ledger.find_event(event.event_id)) {
    const kg::Edge& edge = graph.edge(seen->edge_id);
    return {edge.id, edge.weight, edge.status, false, true};
  }
  if (event.sequence != 0 && event.sequence <= ledger.last_sequence()) {
    fail(ErrorCode::integrity, "event sequence " + std::to_string(event.sequence) +
                                   " does not follow " + std::to_string(ledger.last_sequence()));
  }

  bool create = false;
  std::optional<TripleTarget> proposal;
  if (const auto* triple = std::get_if<TripleTarget>(&event.target)) {
    for (const std::string* endpoint : {&triple->subject_id, &triple->object_id}) {
      if (graph.find_entity(*endpoint) == nullptr) {
        fail(ErrorCode::not_found, "unknown entity '" + *endpoint + "'");
      }
    }
    TripleTarget normalized{triple->subject_id, kg::normalize_predicate(triple->predicate),
                            triple->object_id};
    event.edge_id = kg::make_edge_id(normalized.subject_id, normalized.predicate,
                                     normalized.object_id);
    create = graph.find_edge(event.edge_id) == nullptr;
    event.target = normalized;
    proposal = std::move(normalized);
  } else {
    event.edge_id = std::get<EdgeTarget>(event.target).edge_id;
    if (graph.find_edge(event.edge_id) == nullptr) {
      fail(ErrorCode::not_found, "unknown edge '" + event.edge_id + "'");
    }
  }

  // Both mutations below only fail on broken invariants checked above.
  if (create) {
    graph.upsert_edge(proposal->subject_id, proposal->predicate, proposal->object_id,
                      kg::HumanProposal{event.player_id}, kg::EdgeStatus::filtered);
  }
  const FeedbackEvent& stored = ledger.append(std::move(event));
  const double weight = ledger.weight_of(stored.edge_id);
  graph.set_edge_weight(stored.edge_id, weight);
  const kg::Edge& edge = graph.edge(stored.edge_id);
  return {edge.id, edge.weight, edge.status, create, false};
}

double effective_weight(const VoteLedger& ledger, const kg::KnowledgeGraph& graph,
                        std::string_view edge_id) {
  if (graph.find_edge(edge_id) == nullptr) {
    fail(ErrorCode::not_found, "unknown edge '" + std::string(edge_id) + "'");
  }
  return ledger.weight_of(edge_id);
}

VoteLedger replay(kg::KnowledgeGraph& graph, const std::vector<FeedbackEvent>& events) {
  std::vector<std::string> ids;
  for (const auto& [id, edge] : graph.edges()) ids.push_back(id);
  for (const auto& id : ids) graph.set_edge_weight(id, 0.0);

  VoteLedger ledger;
  for (FeedbackEvent event : events) {
    // The stored edge id is re-derived from the target.
    event.edge_id.clear();
    record_feedback(ledger, graph, std::move(event));
  }
  return ledger;
}

ordered_json to_json(const FeedbackEvent& event) {
  ordered_json j;
  j["sequence"] = event.sequence;
  j["event_id"] = event.event_id;
  j["player_id"] = event.player_id;
  j["case_id"] = event.case_id;
  j["action"] = to_string(event.action);
  ordered_json target;
  if (const auto* edge = std::get_if<EdgeTarget>(&event.target)) {
    target["edge_id"] = edge->edge_id;
  } else {
    const auto& triple = std::get<TripleTarget>(event.target);
    target["subject"] = triple.subject_id;
    target["predicate"] = triple.predicate;
    target["object"] = triple.object_id;
  }
  j["target"] = std::move(target);
  j["edge_id"] = event.edge_id;
  j["vote_weight"] = event.vote_weight;
  return j;
}

FeedbackEvent event_from_json(const nlohmann::json& j) {
  try {
    FeedbackEvent event;
    event.sequence = j.value("sequence", std::uint64_t{0});
    event.event_id = j.at("event_id").get<std::string>();
    event.player_id = j.at("player_id").get<std::string>();
    event.case_id = j.value("case_id", "");
    event.action = action_from_string(j.at("action").get<std::string>());
    const auto& target = j.at("target");
    if (target.contains("edge_id")) {
      event.target = EdgeTarget{target.at("edge_id").get<std::string>()};
    } else {
      event.target = TripleTarget{target.at("subject").get<std::string>(),
                                  target.at("predicate").get<std::string>(),
                                  target.at("object").get<std::string>()};
    }
    event.edge_id = j.value("edge_id", "");
    event.vote_weight = j.value("vote_weight", 1.0);
    validate_event(event);
    return event;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed feedback event: ") + e.what());
  }
}

std::vector<FeedbackEvent> read_ledger(std::istream& in) {
  std::vector<FeedbackEvent> events;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      events.push_back(event_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::parse, "line " + std::to_string(number) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(number) + ": " + e.what());
    }
  }
  return events;
}

std::vector<FeedbackEvent> load_ledger(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return {};
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open ledger " + path.string());
  try {
    return read_ledger(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

LedgerWriter::LedgerWriter(const std::filesystem::path& path, bool fsync_each_append)
    : fsync_(fsync_each_append), path_(path) {
  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    fail(ErrorCode::io, "cannot open ledger " + path.string() + ": " + std::strerror(errno));
  }
}

LedgerWriter::~LedgerWriter() {
  if (fd_ >= 0) ::close(fd_);
}

void LedgerWriter::append(const FeedbackEvent& event) {
  const std::string line = to_json(event).dump() + "\n";
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd_, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail(ErrorCode::io, "write to " + path_.string() + " failed: " + std::strerror(errno));
    }
    written += static_cast<std::size_t>(n);
  }
  if (fsync_ && ::fsync(fd_) != 0) {
    fail(ErrorCode::io, "fsync of " + path_.string() + " failed: " + std::strerror(errno));
  }
}

}  // namespace gamekg::feedback

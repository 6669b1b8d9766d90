#pragma once

// Player votes on edges. The ledger is append-only; per (edge, player) only
// the most recently ingested vote counts.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "gamekg/kg/graph.hpp"

namespace gamekg::feedback {

enum class Action { confirm, reject, propose };

std::string_view to_string(Action action) noexcept;
Action action_from_string(std::string_view name);

struct EdgeTarget {
  std::string edge_id;

  bool operator==(const EdgeTarget&) const = default;
};

struct TripleTarget {
  std::string subject_id;
  std::string predicate;
  std::string object_id;

  bool operator==(const TripleTarget&) const = default;
};

using Target = std::variant<EdgeTarget, TripleTarget>;

struct FeedbackEvent {
  std::string event_id;
  std::string player_id;
  std::string case_id;
  Target target;
  Action action = Action::confirm;
  double vote_weight = 1.0;
  std::uint64_t sequence = 0;  // assigned on append
  std::string edge_id;         // resolved target, assigned on append

  bool operator==(const FeedbackEvent&) const = default;
};

/// Checks the per-event invariants: non-empty ids, a finite positive
/// weight, Propose with a triple and Confirm/Reject with an edge id.
void validate_event(const FeedbackEvent& event);

class VoteLedger {
 public:
  /// Appends an event whose `edge_id` is already resolved. A zero sequence
  /// is replaced by the next one; an explicit sequence must exceed the last.
  const FeedbackEvent& append(FeedbackEvent event);

  const std::vector<FeedbackEvent>& events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  std::uint64_t last_sequence() const noexcept;

  const FeedbackEvent* find_event(std::string_view event_id) const;

  /// Effective vote per player for an edge (player id -> event).
  std::map<std::string, const FeedbackEvent*> latest_votes(std::string_view edge_id) const;

  /// Sum over players of their latest vote: +w for Confirm/Propose, -w for
  /// Reject, each scaled by the player's multiplier. 0 without votes.
  double weight_of(std::string_view edge_id) const;

  /// Per-player reliability multiplier (default 1).
  void set_player_multiplier(std::string player_id, double multiplier);
  double player_multiplier(std::string_view player_id) const;

  bool operator==(const VoteLedger&) const = default;

 private:
  std::vector<FeedbackEvent> events_;
  std::map<std::string, std::size_t, std::less<>> by_event_id_;
  // edge id -> player id -> index of the latest event
  std::map<std::string, std::map<std::string, std::size_t>, std::less<>> latest_;
  std::map<std::string, double, std::less<>> multipliers_;
};

struct RecordOutcome {
  std::string edge_id;
  double weight = 0.0;
  kg::EdgeStatus status = kg::EdgeStatus::active;
  bool created = false;    // a new HumanProposed edge was added
  bool duplicate = false;  // event_id seen before; nothing changed
};

/// Resolves the target, creates the edge for a Propose of an unknown triple
/// (HumanProposed, initially filtered until consensus runs), appends the
/// event and refreshes the edge's cached weight. Propose of an existing edge
/// counts as a Confirm. A repeated event_id is acknowledged without change.
/// Invalid or dangling events throw and leave ledger and graph untouched.
RecordOutcome record_feedback(VoteLedger& ledger, kg::KnowledgeGraph& graph, FeedbackEvent event);

/// Recomputes an edge's weight from the ledger. Throws Error{not_found} for
/// an edge the graph does not hold.
double effective_weight(const VoteLedger& ledger, const kg::KnowledgeGraph& graph,
                        std::string_view edge_id);

/// Zeroes every cached weight and re-records `events` in order, rebuilding
/// the ledger. Human edges missing from `graph` are recreated.
VoteLedger replay(kg::KnowledgeGraph& graph, const std::vector<FeedbackEvent>& events);

nlohmann::ordered_json to_json(const FeedbackEvent& event);
FeedbackEvent event_from_json(const nlohmann::json& j);

/// Blank lines are skipped; errors name the 1-based line.
std::vector<FeedbackEvent> read_ledger(std::istream& in);
/// A missing file is an empty ledger.
std::vector<FeedbackEvent> load_ledger(const std::filesystem::path& path);

/// Appends one JSON line per event to a file opened O_APPEND.
class LedgerWriter {
 public:
  LedgerWriter(const std::filesystem::path& path, bool fsync_each_append);
  ~LedgerWriter();

  LedgerWriter(const LedgerWriter&) = delete;
  LedgerWriter& operator=(const LedgerWriter&) = delete;

  void append(const FeedbackEvent& event);

 private:
  int fd_ = -1;
  bool fsync_;
  std::filesystem::path path_;
};

}  // namespace gamekg::feedback

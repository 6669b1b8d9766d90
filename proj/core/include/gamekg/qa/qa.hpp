#pragma once

// Question answering grounded in graph paths. Retrieval alone decides
// whether and what to answer; an optional phraser may only reword the text.

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gamekg/kg/graph.hpp"

namespace gamekg::qa {

inline constexpr std::string_view kRefusal = "The knowledge to generate an answer is not found.";

struct SynonymTable {
  // question verb form -> predicates ("broke" -> {"violated"})
  std::map<std::string, std::set<std::string>, std::less<>> verb_synonyms;
  // answer-type noun -> name tokens that satisfy it ("act" -> {"act", "statute", ...})
  std::map<std::string, std::set<std::string>, std::less<>> type_hints;

  static const SynonymTable& defaults();

  /// {"verb_synonyms": {...}, "type_hints": {...}}; keys and values are
  /// lowercased on load.
  static SynonymTable from_json(const nlohmann::json& object);
  static SynonymTable load(const std::filesystem::path& path);

  void merge(const SynonymTable& other);
};

struct Question {
  std::string text;
  std::vector<std::string> linked_entities;
  std::vector<std::string> normalized_tokens;  // lowercase, stop-words removed
};

/// Lowercase word tokens of `text` without stop-words.
std::vector<std::string> normalize_question(std::string_view text);

/// Longest-match scan of the question's tokens against every alias. Longer
/// matches win overlaps; results are ordered by position, each id once.
std::vector<std::string> link_entities(std::string_view question, const kg::KnowledgeGraph& graph);

Question parse_question(std::string_view text, const kg::KnowledgeGraph& graph);

enum class AnswerStatus { answered, not_found };

std::string_view to_string(AnswerStatus status) noexcept;

struct Answer {
  AnswerStatus status = AnswerStatus::not_found;
  std::string answer_text{kRefusal};
  std::string answer_entity;           // empty when not found
  std::vector<std::string> fact_path;  // edge ids from a linked entity to the answer
  std::vector<kg::Edge> path_edges;    // the same edges, copied at query time
  double score = 0.0;

  bool operator==(const Answer&) const = default;
};

struct QaOptions {
  std::size_t max_hops = 2;
  double predicate_bonus = 2.0;  // every path predicate matches a question verb
  double type_bonus = 1.0;       // per answer-name token matching a type hint
  double threshold = 2.0;
};

/// Rewords an answered result. Never consulted for refusals.
class AnswerPhraser {
 public:
  virtual ~AnswerPhraser() = default;
  virtual std::string phrase(std::string_view question, const Answer& answer) = 0;
};

/// Walks simple paths of up to max_hops active edges (either direction)
/// from each linked entity. A path scores predicate_bonus when all its
/// predicates are in the question's verb expansion, plus type_bonus per
/// answer-name token covered by the question's type hints. Best score, then
/// fewer hops, then entity id, then edge ids wins; below threshold the
/// refusal is returned. Internal failures also yield the refusal.
Answer answer(std::string_view question, const kg::KnowledgeGraph& graph,
              const SynonymTable& synonyms = SynonymTable::defaults(),
              const QaOptions& options = {}, AnswerPhraser* phraser = nullptr);

/// {status, answer, fact_path: [{edge_id, subject, predicate, object, provenance}], score}
nlohmann::ordered_json to_json(const Answer& answer);

}  // namespace gamekg::qa

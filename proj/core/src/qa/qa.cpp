#include "gamekg/qa/qa.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <tuple>

#include <spdlog/spdlog.h>

#include "../embedded_data.hpp"
#include "gamekg/error.hpp"
#include "gamekg/kg/jsonl.hpp"
#include "gamekg/text.hpp"

namespace gamekg::qa {

namespace {

const std::set<std::string, std::less<>>& stop_words() {
  static const std::set<std::string, std::less<>> words = {
      "a",    "an",   "and",   "are",   "be",   "been", "by",   "did",  "do",  "does",
      "for",  "had",  "has",   "have",  "how",  "in",   "is",   "of",   "on",  "or",
      "the",  "to",   "was",   "were",  "what", "when", "where", "which", "who", "whom",
      "whose", "why", "with"};
  return words;
}

std::set<std::string> lowered_set(const nlohmann::json& values) {
  std::set<std::string> out;
  for (const auto& v : values) out.insert(text::to_lower(text::trim(v.get<std::string>())));
  return out;
}

struct Path {
  std::vector<const kg::Edge*> edges;
  std::string end;
};

void walk(const kg::KnowledgeGraph& graph, const std::string& at, std::size_t max_hops,
          std::vector<std::string>& visited, std::vector<const kg::Edge*>& edges,
          std::vector<Path>& out) {
  if (edges.size() == max_hops) return;
  for (const auto& [edge, direction] : graph.neighbors(at)) {
    const std::string& next =
        direction == kg::Direction::outgoing ? edge.object_id : edge.subject_id;
    if (std::find(visited.begin(), visited.end(), next) != visited.end()) continue;
    edges.push_back(&graph.edge(edge.id));
    visited.push_back(next);
    out.push_back({edges, next});
    walk(graph, next, max_hops, visited, edges, out);
    visited.pop_back();
    edges.pop_back();
  }
}

std::string strip_leading_article(const std::string& name) {
  if (name.size() > 4 && text::to_lower(name.substr(0, 4)) == "the ") return name.substr(4);
  return name;
}

Answer answer_unphrased(std::string_view question, const kg::KnowledgeGraph& graph,
                        const SynonymTable& synonyms, const QaOptions& options) {
  const Question q = parse_question(question, graph);
  Answer best;
  if (q.linked_entities.empty()) return best;

  std::set<std::string> verbs;
  std::set<std::string> hints;
  for (const auto& token : q.normalized_tokens) {
    verbs.insert(token);
    if (auto it = synonyms.verb_synonyms.find(token); it != synonyms.verb_synonyms.end()) {
      verbs.insert(it->second.begin(), it->second.end());
    }
    if (auto it = synonyms.type_hints.find(token); it != synonyms.type_hints.end()) {
      hints.insert(it->second.begin(), it->second.end());
    }
  }
  const std::set<std::string> linked(q.linked_entities.begin(), q.linked_entities.end());

  std::vector<Path> paths;
  for (const auto& start : q.linked_entities) {
    std::vector<std::string> visited{start};
    std::vector<const kg::Edge*> edges;
    walk(graph, start, options.max_hops, visited, edges, paths);
  }

  const Path* winner = nullptr;
  std::vector<std::string> winner_ids;
  double winner_score = 0.0;
  for (const Path& path : paths) {
    if (linked.contains(path.end)) continue;
    double score = 0.0;
    const bool all_verbs = std::all_of(path.edges.begin(), path.edges.end(),
                                       [&](const kg::Edge* e) { return verbs.contains(e->predicate); });
    if (all_verbs) score += options.predicate_bonus;
    for (const auto& token : text::word_tokens(graph.entity(path.end).canonical_name)) {
      if (hints.contains(token)) score += options.type_bonus;
    }
    std::vector<std::string> ids;
    for (const kg::Edge* e : path.edges) ids.push_back(e->id);
    const double neg = -score;
    const double winner_neg = -winner_score;
    const std::size_t hops = path.edges.size();
    const std::size_t winner_hops = winner == nullptr ? 0 : winner->edges.size();
    const bool better = winner == nullptr || std::tie(neg, hops, path.end, ids) <
                                                 std::tie(winner_neg, winner_hops, winner->end, winner_ids);
    if (better) {
      winner = &path;
      winner_ids = std::move(ids);
      winner_score = score;
    }
  }

  if (winner == nullptr) return best;
  best.score = winner_score;
  if (winner_score < options.threshold) return best;

  best.status = AnswerStatus::answered;
  best.answer_entity = winner->end;
  best.answer_text = strip_leading_article(graph.entity(winner->end).canonical_name);
  best.fact_path = std::move(winner_ids);
  for (const kg::Edge* e : winner->edges) best.path_edges.push_back(*e);
  return best;
}

}  // namespace

const SynonymTable& SynonymTable::defaults() {
  static const SynonymTable table = from_json(nlohmann::json::parse(data::synonyms_json()));
  return table;
}

SynonymTable SynonymTable::from_json(const nlohmann::json& object) {
  if (!object.is_object()) fail(ErrorCode::parse, "synonym table must be a JSON object");
  SynonymTable table;
  try {
    if (auto it = object.find("verb_synonyms"); it != object.end()) {
      for (const auto& [verb, predicates] : it->items()) {
        auto& out = table.verb_synonyms[text::to_lower(text::trim(verb))];
        for (const auto& p : predicates) out.insert(kg::normalize_predicate(p.get<std::string>()));
      }
    }
    if (auto it = object.find("type_hints"); it != object.end()) {
      for (const auto& [noun, tokens] : it->items()) {
        auto& out = table.type_hints[text::to_lower(text::trim(noun))];
        const auto values = lowered_set(tokens);
        out.insert(values.begin(), values.end());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed synonym table: ") + e.what());
  }
  return table;
}

SynonymTable SynonymTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open synonym table " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, path.string() + ": " + e.what());
  }
}

void SynonymTable::merge(const SynonymTable& other) {
  for (const auto& [k, v] : other.verb_synonyms) verb_synonyms[k].insert(v.begin(), v.end());
  for (const auto& [k, v] : other.type_hints) type_hints[k].insert(v.begin(), v.end());
}

std::vector<std::string> normalize_question(std::string_view text) {
  std::vector<std::string> out;
  for (auto& token : text::word_tokens(text)) {
    if (!stop_words().contains(token)) out.push_back(std::move(token));
  }
  return out;
}

std::vector<std::string> link_entities(std::string_view question, const kg::KnowledgeGraph& graph) {
  const auto tokens = text::word_tokens(question);
  struct Match {
    std::size_t pos;
    std::size_t length;
    std::string id;
  };
  std::vector<Match> matches;
  for (const auto& [id, entity] : graph.entities()) {
    for (const auto& alias : entity.aliases) {
      const auto alias_tokens = text::word_tokens(alias);
      if (alias_tokens.empty() || alias_tokens.size() > tokens.size()) continue;
      for (std::size_t pos = 0; pos + alias_tokens.size() <= tokens.size(); ++pos) {
        if (std::equal(alias_tokens.begin(), alias_tokens.end(), tokens.begin() + pos)) {
          matches.push_back({pos, alias_tokens.size(), id});
        }
      }
    }
  }
  std::sort(matches.begin(), matches.end(), [](const Match& a, const Match& b) {
    return std::tie(b.length, a.pos, a.id) < std::tie(a.length, b.pos, b.id);
  });
  std::vector<bool> taken(tokens.size(), false);
  std::vector<Match> kept;
  for (auto& m : matches) {
    const bool free = std::none_of(taken.begin() + m.pos, taken.begin() + m.pos + m.length,
                                   [](bool t) { return t; });
    if (!free) continue;
    std::fill(taken.begin() + m.pos, taken.begin() + m.pos + m.length, true);
    kept.push_back(std::move(m));
  }
  std::sort(kept.begin(), kept.end(), [](const Match& a, const Match& b) { return a.pos < b.pos; });
  std::vector<std::string> out;
  for (auto& m : kept) {
    if (std::find(out.begin(), out.end(), m.id) == out.end()) out.push_back(std::move(m.id));
  }
  return out;
}

Question parse_question(std::string_view text, const kg::KnowledgeGraph& graph) {
  return {std::string(text), link_entities(text, graph), normalize_question(text)};
}

std::string_view to_string(AnswerStatus status) noexcept {
  return status == AnswerStatus::answered ? "answered" : "not_found";
}

Answer answer(std::string_view question, const kg::KnowledgeGraph& graph,
              const SynonymTable& synonyms, const QaOptions& options, AnswerPhraser* phraser) {
  Answer result;
  try {
    result = answer_unphrased(question, graph, synonyms, options);
  } catch (const std::exception& e) {
    spdlog::warn("qa: answering failed: {}", e.what());
    return Answer{};
  }
  if (phraser != nullptr && result.status == AnswerStatus::answered) {
    try {
      result.answer_text = phraser->phrase(question, result);
    } catch (const std::exception& e) {
      spdlog::warn("qa: phrasing failed, keeping the canonical answer: {}", e.what());
    }
  }
  return result;
}

nlohmann::ordered_json to_json(const Answer& answer) {
  nlohmann::ordered_json j;
  j["status"] = to_string(answer.status);
  j["answer"] = answer.answer_text;
  j["fact_path"] = nlohmann::ordered_json::array();
  for (const kg::Edge& e : answer.path_edges) {
    nlohmann::ordered_json fact;
    fact["edge_id"] = e.id;
    fact["subject"] = e.subject_id;
    fact["predicate"] = e.predicate;
    fact["object"] = e.object_id;
    fact["provenance"] = kg::to_json(e.provenance);
    j["fact_path"].push_back(std::move(fact));
  }
  j["score"] = answer.score;
  return j;
}

}  // namespace gamekg::qa

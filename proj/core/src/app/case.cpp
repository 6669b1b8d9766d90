#include "gamekg/app/case.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "gamekg/error.hpp"
#include "gamekg/text.hpp"

namespace gamekg::app {

namespace {

std::set<std::string> neighbor_ids(const kg::KnowledgeGraph& graph, const std::string& id) {
  std::set<std::string> out;
  for (const auto& [edge, direction] : graph.neighbors(id)) {
    out.insert(direction == kg::Direction::outgoing ? edge.object_id : edge.subject_id);
  }
  out.erase(id);
  return out;
}

std::set<std::string> around_pair(const kg::KnowledgeGraph& graph, const std::string& a,
                                  const std::string& b, std::size_t cap) {
  std::set<std::string> ids{a, b};
  std::set<std::string> extra = neighbor_ids(graph, a);
  extra.merge(neighbor_ids(graph, b));
  for (const auto& id : extra) {
    if (ids.size() >= cap) break;
    ids.insert(id);
  }
  return ids;
}

std::set<std::string> random_component(const kg::KnowledgeGraph& graph, std::size_t cap,
                                       std::mt19937_64& rng) {
  std::vector<std::string> starts;
  for (const auto& [id, entity] : graph.entities()) {
    if (!neighbor_ids(graph, id).empty()) starts.push_back(id);
  }
  if (starts.empty()) fail(ErrorCode::no_case, "the graph has no active edges to build a case from");

  std::set<std::string> ids;
  std::deque<std::string> queue{starts[rng() % starts.size()]};
  ids.insert(queue.front());
  while (!queue.empty() && ids.size() < cap) {
    const std::string at = std::move(queue.front());
    queue.pop_front();
    const auto next = neighbor_ids(graph, at);
    std::vector<std::string> order(next.begin(), next.end());
    std::shuffle(order.begin(), order.end(), rng);
    for (auto& id : order) {
      if (ids.size() >= cap) break;
      if (ids.insert(id).second) queue.push_back(std::move(id));
    }
  }
  return ids;
}

std::string draw_token(std::mt19937_64& rng) { return text::hex64(rng()) + text::hex64(rng()); }

}  // namespace

std::string_view to_string(CaseStrategy strategy) noexcept {
  return strategy == CaseStrategy::priority ? "priority" : "random";
}

CaseStrategy case_strategy_from_string(std::string_view name) {
  if (name == "priority") return CaseStrategy::priority;
  if (name == "random") return CaseStrategy::random;
  fail(ErrorCode::validation, "unknown case strategy '" + std::string(name) + "'");
}

const PresentedEntity* Case::by_token(std::string_view token) const {
  for (const auto& p : presented) {
    if (p.token == token) return &p;
  }
  return nullptr;
}

const PresentedEntity* Case::by_entity(std::string_view entity_id) const {
  for (const auto& p : presented) {
    if (p.entity_id == entity_id) return &p;
  }
  return nullptr;
}

bool Case::allows_predicate(std::string_view predicate) const {
  return std::binary_search(predicates.begin(), predicates.end(), predicate);
}

Case build_case(const kg::KnowledgeGraph& graph,
                std::span<const scoring::CandidateFinding> ranked_findings,
                const std::set<std::string>& served, const CaseOptions& options,
                std::uint64_t seed, narrative::TextGenerator* external,
                const narrative::NamePools& pools) {
  if (options.entity_cap < 2) fail(ErrorCode::validation, "case entity cap must be at least 2");
  if (graph.entities().size() < 2) {
    fail(ErrorCode::no_case, "a case needs a graph with at least two entities");
  }

  Case c;
  c.seed = seed;
  std::mt19937_64 rng(seed);
  std::set<std::string> ids;
  if (options.strategy == CaseStrategy::priority) {
    for (const auto& finding : ranked_findings) {
      std::string key = finding.key();
      if (served.contains(key)) continue;
      ids = around_pair(graph, finding.entity_a, finding.entity_b, options.entity_cap);
      c.finding_key = std::move(key);
      break;
    }
  }
  if (ids.empty()) ids = random_component(graph, options.entity_cap, rng);

  const kg::KnowledgeGraph subgraph = kg::induced_subgraph(graph, ids);
  c.entity_ids.assign(ids.begin(), ids.end());
  for (const kg::Edge* e : subgraph.edges_by_triple()) c.edges.push_back(*e);
  for (const auto& finding : ranked_findings) {
    if (ids.contains(finding.entity_a) && ids.contains(finding.entity_b)) {
      c.findings.push_back(finding);
    }
  }

  c.pseudonyms = narrative::make_pseudonyms(subgraph, seed, pools);
  c.narrative = narrative::generate_narrative(subgraph, c.pseudonyms, external, options.narrative);

  std::mt19937_64 token_rng(seed ^ 0x9e3779b97f4a7c15ULL);
  c.case_id = "case-" + draw_token(token_rng);
  std::set<std::string> used;
  for (const auto& id : c.entity_ids) {
    std::string token = draw_token(token_rng);
    while (!used.insert(token).second) token = draw_token(token_rng);
    c.presented.push_back({std::move(token), c.pseudonyms.at(id), id});
  }
  std::sort(c.presented.begin(), c.presented.end(),
            [](const PresentedEntity& a, const PresentedEntity& b) {
              return std::tie(a.pseudonym, a.token) < std::tie(b.pseudonym, b.token);
            });

  std::set<std::string> predicates(options.predicates.begin(), options.predicates.end());
  for (const auto& e : c.edges) predicates.insert(e.predicate);
  c.predicates.assign(predicates.begin(), predicates.end());
  return c;
}

nlohmann::ordered_json client_view(const Case& c) {
  nlohmann::ordered_json j;
  j["case_id"] = c.case_id;
  j["narrative"] = c.narrative.case_text;
  j["presented_entities"] = nlohmann::ordered_json::array();
  for (const auto& p : c.presented) {
    j["presented_entities"].push_back({{"token", p.token}, {"pseudonym", p.pseudonym}});
  }
  j["candidate_hints"] = nlohmann::ordered_json::array();
  for (const auto& f : c.findings) {
    nlohmann::ordered_json hint;
    // Pairs are unordered; order by token so the id order stays private.
    auto a = c.by_entity(f.entity_a)->token;
    auto b = c.by_entity(f.entity_b)->token;
    if (b < a) std::swap(a, b);
    hint["source_token"] = std::move(a);
    hint["target_token"] = std::move(b);
    hint["kind"] = scoring::to_string(f.kind);
    j["candidate_hints"].push_back(std::move(hint));
  }
  j["predicates"] = c.predicates;
  j["connections"] = nlohmann::ordered_json::array();
  for (const auto& e : c.edges) {
    nlohmann::ordered_json conn;
    conn["source_token"] = c.by_entity(e.subject_id)->token;
    conn["predicate"] = e.predicate;
    conn["target_token"] = c.by_entity(e.object_id)->token;
    conn["style"] = e.is_human_proposed() ? "dashed" : "solid";
    j["connections"].push_back(std::move(conn));
  }
  return j;
}

}  // namespace gamekg::app

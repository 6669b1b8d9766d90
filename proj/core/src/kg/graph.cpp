#include "gamekg/kg/graph.hpp"

#include <algorithm>
#include <tuple>

#include "gamekg/error.hpp"
#include "gamekg/text.hpp"

namespace gamekg::kg {

std::string_view to_string(EntityType type) noexcept {
  switch (type) {
    case EntityType::person: return "person";
    case EntityType::organization: return "organization";
    case EntityType::location: return "location";
    case EntityType::statute: return "statute";
    case EntityType::other: return "other";
  }
  return "other";
}

EntityType entity_type_from_string(std::string_view name) {
  if (name == "person") return EntityType::person;
  if (name == "organization") return EntityType::organization;
  if (name == "location") return EntityType::location;
  if (name == "statute") return EntityType::statute;
  if (name == "other") return EntityType::other;
  fail(ErrorCode::validation, "unknown entity type '" + std::string(name) + "'");
}

std::string_view to_string(EdgeStatus status) noexcept {
  return status == EdgeStatus::active ? "active" : "filtered";
}

EdgeStatus edge_status_from_string(std::string_view name) {
  if (name == "active") return EdgeStatus::active;
  if (name == "filtered") return EdgeStatus::filtered;
  fail(ErrorCode::validation, "unknown edge status '" + std::string(name) + "'");
}

std::string make_edge_id(std::string_view subject_id, std::string_view predicate,
                         std::string_view object_id) {
  std::string key;
  key.reserve(subject_id.size() + predicate.size() + object_id.size() + 2);
  key.append(subject_id).append("|").append(predicate).append("|").append(object_id);
  return text::hex64(text::fnv1a64(key));
}

std::string normalize_predicate(std::string_view predicate) {
  std::string out = text::to_lower(text::collapse_whitespace(predicate));
  if (out.empty()) fail(ErrorCode::validation, "predicate must not be empty");
  return out;
}

namespace {

void check_provenance(const Provenance& provenance) {
  if (const auto* source = std::get_if<ExplicitSource>(&provenance)) {
    if (source->doc_id.empty()) {
      fail(ErrorCode::validation, "explicit edge requires a document id");
    }
  } else if (std::get<HumanProposal>(provenance).first_proposer.empty()) {
    fail(ErrorCode::validation, "human-proposed edge requires a proposer id");
  }
}

auto triple_key(const Edge& e) {
  return std::tie(e.subject_id, e.predicate, e.object_id);
}

}  // namespace

std::string KnowledgeGraph::upsert_entity(std::string_view name, EntityType type,
                                          std::optional<std::string_view> doc_id) {
  const std::string surface = text::collapse_whitespace(name);
  const std::string slug = text::slugify(surface);
  if (slug.empty()) {
    fail(ErrorCode::validation, "entity name must contain a letter or digit");
  }
  std::string id;
  if (auto it = alias_index_.find(slug); it != alias_index_.end()) {
    id = it->second;
    entities_.at(id).aliases.insert(surface);
  } else {
    Entity entity{slug, surface, {surface}, type, {}};
    id = slug;
    entities_.emplace(id, std::move(entity));
    alias_index_.emplace(slug, id);
    incident_[id];
  }
  if (doc_id && !doc_id->empty()) {
    entities_.at(id).source_doc_ids.emplace(*doc_id);
  }
  return id;
}

void KnowledgeGraph::add_alias(std::string_view entity_id, std::string_view alias) {
  auto it = entities_.find(entity_id);
  if (it == entities_.end()) {
    fail(ErrorCode::not_found, "unknown entity '" + std::string(entity_id) + "'");
  }
  const std::string surface = text::collapse_whitespace(alias);
  index_alias(it->first, surface);
  it->second.aliases.insert(surface);
}

void KnowledgeGraph::index_alias(const std::string& entity_id, std::string_view alias) {
  const std::string slug = text::slugify(alias);
  if (slug.empty()) {
    fail(ErrorCode::validation, "alias must contain a letter or digit");
  }
  auto [it, inserted] = alias_index_.emplace(slug, entity_id);
  if (!inserted && it->second != entity_id) {
    fail(ErrorCode::integrity, "alias '" + std::string(alias) +
                                   "' already resolves to entity '" + it->second + "'");
  }
}

EdgeUpsert KnowledgeGraph::upsert_edge(std::string_view subject_id,
                                       std::string_view predicate,
                                       std::string_view object_id, Provenance provenance,
                                       EdgeStatus initial_status) {
  for (std::string_view endpoint : {subject_id, object_id}) {
    if (!entities_.contains(endpoint)) {
      fail(ErrorCode::integrity,
           "edge endpoint '" + std::string(endpoint) + "' is not in the graph");
    }
  }
  const std::string pred = normalize_predicate(predicate);
  check_provenance(provenance);

  const std::string id = make_edge_id(subject_id, pred, object_id);
  if (auto it = edges_.find(id); it != edges_.end()) {
    Edge& existing = it->second;
    if (existing.subject_id != subject_id || existing.predicate != pred ||
        existing.object_id != object_id) {
      fail(ErrorCode::integrity, "edge id collision on '" + id + "'");
    }
    const bool conflict = is_explicit(existing.provenance) != is_explicit(provenance);
    if (conflict && is_explicit(provenance)) {
      // A document now states what players proposed.
      existing.provenance = std::move(provenance);
      existing.status = EdgeStatus::active;
    }
    return {id, false, conflict};
  }

  Edge edge{id,  std::string(subject_id), pred, std::string(object_id),
            std::move(provenance), 0.0, initial_status};
  incident_[edge.subject_id].insert(id);
  incident_[edge.object_id].insert(id);
  edges_.emplace(id, std::move(edge));
  return {id, true, false};
}

void KnowledgeGraph::add_document(Document document) {
  if (document.id.empty()) fail(ErrorCode::validation, "document id must not be empty");
  if (text::trim(document.body).empty()) {
    fail(ErrorCode::validation, "document '" + document.id + "' has an empty body");
  }
  if (auto it = documents_.find(document.id); it != documents_.end()) {
    if (it->second == document) return;
    fail(ErrorCode::integrity, "document id '" + document.id + "' is already used");
  }
  const std::string id = document.id;
  documents_.emplace(id, std::move(document));
}

void KnowledgeGraph::insert_entity(Entity entity) {
  if (entity.canonical_name.empty()) {
    fail(ErrorCode::validation, "entity '" + entity.id + "' has an empty name");
  }
  if (entity.id != text::slugify(entity.canonical_name)) {
    fail(ErrorCode::integrity, "entity id '" + entity.id +
                                   "' does not match the slug of '" +
                                   entity.canonical_name + "'");
  }
  if (!entity.aliases.contains(entity.canonical_name)) {
    fail(ErrorCode::integrity,
         "entity '" + entity.id + "' does not list its canonical name as an alias");
  }
  if (entities_.contains(entity.id)) {
    fail(ErrorCode::integrity, "duplicate entity id '" + entity.id + "'");
  }
  for (const auto& alias : entity.aliases) index_alias(entity.id, alias);
  incident_[entity.id];
  const std::string id = entity.id;
  entities_.emplace(id, std::move(entity));
}

void KnowledgeGraph::insert_edge(Edge edge) {
  for (const std::string& endpoint : {edge.subject_id, edge.object_id}) {
    if (!entities_.contains(endpoint)) {
      fail(ErrorCode::integrity,
           "edge endpoint '" + endpoint + "' is not in the graph");
    }
  }
  if (edge.predicate.empty() || normalize_predicate(edge.predicate) != edge.predicate) {
    fail(ErrorCode::validation, "edge predicate '" + edge.predicate + "' is not normalized");
  }
  check_provenance(edge.provenance);
  if (edge.id != make_edge_id(edge.subject_id, edge.predicate, edge.object_id)) {
    fail(ErrorCode::integrity, "edge id '" + edge.id + "' does not match its triple");
  }
  if (edges_.contains(edge.id)) {
    fail(ErrorCode::integrity, "duplicate edge id '" + edge.id + "'");
  }
  incident_[edge.subject_id].insert(edge.id);
  incident_[edge.object_id].insert(edge.id);
  const std::string id = edge.id;
  edges_.emplace(id, std::move(edge));
}

Edge& KnowledgeGraph::mutable_edge(std::string_view id) {
  auto it = edges_.find(id);
  if (it == edges_.end()) fail(ErrorCode::not_found, "unknown edge '" + std::string(id) + "'");
  return it->second;
}

void KnowledgeGraph::set_edge_weight(std::string_view edge_id, double weight) {
  mutable_edge(edge_id).weight = weight;
}

void KnowledgeGraph::set_edge_status(std::string_view edge_id, EdgeStatus status) {
  mutable_edge(edge_id).status = status;
}

const Entity* KnowledgeGraph::find_entity(std::string_view id) const {
  auto it = entities_.find(id);
  return it == entities_.end() ? nullptr : &it->second;
}

const Entity& KnowledgeGraph::entity(std::string_view id) const {
  if (const Entity* e = find_entity(id)) return *e;
  fail(ErrorCode::not_found, "unknown entity '" + std::string(id) + "'");
}

const Edge* KnowledgeGraph::find_edge(std::string_view id) const {
  auto it = edges_.find(id);
  return it == edges_.end() ? nullptr : &it->second;
}

const Edge& KnowledgeGraph::edge(std::string_view id) const {
  if (const Edge* e = find_edge(id)) return *e;
  fail(ErrorCode::not_found, "unknown edge '" + std::string(id) + "'");
}

const Document* KnowledgeGraph::find_document(std::string_view id) const {
  auto it = documents_.find(id);
  return it == documents_.end() ? nullptr : &it->second;
}

std::optional<std::string> KnowledgeGraph::resolve(std::string_view surface) const {
  auto it = alias_index_.find(text::slugify(surface));
  if (it == alias_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<const Edge*> KnowledgeGraph::edges_by_triple() const {
  std::vector<const Edge*> out;
  out.reserve(edges_.size());
  for (const auto& [id, edge] : edges_) out.push_back(&edge);
  std::sort(out.begin(), out.end(), [](const Edge* a, const Edge* b) {
    return triple_key(*a) < triple_key(*b);
  });
  return out;
}

std::vector<Incidence> KnowledgeGraph::neighbors(std::string_view entity_id) const {
  auto it = incident_.find(entity_id);
  if (it == incident_.end()) {
    fail(ErrorCode::not_found, "unknown entity '" + std::string(entity_id) + "'");
  }
  std::vector<Incidence> out;
  for (const auto& edge_id : it->second) {
    const Edge& e = edges_.find(edge_id)->second;
    if (!e.is_active()) continue;
    out.push_back({e, e.subject_id == entity_id ? Direction::outgoing : Direction::incoming});
  }
  std::sort(out.begin(), out.end(), [](const Incidence& a, const Incidence& b) {
    return triple_key(a.edge) < triple_key(b.edge);
  });
  return out;
}

std::vector<const Edge*> KnowledgeGraph::active_edges_between(std::string_view a,
                                                              std::string_view b) const {
  std::vector<const Edge*> out;
  auto it = incident_.find(a);
  if (it == incident_.end()) return out;
  for (const auto& edge_id : it->second) {
    const Edge& e = edges_.find(edge_id)->second;
    if (!e.is_active()) continue;
    if ((e.subject_id == a && e.object_id == b) || (e.subject_id == b && e.object_id == a)) {
      out.push_back(&e);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Edge* x, const Edge* y) { return triple_key(*x) < triple_key(*y); });
  return out;
}

bool KnowledgeGraph::connected(std::string_view a, std::string_view b) const {
  return !active_edges_between(a, b).empty();
}

KnowledgeGraph induced_subgraph(const KnowledgeGraph& graph,
                                const std::set<std::string>& entity_ids) {
  KnowledgeGraph out;
  for (const auto& id : entity_ids) out.insert_entity(graph.entity(id));
  for (const Edge* e : graph.edges_by_triple()) {
    if (e->is_active() && entity_ids.contains(e->subject_id) &&
        entity_ids.contains(e->object_id)) {
      out.insert_edge(*e);
    }
  }
  return out;
}

KnowledgeGraph active_view(const KnowledgeGraph& graph) {
  KnowledgeGraph out;
  for (const auto& [id, doc] : graph.documents()) out.add_document(doc);
  for (const auto& [id, entity] : graph.entities()) out.insert_entity(entity);
  for (const auto& [id, edge] : graph.edges()) {
    if (edge.is_active()) out.insert_edge(edge);
  }
  return out;
}

}  // namespace gamekg::kg

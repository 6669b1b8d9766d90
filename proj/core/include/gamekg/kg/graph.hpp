#pragma once

// Provenance-tagged knowledge graph. Entities are nodes keyed by a slug of
// their canonical name; edges are directed (subject -> object) predicate
// labels whose id is a pure function of the triple.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gamekg::kg {

enum class EntityType { person, organization, location, statute, other };

std::string_view to_string(EntityType type) noexcept;
EntityType entity_type_from_string(std::string_view name);

struct Entity {
  std::string id;
  std::string canonical_name;
  std::set<std::string> aliases;
  EntityType type = EntityType::other;
  std::set<std::string> source_doc_ids;

  bool operator==(const Entity&) const = default;
};

/// Edge stated by a document sentence (drawn solid).
struct ExplicitSource {
  std::string doc_id;
  std::size_t sentence_index = 0;

  bool operator==(const ExplicitSource&) const = default;
};

/// Edge introduced by a player (drawn dashed).
struct HumanProposal {
  std::string first_proposer;

  bool operator==(const HumanProposal&) const = default;
};

using Provenance = std::variant<ExplicitSource, HumanProposal>;

inline bool is_explicit(const Provenance& p) noexcept {
  return std::holds_alternative<ExplicitSource>(p);
}

enum class EdgeStatus { active, filtered };

std::string_view to_string(EdgeStatus status) noexcept;
EdgeStatus edge_status_from_string(std::string_view name);

struct Edge {
  std::string id;
  std::string subject_id;
  std::string predicate;
  std::string object_id;
  Provenance provenance;
  double weight = 0.0;
  EdgeStatus status = EdgeStatus::active;

  bool is_active() const noexcept { return status == EdgeStatus::active; }
  bool is_human_proposed() const noexcept { return !is_explicit(provenance); }

  bool operator==(const Edge&) const = default;
};

struct Document {
  std::string id;
  std::string title;
  std::string body;
  std::optional<std::string> source_uri;

  bool operator==(const Document&) const = default;
};

/// Stable edge id: FNV-1a over "subject|predicate|object", hex encoded.
std::string make_edge_id(std::string_view subject_id, std::string_view predicate,
                         std::string_view object_id);

/// Trim, lowercase and collapse whitespace. Throws on an empty result.
std::string normalize_predicate(std::string_view predicate);

enum class Direction { outgoing, incoming };

struct Incidence {
  Edge edge;
  Direction direction;
};

struct EdgeUpsert {
  std::string edge_id;
  bool inserted = false;
  // The triple already existed with the other provenance kind. Explicit wins;
  // callers treat the arrival as a confirmation of the existing edge.
  bool provenance_conflict = false;
};

class KnowledgeGraph {
 public:
  using EntityMap = std::map<std::string, Entity, std::less<>>;
  using EdgeMap = std::map<std::string, Edge, std::less<>>;
  using DocumentMap = std::map<std::string, Document, std::less<>>;

  /// Returns the id of the entity `name` resolves to (by normalized alias),
  /// creating it when unknown. The surface form becomes an alias and
  /// `doc_id` is unioned into the source documents.
  std::string upsert_entity(std::string_view name, EntityType type,
                            std::optional<std::string_view> doc_id = std::nullopt);

  /// Registers an extra surface form. Fails if it already resolves elsewhere.
  void add_alias(std::string_view entity_id, std::string_view alias);

  EdgeUpsert upsert_edge(std::string_view subject_id, std::string_view predicate,
                         std::string_view object_id, Provenance provenance,
                         EdgeStatus initial_status = EdgeStatus::active);

  /// Adds a document; re-adding an identical document is a no-op.
  void add_document(Document document);

  // Strict inserts used when restoring persisted graphs. Every identity and
  // integrity rule is checked and nothing is merged.
  void insert_entity(Entity entity);
  void insert_edge(Edge edge);

  void set_edge_weight(std::string_view edge_id, double weight);
  void set_edge_status(std::string_view edge_id, EdgeStatus status);

  const Entity* find_entity(std::string_view id) const;
  const Entity& entity(std::string_view id) const;
  const Edge* find_edge(std::string_view id) const;
  const Edge& edge(std::string_view id) const;
  const Document* find_document(std::string_view id) const;

  /// Entity id an arbitrary surface form resolves to, if any.
  std::optional<std::string> resolve(std::string_view surface) const;

  const EntityMap& entities() const noexcept { return entities_; }
  const EdgeMap& edges() const noexcept { return edges_; }
  const DocumentMap& documents() const noexcept { return documents_; }

  /// All edges ordered by (subject_id, predicate, object_id).
  std::vector<const Edge*> edges_by_triple() const;

  /// Active edges incident to `entity_id`, ordered by (subject, predicate,
  /// object). A self-loop is reported once, as outgoing.
  std::vector<Incidence> neighbors(std::string_view entity_id) const;

  /// Active edges between two entities in either direction.
  std::vector<const Edge*> active_edges_between(std::string_view a,
                                                std::string_view b) const;
  bool connected(std::string_view a, std::string_view b) const;

  bool empty() const noexcept {
    return entities_.empty() && edges_.empty() && documents_.empty();
  }

  bool operator==(const KnowledgeGraph&) const = default;

 private:
  Edge& mutable_edge(std::string_view id);
  void index_alias(const std::string& entity_id, std::string_view alias);

  EntityMap entities_;
  EdgeMap edges_;
  DocumentMap documents_;
  std::map<std::string, std::string, std::less<>> alias_index_;  // slug -> id
  std::map<std::string, std::set<std::string>, std::less<>> incident_;  // id -> edge ids
};

/// The entities in `entity_ids` plus every active edge among them.
KnowledgeGraph induced_subgraph(const KnowledgeGraph& graph,
                                const std::set<std::string>& entity_ids);

/// Copy of the graph without filtered edges.
KnowledgeGraph active_view(const KnowledgeGraph& graph);

}  // namespace gamekg::kg

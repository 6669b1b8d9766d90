#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gamekg/kg/graph.hpp"

namespace gamekg::narrative {

/// Fictional names per entity type.
struct NamePools {
  std::map<kg::EntityType, std::vector<std::string>> pools;

  /// The shipped pools (80 persons, 24 statutes, 24 organizations,
  /// 24 locations, 48 generic labels).
  static const NamePools& defaults();

  /// {"person": [...], "statute": [...], ...}
  static NamePools from_json(const nlohmann::json& object);
  static NamePools load(const std::filesystem::path& path);

  const std::vector<std::string>& pool(kg::EntityType type) const;
};

struct PseudonymMap {
  std::map<std::string, std::string, std::less<>> names;  // entity id -> pseudonym
  std::uint64_t seed = 0;

  const std::string& at(std::string_view entity_id) const;
  bool covers(const kg::KnowledgeGraph& subgraph) const;

  bool operator==(const PseudonymMap&) const = default;
};

/// Draws without replacement from each type's pool with a mt19937_64 seeded
/// by `seed`, visiting entities in id order. Pool entries that contain any
/// real alias of the subgraph are never drawn. Throws Error{pool_exhausted}
/// naming the type when a pool runs dry.
PseudonymMap make_pseudonyms(const kg::KnowledgeGraph& subgraph, std::uint64_t seed,
                             const NamePools& pools = NamePools::defaults());

}  // namespace gamekg::narrative

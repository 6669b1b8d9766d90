#include "gamekg/narrative/pseudonyms.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <random>
#include <set>

#include "../embedded_data.hpp"
#include "gamekg/error.hpp"
#include "gamekg/text.hpp"

namespace gamekg::narrative {

const NamePools& NamePools::defaults() {
  static const NamePools pools = from_json(nlohmann::json::parse(data::name_pools_json()));
  return pools;
}

NamePools NamePools::from_json(const nlohmann::json& object) {
  if (!object.is_object()) fail(ErrorCode::parse, "name pools must be a JSON object");
  NamePools out;
  for (const auto& [type, names] : object.items()) {
    auto& pool = out.pools[kg::entity_type_from_string(type)];
    for (const auto& name : names) {
      const std::string value = text::collapse_whitespace(name.get<std::string>());
      if (value.empty()) fail(ErrorCode::parse, "empty name in pool '" + type + "'");
      if (std::find(pool.begin(), pool.end(), value) == pool.end()) pool.push_back(value);
    }
  }
  return out;
}

NamePools NamePools::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open name pools " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, path.string() + ": " + e.what());
  }
}

const std::vector<std::string>& NamePools::pool(kg::EntityType type) const {
  static const std::vector<std::string> empty;
  auto it = pools.find(type);
  return it == pools.end() ? empty : it->second;
}

const std::string& PseudonymMap::at(std::string_view entity_id) const {
  auto it = names.find(entity_id);
  if (it == names.end()) {
    fail(ErrorCode::validation, "no pseudonym for entity '" + std::string(entity_id) + "'");
  }
  return it->second;
}

bool PseudonymMap::covers(const kg::KnowledgeGraph& subgraph) const {
  for (const auto& [id, entity] : subgraph.entities()) {
    if (!names.contains(id)) return false;
  }
  return true;
}

PseudonymMap make_pseudonyms(const kg::KnowledgeGraph& subgraph, std::uint64_t seed,
                             const NamePools& pools) {
  if (subgraph.entities().empty()) {
    fail(ErrorCode::validation, "cannot pseudonymize an empty subgraph");
  }
  std::vector<std::string> aliases;
  for (const auto& [id, entity] : subgraph.entities()) {
    aliases.insert(aliases.end(), entity.aliases.begin(), entity.aliases.end());
  }
  auto leaks = [&](const std::string& candidate) {
    for (const auto& alias : aliases) {
      if (text::contains_phrase(candidate, alias)) return true;
    }
    return false;
  };

  std::map<kg::EntityType, std::vector<std::string>> remaining;
  for (const auto& [type, names] : pools.pools) {
    auto& list = remaining[type];
    for (const auto& name : names) {
      if (!leaks(name)) list.push_back(name);
    }
  }

  std::mt19937_64 rng(seed);
  PseudonymMap out;
  out.seed = seed;
  std::set<std::string> used;  // pools of different types may overlap
  for (const auto& [id, entity] : subgraph.entities()) {
    auto& list = remaining[entity.type];
    std::optional<std::string> drawn;
    while (!drawn && !list.empty()) {
      const std::size_t pick = static_cast<std::size_t>(rng() % list.size());
      std::string name = std::move(list[pick]);
      list[pick] = std::move(list.back());
      list.pop_back();
      if (used.insert(name).second) drawn = std::move(name);
    }
    if (!drawn) {
      fail(ErrorCode::pool_exhausted, "name pool '" + std::string(kg::to_string(entity.type)) +
                                          "' is exhausted");
    }
    out.names.emplace(id, std::move(*drawn));
  }
  return out;
}

}  // namespace gamekg::narrative

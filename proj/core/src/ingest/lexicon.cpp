#include "gamekg/ingest/lexicon.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "../embedded_data.hpp"
#include "gamekg/error.hpp"
#include "gamekg/kg/graph.hpp"
#include "gamekg/text.hpp"

namespace gamekg::ingest {

PredicateLexicon PredicateLexicon::seed() {
  static const PredicateLexicon lexicon =
      from_json(nlohmann::json::parse(data::lexicon_json()));
  return lexicon;
}

PredicateLexicon PredicateLexicon::from_json(const nlohmann::json& object) {
  if (!object.is_object()) {
    fail(ErrorCode::parse, "lexicon must be a JSON object of surface -> predicate");
  }
  PredicateLexicon lexicon;
  for (const auto& [surface, canonical] : object.items()) {
    if (!canonical.is_string()) {
      fail(ErrorCode::parse, "lexicon entry '" + surface + "' is not a string");
    }
    lexicon.add(surface, canonical.get<std::string>());
  }
  return lexicon;
}

PredicateLexicon PredicateLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open lexicon " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, path.string() + ": " + e.what());
  }
}

void PredicateLexicon::add(std::string_view surface, std::string_view canonical) {
  const std::string key = text::to_lower(text::collapse_whitespace(surface));
  if (key.empty()) fail(ErrorCode::validation, "lexicon surface form must not be empty");
  const std::string value = kg::normalize_predicate(canonical);
  std::size_t tokens = 1;
  for (char c : key) tokens += c == ' ' ? 1 : 0;
  max_tokens_ = std::max(max_tokens_, tokens);
  entries_[key] = value;
}

void PredicateLexicon::merge(const PredicateLexicon& other) {
  for (const auto& [surface, canonical] : other.entries_) add(surface, canonical);
}

std::optional<PredicateLexicon::Match> PredicateLexicon::match(
    std::span<const std::string> lower_tokens, std::size_t pos) const {
  if (pos >= lower_tokens.size()) return std::nullopt;
  const std::size_t longest = std::min(max_tokens_, lower_tokens.size() - pos);
  std::string key;
  std::optional<Match> best;
  for (std::size_t n = 1; n <= longest; ++n) {
    if (n > 1) key.push_back(' ');
    key += lower_tokens[pos + n - 1];
    if (auto it = entries_.find(key); it != entries_.end()) best = Match{it->second, n};
  }
  return best;
}

std::vector<std::string> PredicateLexicon::predicates() const {
  std::set<std::string> unique;
  for (const auto& [surface, canonical] : entries_) unique.insert(canonical);
  return {unique.begin(), unique.end()};
}

}  // namespace gamekg::ingest

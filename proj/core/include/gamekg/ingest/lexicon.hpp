#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace gamekg::ingest {

/// Maps verb surface forms to canonical predicates ("broke" -> "violated").
/// Keys containing spaces are phrase patterns matched token by token
/// ("was an accomplice to" -> "accomplice_to").
class PredicateLexicon {
 public:
  struct Match {
    std::string predicate;
    std::size_t length = 0;  // tokens consumed
  };

  /// The built-in vocabulary covering the trafficking fixtures.
  static PredicateLexicon seed();
  static PredicateLexicon from_json(const nlohmann::json& object);
  static PredicateLexicon load(const std::filesystem::path& path);

  void add(std::string_view surface, std::string_view canonical);

  /// Entries of `other` override ours.
  void merge(const PredicateLexicon& other);

  /// Longest entry matching `lower_tokens` starting at `pos`.
  std::optional<Match> match(std::span<const std::string> lower_tokens,
                             std::size_t pos) const;

  /// Sorted distinct canonical predicates.
  std::vector<std::string> predicates() const;

  const std::map<std::string, std::string, std::less<>>& entries() const noexcept {
    return entries_;
  }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
  std::size_t max_tokens_ = 1;
};

}  // namespace gamekg::ingest

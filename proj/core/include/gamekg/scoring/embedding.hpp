#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gamekg/kg/graph.hpp"

namespace gamekg::scoring {

class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  explicit EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {}

  /// Scales `values` to unit L2 norm; the zero vector stays zero.
  static EmbeddingVector normalized(std::vector<double> values);

  std::size_t dimension() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  bool is_zero() const noexcept;

  bool operator==(const EmbeddingVector&) const = default;

 private:
  std::vector<double> values_;
};

/// Text embedding backend. Implementations declare a fixed dimension.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::size_t dimension() const noexcept = 0;
  virtual EmbeddingVector embed(std::string_view text) const = 0;
};

/// Hashed bag of tokens: each lowercase token is counted at
/// fnv1a64(token) mod D, then the counts are L2-normalized.
class HashedBagProvider final : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDefaultDimension = 256;

  explicit HashedBagProvider(std::size_t dimension = kDefaultDimension);

  std::size_t dimension() const noexcept override { return dimension_; }
  EmbeddingVector embed(std::string_view text) const override;

 private:
  std::size_t dimension_;
};

/// Sentence text by (document id, sentence index), split once per graph.
class SentenceLookup {
 public:
  explicit SentenceLookup(const kg::KnowledgeGraph& graph);

  const std::string* find(std::string_view doc_id, std::size_t index) const;

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> sentences_;
};

/// Context embedded for an entity: its canonical name, then the distinct
/// source sentences of its active Explicit edges in (doc, index) order, then
/// the predicate of every active incident edge in triple order, joined by
/// single spaces.
std::string entity_context(const kg::KnowledgeGraph& graph, std::string_view entity_id,
                           const SentenceLookup& sentences);
std::string entity_context(const kg::KnowledgeGraph& graph, std::string_view entity_id);

EmbeddingVector embed_entity(const kg::KnowledgeGraph& graph, std::string_view entity_id,
                             const EmbeddingProvider& provider);

/// dot(u, v) / (|u| |v|), 0 when either norm is 0, clamped to [-1, 1].
/// Throws Error{validation} on a dimension mismatch.
double cosine(const EmbeddingVector& u, const EmbeddingVector& v);

}  // namespace gamekg::scoring

#include "gamekg/scoring/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "gamekg/error.hpp"
#include "gamekg/ingest/sentences.hpp"
#include "gamekg/text.hpp"

namespace gamekg::scoring {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

EmbeddingVector scaled_to_unit_max(const EmbeddingVector& v) {
  double largest = 0.0;
  for (double x : v.values()) largest = std::max(largest, std::abs(x));
  std::vector<double> out(v.values().begin(), v.values().end());
  for (double& x : out) x /= largest;
  return EmbeddingVector(std::move(out));
}

}  // namespace

EmbeddingVector EmbeddingVector::normalized(std::vector<double> values) {
  const double norm = std::sqrt(dot(values, values));
  if (norm > 0.0) {
    for (double& v : values) v /= norm;
  }
  return EmbeddingVector(std::move(values));
}

bool EmbeddingVector::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

HashedBagProvider::HashedBagProvider(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) fail(ErrorCode::validation, "embedding dimension must be positive");
}

EmbeddingVector HashedBagProvider::embed(std::string_view text) const {
  std::vector<double> counts(dimension_, 0.0);
  for (const auto& token : text::word_tokens(text)) {
    counts[text::fnv1a64(token) % dimension_] += 1.0;
  }
  return EmbeddingVector::normalized(std::move(counts));
}

SentenceLookup::SentenceLookup(const kg::KnowledgeGraph& graph) {
  for (const auto& [id, document] : graph.documents()) {
    auto& list = sentences_[id];
    for (auto& sentence : ingest::split_sentences(document.body)) {
      list.push_back(std::move(sentence.text));
    }
  }
}

const std::string* SentenceLookup::find(std::string_view doc_id, std::size_t index) const {
  auto it = sentences_.find(doc_id);
  if (it == sentences_.end() || index >= it->second.size()) return nullptr;
  return &it->second[index];
}

std::string entity_context(const kg::KnowledgeGraph& graph, std::string_view entity_id,
                           const SentenceLookup& sentences) {
  const kg::Entity& entity = graph.entity(entity_id);
  const auto incident = graph.neighbors(entity_id);

  std::set<std::pair<std::string, std::size_t>> sources;
  for (const auto& [edge, direction] : incident) {
    if (const auto* source = std::get_if<kg::ExplicitSource>(&edge.provenance)) {
      sources.emplace(source->doc_id, source->sentence_index);
    }
  }

  std::string context = entity.canonical_name;
  for (const auto& [doc, index] : sources) {
    if (const std::string* sentence = sentences.find(doc, index)) {
      context += ' ';
      context += *sentence;
    }
  }
  for (const auto& [edge, direction] : incident) {
    context += ' ';
    context += edge.predicate;
  }
  return context;
}

std::string entity_context(const kg::KnowledgeGraph& graph, std::string_view entity_id) {
  return entity_context(graph, entity_id, SentenceLookup(graph));
}

EmbeddingVector embed_entity(const kg::KnowledgeGraph& graph, std::string_view entity_id,
                             const EmbeddingProvider& provider) {
  return provider.embed(entity_context(graph, entity_id));
}

double cosine(const EmbeddingVector& u, const EmbeddingVector& v) {
  if (u.dimension() != v.dimension()) {
    fail(ErrorCode::validation, "cosine of vectors with dimensions " +
                                    std::to_string(u.dimension()) + " and " +
                                    std::to_string(v.dimension()));
  }
  const double uu = dot(u.values(), u.values());
  const double vv = dot(v.values(), v.values());
  if (uu == 0.0 || vv == 0.0) return 0.0;
  const double uv = dot(u.values(), v.values());
  if (!std::isfinite(uu) || !std::isfinite(vv) || !std::isfinite(uv)) {
    for (const auto* vec : {&u, &v}) {
      for (double x : vec->values()) {
        if (!std::isfinite(x)) fail(ErrorCode::validation, "cosine of a non-finite vector");
      }
    }
    // Squares overflowed; the ratio is scale invariant.
    return cosine(scaled_to_unit_max(u), scaled_to_unit_max(v));
  }
  const double c = uv / (std::sqrt(uu) * std::sqrt(vv));
  return std::clamp(c, -1.0, 1.0);
}

}  // namespace gamekg::scoring

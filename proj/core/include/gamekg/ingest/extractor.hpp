#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gamekg/ingest/lexicon.hpp"
#include "gamekg/ingest/sentences.hpp"

namespace gamekg::ingest {

/// Half-open byte range within a sentence.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  auto operator<=>(const Span&) const = default;
};

struct Triple {
  std::string subject_surface;
  std::string predicate;
  std::string object_surface;
  std::string doc_id;
  std::size_t sentence_index = 0;
  Span subject_span;
  Span object_span;

  auto operator<=>(const Triple&) const = default;
};

/// Rule-based subject-verb-object extraction over one sentence:
///   1. noun phrases are maximal runs of capitalized tokens ("Mann Act",
///      "Department of Justice"); an object may fall back to a single
///      lowercase content word ("humans");
///   2. every lexicon match (longest phrase first) is a relation trigger;
///   3. the trigger links the nearest noun phrase to its left, within the
///      same clause, to the noun phrase right after it.
/// A trigger lacking either side yields nothing.
std::vector<Triple> extract_triples(std::string_view sentence, const PredicateLexicon& lexicon,
                                    std::string_view doc_id = {},
                                    std::size_t sentence_index = 0);

class TripleExtractor {
 public:
  virtual ~TripleExtractor() = default;
  virtual std::vector<Triple> extract(const Sentence& sentence,
                                      std::string_view doc_id) const = 0;
};

class RuleBasedExtractor final : public TripleExtractor {
 public:
  explicit RuleBasedExtractor(PredicateLexicon lexicon = PredicateLexicon::seed())
      : lexicon_(std::move(lexicon)) {}

  std::vector<Triple> extract(const Sentence& sentence,
                              std::string_view doc_id) const override {
    return extract_triples(sentence.text, lexicon_, doc_id, sentence.index);
  }

  const PredicateLexicon& lexicon() const noexcept { return lexicon_; }

 private:
  PredicateLexicon lexicon_;
};

}  // namespace gamekg::ingest

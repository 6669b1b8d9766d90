#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "gamekg/kg/graph.hpp"
#include "gamekg/narrative/pseudonyms.hpp"

namespace gamekg::narrative {

enum class NarrativeSource { template_text, external };

std::string_view to_string(NarrativeSource source) noexcept;

/// Which narrative sentence carries a subgraph edge.
struct RelationSentence {
  std::string edge_id;
  std::size_t sentence_index = 0;

  bool operator==(const RelationSentence&) const = default;
};

struct Narrative {
  std::string case_text;
  std::vector<RelationSentence> sentence_spans;
  NarrativeSource provider_used = NarrativeSource::template_text;
  std::size_t external_attempts = 0;

  bool operator==(const Narrative&) const = default;
};

struct NarrativeReport {
  std::vector<std::string> missing_relations;  // edge ids with no co-occurring sentence
  std::vector<std::string> leaked_names;       // real names or aliases found in the text
  std::vector<RelationSentence> relations;     // first supporting sentence per edge

  bool ok() const noexcept { return missing_relations.empty() && leaked_names.empty(); }
};

/// A relation is retained when the subject and object pseudonyms appear in
/// the same sentence (case-insensitive, on word boundaries). Separately, no
/// canonical name or alias of any subgraph entity may appear anywhere.
NarrativeReport validate_narrative(std::string_view text, const kg::KnowledgeGraph& subgraph,
                                   const PseudonymMap& pseudonyms);

/// Narrow text-generation interface for an external language model.
/// Implementations must be safe to call from several threads and must give
/// up (throw) once `timeout` elapses.
class TextGenerator {
 public:
  virtual ~TextGenerator() = default;
  virtual std::string generate(const std::string& prompt, std::chrono::milliseconds timeout) = 0;
};

/// Replays recorded prompt/response pairs. Unknown prompts consume the
/// queued fallback replies in order, then throw.
class RecordedTranscript final : public TextGenerator {
 public:
  RecordedTranscript() = default;
  explicit RecordedTranscript(std::vector<std::string> queued_replies);

  /// [{"prompt": "...", "response": "..."}, ...]
  static std::unique_ptr<RecordedTranscript> load(const std::filesystem::path& path);

  void record(std::string prompt, std::string response);

  std::string generate(const std::string& prompt, std::chrono::milliseconds timeout) override;

  std::vector<std::string> prompts_seen() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::string> by_prompt_;
  std::vector<std::string> queued_;
  std::size_t next_queued_ = 0;
  std::vector<std::string> seen_;
};

/// Readable phrase per canonical predicate ("accomplice_to" ->
/// "was an accomplice to"). Predicates without an entry are used verbatim.
std::map<std::string, std::string, std::less<>> default_predicate_phrases();

struct NarrativeOptions {
  std::map<std::string, std::string, std::less<>> predicate_phrases = default_predicate_phrases();
  std::chrono::milliseconds timeout{30'000};
};

/// Fixed instruction block followed by one "subject | phrase | object" line
/// per active subgraph edge, pseudonyms substituted.
std::string render_prompt(const kg::KnowledgeGraph& subgraph, const PseudonymMap& pseudonyms,
                          const NarrativeOptions& options = {});

/// Template output is a framing sentence plus "<subject> <phrase> <object>."
/// per active edge in triple order. With an external generator the reply is
/// validated; one retry is allowed before falling back to the template.
/// Throws Error{validation} when the pseudonyms do not cover the subgraph.
Narrative generate_narrative(const kg::KnowledgeGraph& subgraph, const PseudonymMap& pseudonyms,
                             TextGenerator* external = nullptr,
                             const NarrativeOptions& options = {});

}  // namespace gamekg::narrative

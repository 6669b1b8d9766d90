#include "gamekg/narrative/narrative.hpp"

#include <fstream>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "gamekg/error.hpp"
#include "gamekg/ingest/sentences.hpp"
#include "gamekg/text.hpp"

namespace gamekg::narrative {

std::string_view to_string(NarrativeSource source) noexcept {
  return source == NarrativeSource::template_text ? "template" : "external";
}

namespace {

constexpr std::string_view kFraming = "A new case file has landed on your desk.";

constexpr std::string_view kInstructions =
    "You are writing the case briefing for a film-noir detective game.\n"
    "Write a short fictional narrative that keeps every relation listed below.\n"
    "Use the names exactly as written and introduce no other names.\n"
    "Both names of a relation must appear together in the same sentence.\n"
    "\n"
    "Relations:\n";

std::string capitalized(std::string s) {
  if (!s.empty() && s.front() >= 'a' && s.front() <= 'z') s.front() = static_cast<char>(s.front() - 'a' + 'A');
  return s;
}

const std::string& phrase_for(const NarrativeOptions& options, const std::string& predicate) {
  auto it = options.predicate_phrases.find(predicate);
  return it == options.predicate_phrases.end() || it->second.empty() ? predicate : it->second;
}

std::vector<const kg::Edge*> active_edges(const kg::KnowledgeGraph& subgraph) {
  std::vector<const kg::Edge*> out;
  for (const kg::Edge* e : subgraph.edges_by_triple()) {
    if (e->is_active()) out.push_back(e);
  }
  return out;
}

std::string template_text(const kg::KnowledgeGraph& subgraph, const PseudonymMap& pseudonyms,
                          const NarrativeOptions& options) {
  std::string out(kFraming);
  for (const kg::Edge* e : active_edges(subgraph)) {
    out += ' ';
    out += capitalized(pseudonyms.at(e->subject_id) + " " + phrase_for(options, e->predicate) +
                       " " + pseudonyms.at(e->object_id) + ".");
  }
  return out;
}

}  // namespace

NarrativeReport validate_narrative(std::string_view text, const kg::KnowledgeGraph& subgraph,
                                   const PseudonymMap& pseudonyms) {
  NarrativeReport report;
  const auto sentences = ingest::split_sentences(text);
  for (const kg::Edge* e : active_edges(subgraph)) {
    const auto subject = pseudonyms.names.find(e->subject_id);
    const auto object = pseudonyms.names.find(e->object_id);
    bool found = false;
    if (subject != pseudonyms.names.end() && object != pseudonyms.names.end()) {
      for (const auto& sentence : sentences) {
        if (text::contains_phrase(sentence.text, subject->second) &&
            text::contains_phrase(sentence.text, object->second)) {
          report.relations.push_back({e->id, sentence.index});
          found = true;
          break;
        }
      }
    }
    if (!found) report.missing_relations.push_back(e->id);
  }
  for (const auto& [id, entity] : subgraph.entities()) {
    for (const auto& alias : entity.aliases) {
      if (text::contains_phrase(text, alias)) report.leaked_names.push_back(alias);
    }
  }
  return report;
}

RecordedTranscript::RecordedTranscript(std::vector<std::string> queued_replies)
    : queued_(std::move(queued_replies)) {}

std::unique_ptr<RecordedTranscript> RecordedTranscript::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open transcript " + path.string());
  auto transcript = std::make_unique<RecordedTranscript>();
  try {
    for (const auto& turn : nlohmann::json::parse(in)) {
      transcript->record(turn.at("prompt").get<std::string>(),
                        turn.at("response").get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, path.string() + ": " + e.what());
  }
  return transcript;
}

void RecordedTranscript::record(std::string prompt, std::string response) {
  std::lock_guard lock(mutex_);
  by_prompt_[std::move(prompt)] = std::move(response);
}

std::string RecordedTranscript::generate(const std::string& prompt,
                                         std::chrono::milliseconds /*timeout*/) {
  std::lock_guard lock(mutex_);
  seen_.push_back(prompt);
  if (auto it = by_prompt_.find(prompt); it != by_prompt_.end()) return it->second;
  if (next_queued_ < queued_.size()) return queued_[next_queued_++];
  fail(ErrorCode::not_found, "no recorded response for prompt");
}

std::vector<std::string> RecordedTranscript::prompts_seen() const {
  std::lock_guard lock(mutex_);
  return seen_;
}

std::map<std::string, std::string, std::less<>> default_predicate_phrases() {
  return {
      {"accomplice_to", "was an accomplice to"},
      {"harbored", "harbored"},
      {"recruited", "recruited"},
      {"trafficked", "trafficked"},
      {"transported", "transported"},
      {"violated", "violated"},
  };
}

std::string render_prompt(const kg::KnowledgeGraph& subgraph, const PseudonymMap& pseudonyms,
                          const NarrativeOptions& options) {
  std::string prompt(kInstructions);
  for (const kg::Edge* e : active_edges(subgraph)) {
    prompt += "- " + pseudonyms.at(e->subject_id) + " | " + phrase_for(options, e->predicate) +
              " | " + pseudonyms.at(e->object_id) + "\n";
  }
  return prompt;
}

Narrative generate_narrative(const kg::KnowledgeGraph& subgraph, const PseudonymMap& pseudonyms,
                             TextGenerator* external, const NarrativeOptions& options) {
  for (const auto& [id, entity] : subgraph.entities()) {
    if (!pseudonyms.names.contains(id)) {
      fail(ErrorCode::validation, "pseudonym map does not cover entity '" + id + "'");
    }
  }

  std::size_t attempts = 0;
  if (external != nullptr) {
    const std::string prompt = render_prompt(subgraph, pseudonyms, options);
    spdlog::info("narrative prompt:\n{}", prompt);
    for (; attempts < 2;) {
      ++attempts;
      try {
        std::string reply = external->generate(prompt, options.timeout);
        auto report = validate_narrative(reply, subgraph, pseudonyms);
        if (report.ok()) {
          return {std::move(reply), std::move(report.relations), NarrativeSource::external,
                  attempts};
        }
        spdlog::warn("external narrative rejected (attempt {}): {} missing relations, {} leaks",
                     attempts, report.missing_relations.size(), report.leaked_names.size());
      } catch (const std::exception& e) {
        spdlog::warn("external narrative failed (attempt {}): {}", attempts, e.what());
      }
    }
  }

  std::string text = template_text(subgraph, pseudonyms, options);
  auto report = validate_narrative(text, subgraph, pseudonyms);
  if (!report.ok()) {
    fail(ErrorCode::integrity,
         "template narrative failed validation; a real name collides with the template wording");
  }
  return {std::move(text), std::move(report.relations), NarrativeSource::template_text, attempts};
}

}  // namespace gamekg::narrative

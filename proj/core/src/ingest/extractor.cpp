#include "gamekg/ingest/extractor.hpp"

#include <optional>
#include <set>

#include "gamekg/text.hpp"

namespace gamekg::ingest {

namespace {

struct Token {
  std::string_view surface;
  std::string lower;
  std::size_t begin = 0;
  std::size_t end = 0;
  bool word = false;
};

// Pronouns, determiners, auxiliaries and connectives. Never part of a noun
// phrase even when sentence-initial and capitalized.
const std::set<std::string, std::less<>>& function_words() {
  static const std::set<std::string, std::less<>> words = {
      "a",       "about",   "according", "after", "also",  "although", "an",
      "and",     "are",     "as",        "at",    "be",    "because",  "been",
      "before",  "being",   "but",       "by",    "did",   "do",       "does",
      "during",  "for",     "from",      "had",   "has",   "have",     "he",
      "her",     "here",    "him",       "his",   "however", "i",      "if",
      "in",      "into",    "is",        "it",    "its",   "my",       "no",
      "not",     "of",      "on",        "or",    "our",   "over",     "said",
      "says",    "she",     "since",     "so",    "stated",  "states",
      "than",    "that",    "the",       "their", "them",  "then",     "there",
      "these",   "they",    "this",      "those", "though", "through", "to",
      "under",   "until",   "unless",    "us",    "was",   "we",       "were",
      "what",    "when",    "where",     "whereas", "which", "while",  "who",
      "whom",    "whose",   "why",       "with",  "within", "without", "you",
      "your",    "'s",      "across",    "against", "among", "between", "upon"};
  return words;
}

// Tokens that open a subordinate clause; a subject is never sought past one.
const std::set<std::string, std::less<>>& clause_openers() {
  static const std::set<std::string, std::less<>> words = {
      "when",  "while", "because", "after", "before", "since",   "although",
      "though", "if",   "which",   "who",   "whom",   "whose",   "where",
      "whereas", "until", "unless", ";",    ":"};
  return words;
}

// Skipped between a trigger and its object.
const std::set<std::string, std::less<>>& determiners() {
  static const std::set<std::string, std::less<>> words = {
      "the",  "a",     "an",   "his",   "her",      "their",    "its",     "this",
      "that", "these", "those", "another", "several", "multiple", "many",   "numerous",
      "some", "one",   "two",  "three", "four",     "five",     "six",     "seven",
      "eight", "nine", "ten",  "at",    "least",    "more",     "than",    "other"};
  return words;
}

bool starts_upper(std::string_view s) { return !s.empty() && s.front() >= 'A' && s.front() <= 'Z'; }

bool all_digits(std::string_view s) {
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return !s.empty();
}

// "U", "U.S" style: single letters separated by periods.
bool is_initialism(std::string_view s) {
  if (s.size() < 3) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool letter_slot = i % 2 == 0;
    if (letter_slot != (s[i] != '.')) return false;
  }
  return true;
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto word_at = [&](std::size_t k) {
    return k < s.size() && text::is_word_byte(static_cast<unsigned char>(s[k]));
  };
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (text::is_space(c)) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    if (!text::is_word_byte(c)) {
      // Possessive clitic as its own token.
      if (s[i] == '\'' && i + 1 < s.size() && (s[i + 1] == 's' || s[i + 1] == 'S') &&
          !word_at(i + 2) && !tokens.empty() && tokens.back().word &&
          tokens.back().end == i) {
        i += 2;
      } else {
        ++i;
      }
    } else {
      while (i < s.size()) {
        if (word_at(i)) {
          ++i;
        } else if ((s[i] == '-' || s[i] == '.' || s[i] == '\'') && word_at(i + 1) &&
                   !(s[i] == '\'' && (s[i + 1] == 's' || s[i + 1] == 'S') && !word_at(i + 2))) {
          ++i;
        } else {
          break;
        }
      }
      if (i < s.size() && s[i] == '.' && is_initialism(s.substr(begin, i - begin))) ++i;
    }
    Token t;
    t.surface = s.substr(begin, i - begin);
    t.lower = text::to_lower(t.surface);
    t.begin = begin;
    t.end = i;
    t.word = text::is_word_byte(c);
    tokens.push_back(std::move(t));
  }
  return tokens;
}

struct Phrase {
  std::size_t first = 0;  // token indices, inclusive
  std::size_t last = 0;
};

class SentenceAnalysis {
 public:
  SentenceAnalysis(std::string_view sentence, const PredicateLexicon& lexicon)
      : sentence_(sentence), tokens_(tokenize(sentence)) {
    lower_.reserve(tokens_.size());
    for (const auto& t : tokens_) lower_.push_back(t.lower);
    trigger_.assign(tokens_.size(), false);
    for (std::size_t i = 0; i < tokens_.size();) {
      if (auto m = lexicon.match(lower_, i)) {
        triggers_.push_back({i, m->length, m->predicate});
        for (std::size_t k = i; k < i + m->length; ++k) trigger_[k] = true;
        i += m->length;
      } else {
        ++i;
      }
    }
  }

  struct Trigger {
    std::size_t first;
    std::size_t length;
    std::string predicate;
  };

  const std::vector<Trigger>& triggers() const { return triggers_; }

  std::optional<Phrase> subject_before(std::size_t trigger_first) const {
    std::size_t i = trigger_first;
    while (i > 0) {
      --i;
      if (clause_openers().contains(tokens_[i].lower)) return std::nullopt;
      if (is_name_token(i)) {
        Phrase p{i, i};
        while (p.first > 0) {
          if (is_name_token(p.first - 1)) {
            --p.first;
          } else if (p.first >= 2 && tokens_[p.first - 1].lower == "of" &&
                     is_name_token(p.first - 2)) {
            p.first -= 2;
          } else {
            break;
          }
        }
        return p;
      }
    }
    return std::nullopt;
  }

  std::optional<Phrase> object_after(std::size_t trigger_end) const {
    std::size_t i = trigger_end;
    while (i < tokens_.size() &&
           (determiners().contains(tokens_[i].lower) || all_digits(tokens_[i].lower))) {
      ++i;
    }
    if (i >= tokens_.size()) return std::nullopt;
    if (is_name_token(i)) {
      Phrase p{i, i};
      while (p.last + 1 < tokens_.size()) {
        if (is_name_token(p.last + 1)) {
          ++p.last;
        } else if (p.last + 2 < tokens_.size() && tokens_[p.last + 1].lower == "of" &&
                   is_name_token(p.last + 2)) {
          p.last += 2;
        } else {
          break;
        }
      }
      return p;
    }
    const Token& t = tokens_[i];
    if (t.word && !starts_upper(t.surface) && !trigger_[i] &&
        !function_words().contains(t.lower)) {
      return Phrase{i, i};
    }
    return std::nullopt;
  }

  Span span(const Phrase& p) const { return {tokens_[p.first].begin, tokens_[p.last].end}; }

  std::string surface(const Phrase& p) const {
    const Span s = span(p);
    return std::string(sentence_.substr(s.begin, s.end - s.begin));
  }

 private:
  bool is_name_token(std::size_t i) const {
    const Token& t = tokens_[i];
    return t.word && starts_upper(t.surface) && !trigger_[i] &&
           !function_words().contains(t.lower);
  }

  std::string_view sentence_;
  std::vector<Token> tokens_;
  std::vector<std::string> lower_;
  std::vector<bool> trigger_;
  std::vector<Trigger> triggers_;
};

}  // namespace

std::vector<Triple> extract_triples(std::string_view sentence, const PredicateLexicon& lexicon,
                                    std::string_view doc_id, std::size_t sentence_index) {
  std::vector<Triple> out;
  if (sentence.empty()) return out;
  const SentenceAnalysis analysis(sentence, lexicon);
  for (const auto& trigger : analysis.triggers()) {
    const auto subject = analysis.subject_before(trigger.first);
    if (!subject) continue;
    const auto object = analysis.object_after(trigger.first + trigger.length);
    if (!object) continue;
    out.push_back({analysis.surface(*subject), trigger.predicate, analysis.surface(*object),
                   std::string(doc_id), sentence_index, analysis.span(*subject),
                   analysis.span(*object)});
  }
  return out;
}

}  // namespace gamekg::ingest

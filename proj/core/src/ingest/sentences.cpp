#include "gamekg/ingest/sentences.hpp"

#include <array>

#include "gamekg/text.hpp"

namespace gamekg::ingest {

namespace {

constexpr std::array<std::string_view, 4> kAbbreviations = {"U.S.", "Mr.", "Dr.", "No."};

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }
bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }
bool is_opener(char c) { return c == '"' || c == '\'' || c == '(' || c == '['; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

// The whitespace-delimited token that ends at `end` (exclusive).
std::string_view token_ending_at(std::string_view body, std::size_t end) {
  std::size_t begin = end;
  while (begin > 0 && !text::is_space(static_cast<unsigned char>(body[begin - 1]))) --begin;
  return body.substr(begin, end - begin);
}

void push(std::vector<Sentence>& out, std::string_view body, std::size_t begin,
          std::size_t end) {
  while (begin < end && text::is_space(static_cast<unsigned char>(body[begin]))) ++begin;
  while (end > begin && text::is_space(static_cast<unsigned char>(body[end - 1]))) --end;
  if (end == begin) return;
  out.push_back({out.size(), begin, std::string(body.substr(begin, end - begin))});
}

}  // namespace

std::vector<Sentence> split_sentences(std::string_view body) {
  std::vector<Sentence> out;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < body.size()) {
    if (!is_terminator(body[i])) {
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    while (end < body.size() && (is_terminator(body[end]) || is_closer(body[end]))) ++end;
    std::size_t next = end;
    while (next < body.size() && text::is_space(static_cast<unsigned char>(body[next]))) ++next;
    const bool has_space = next > end;
    std::size_t first = next;
    while (first < body.size() && is_opener(body[first])) ++first;
    const bool boundary = has_space && first < body.size() && is_upper(body[first]);
    bool abbreviation = false;
    if (boundary && body[i] == '.') {
      const std::string_view token = token_ending_at(body, i + 1);
      for (auto abbr : kAbbreviations) abbreviation = abbreviation || token == abbr;
    }
    if (boundary && !abbreviation) {
      push(out, body, start, end);
      start = next;
      i = next;
    } else {
      i = end;
    }
  }
  push(out, body, start, body.size());
  return out;
}

}  // namespace gamekg::ingest

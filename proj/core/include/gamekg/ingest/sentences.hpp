#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gamekg::ingest {

struct Sentence {
  std::size_t index = 0;   // 0-based position in the document
  std::size_t offset = 0;  // byte offset of the first character in the body
  std::string text;

  bool operator==(const Sentence&) const = default;
};

/// Splits on '.', '!' or '?' (optionally followed by closing quotes or
/// brackets) when the next non-space character, after any opening quotes or
/// brackets, is uppercase. The tokens
/// "U.S.", "Mr.", "Dr." and "No." never end a sentence.
std::vector<Sentence> split_sentences(std::string_view body);

}  // namespace gamekg::ingest

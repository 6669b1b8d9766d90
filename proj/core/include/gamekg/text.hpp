#pragma once

// Byte-level text helpers shared by the graph, extractor, scorer and QA.
// Only ASCII is case-folded; bytes >= 0x80 are treated as word characters
// so UTF-8 names survive normalization intact.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gamekg::text {

inline bool is_word_byte(unsigned char c) noexcept {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

inline bool is_space(unsigned char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

/// Trims and collapses every whitespace run to one space.
std::string collapse_whitespace(std::string_view s);

/// Entity identity rule: trim, lowercase, collapse whitespace, then map each
/// run of non-alphanumerics to one hyphen and strip hyphens at both ends.
/// "John Doe" -> "john-doe". Returns "" when nothing alphanumeric remains.
std::string slugify(std::string_view s);

/// Lowercased maximal runs of word bytes.
std::vector<std::string> word_tokens(std::string_view s);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Zero-padded 16-digit lowercase hex.
std::string hex64(std::uint64_t value);

/// Case-insensitive search for `needle` bounded by non-word bytes (or the
/// ends of `haystack`).
bool contains_phrase(std::string_view haystack, std::string_view needle);

}  // namespace gamekg::text

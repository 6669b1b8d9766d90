#include <random>

#include <gtest/gtest.h>

#include "gamekg/text.hpp"
#include "oracles.hpp"

namespace gamekg {
namespace {

TEST(Slugify, IdentityRule) {
  EXPECT_EQ(text::slugify("John Doe"), "john-doe");
  EXPECT_EQ(text::slugify("  John   Doe "), "john-doe");
  EXPECT_EQ(text::slugify("Mann Act"), "mann-act");
  EXPECT_EQ(text::slugify("U.S. Department of Justice"), "u-s-department-of-justice");
  EXPECT_EQ(text::slugify("--Kizer!!"), "kizer");
  EXPECT_EQ(text::slugify("..."), "");
  EXPECT_EQ(text::slugify("Zoë Ortiz"), "zoë-ortiz");
}

TEST(Slugify, CaseAndSpacingVariantsAgree) {
  EXPECT_EQ(text::slugify("JOHN DOE"), text::slugify("john\tdoe"));
}

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(text::fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(text::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(text::fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(Fnv1a, MatchesOracleOnRandomBytes) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    std::string s(rng() % 40, '\0');
    for (char& c : s) c = static_cast<char>(rng() % 256);
    ASSERT_EQ(text::fnv1a64(s), testing::oracle_fnv1a64(s));
  }
}

TEST(Hex64, ZeroPadded) {
  EXPECT_EQ(text::hex64(0), "0000000000000000");
  EXPECT_EQ(text::hex64(0xabcULL), "0000000000000abc");
  EXPECT_EQ(text::hex64(~0ULL), "ffffffffffffffff");
}

TEST(WordTokens, MatchesOracleOnRandomText) {
  const std::string alphabet = "abcXYZ019 .,-'\t\xc3\xa9";
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    std::string s(rng() % 30, ' ');
    for (char& c : s) c = alphabet[rng() % alphabet.size()];
    ASSERT_EQ(text::word_tokens(s), testing::oracle_tokens(s)) << s;
  }
}

TEST(ContainsPhrase, WordBoundedAndCaseInsensitive) {
  EXPECT_TRUE(text::contains_phrase("Victor Kane met Ruth.", "victor kane"));
  EXPECT_TRUE(text::contains_phrase("Ruth", "RUTH"));
  EXPECT_FALSE(text::contains_phrase("Kanemoto", "Kane"));
  EXPECT_FALSE(text::contains_phrase("abc", ""));
  EXPECT_TRUE(text::contains_phrase("the Kane-Ruth deal", "Kane"));
}

TEST(ContainsPhrase, MatchesOracle) {
  const std::string alphabet = "ab A.";
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    std::string hay(rng() % 12, ' ');
    std::string needle(1 + rng() % 3, ' ');
    for (char& c : hay) c = alphabet[rng() % alphabet.size()];
    for (char& c : needle) c = alphabet[rng() % 3];
    ASSERT_EQ(text::contains_phrase(hay, needle), testing::oracle_contains_word_phrase(hay, needle))
        << '"' << hay << "\" / \"" << needle << '"';
  }
}

TEST(CollapseWhitespace, TrimsAndCollapses) {
  EXPECT_EQ(text::collapse_whitespace("  a \n\t b  "), "a b");
  EXPECT_EQ(text::collapse_whitespace(""), "");
}

}  // namespace
}  // namespace gamekg

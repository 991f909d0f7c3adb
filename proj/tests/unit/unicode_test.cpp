#include "detox/error.hpp"
#include "detox/unicode.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace detox;

TEST(Normalize, CaseFoldAndTrim) { EXPECT_EQ(unicode::normalize("IDIOT "), "idiot"); }

TEST(Normalize, FullCaseFoldingExpandsSharpS) {
  // Reference value from ICU's full case folding (CaseFolding.txt: 00DF; F; 0073 0073).
  EXPECT_EQ(unicode::normalize("weiß"), "weiss");
  EXPECT_EQ(unicode::normalize("WEISS"), "weiss");
}

TEST(Normalize, CollapsesInternalWhitespace) {
  EXPECT_EQ(unicode::normalize("a  b"), "a b");
  EXPECT_EQ(unicode::normalize("\t a    b \n"), "a b");
}

TEST(Normalize, ComposesToNfc) {
  EXPECT_EQ(unicode::normalize("e\xCC\x81"), "\xC3\xA9");  // e + U+0301 -> é
  EXPECT_EQ(unicode::normalize("\xC3\x89"), "\xC3\xA9");   // É -> é
}

TEST(Normalize, EmptyAndBlank) {
  EXPECT_EQ(unicode::normalize(""), "");
  EXPECT_EQ(unicode::normalize("   "), "");
}

TEST(Normalize, Idempotent) {
  oracle::TextGenerator gen(7);
  for (int i = 0; i < 300; ++i) {
    const auto t = gen.text(30);
    const auto once = unicode::normalize(t);
    EXPECT_EQ(unicode::normalize(once), once) << t;
  }
}

TEST(NormalizeWithOffsets, MapsPiecesBackToOriginal) {
  const std::string text = "Weiß  IDIOT";
  const auto n = unicode::normalize_with_offsets(text);
  EXPECT_EQ(n.text, "weiss idiot");
  // "ss" maps back to the two-byte ß as a whole.
  auto range = n.original_range(3, 5);
  ASSERT_TRUE(range);
  EXPECT_EQ(text.substr(range->first, range->second - range->first), "ß");
  // Half of the expansion is not a span of the original.
  EXPECT_FALSE(n.original_range(3, 4));
  // The collapsed whitespace run maps back to both spaces.
  range = n.original_range(5, 6);
  ASSERT_TRUE(range);
  EXPECT_EQ(text.substr(range->first, range->second - range->first), "  ");
  range = n.original_range(6, 11);
  ASSERT_TRUE(range);
  EXPECT_EQ(text.substr(range->first, range->second - range->first), "IDIOT");
}

TEST(NormalizeWithOffsets, ConcatenationMatchesWholeStringNormalization) {
  oracle::TextGenerator gen(11);
  for (int i = 0; i < 300; ++i) {
    const auto t = gen.text(40);
    const auto n = unicode::normalize_with_offsets(t);
    ASSERT_EQ(n.piece_of_byte.size(), n.text.size());
    std::size_t orig = 0;
    for (const auto& p : n.pieces) {
      EXPECT_EQ(p.orig_begin, orig);
      orig = p.orig_end;
    }
    EXPECT_EQ(orig, t.size());
    EXPECT_EQ(unicode::collapse_whitespace(unicode::normalize(n.text)), unicode::normalize(t));
  }
}

TEST(Utf8, Validation) {
  EXPECT_TRUE(unicode::is_valid_utf8("héllo 世界"));
  EXPECT_FALSE(unicode::is_valid_utf8("\xFF\xFE"));
  EXPECT_FALSE(unicode::is_valid_utf8("abc\xC3"));
  EXPECT_THROW(unicode::require_utf8("\xC3\x28", "test"), DecodeError);
}

TEST(WordChars, LettersDigitsUnderscoreMarks) {
  EXPECT_TRUE(unicode::is_word_char(U'a'));
  EXPECT_TRUE(unicode::is_word_char(U'Я'));
  EXPECT_TRUE(unicode::is_word_char(U'笨'));
  EXPECT_TRUE(unicode::is_word_char(U'7'));
  EXPECT_TRUE(unicode::is_word_char(U'_'));
  EXPECT_TRUE(unicode::is_word_char(U'́'));
  EXPECT_TRUE(unicode::is_word_char(U'ा'));  // Devanagari vowel sign AA
  EXPECT_FALSE(unicode::is_word_char(U' '));
  EXPECT_FALSE(unicode::is_word_char(U','));
  EXPECT_FALSE(unicode::is_word_char(U'-'));
  EXPECT_FALSE(unicode::is_word_char(U'。'));
}

TEST(Tokens, WhitespaceAndCharacters) {
  EXPECT_EQ(unicode::whitespace_tokens("  you are\tan  idiot ").size(), 4u);
  EXPECT_EQ(unicode::whitespace_tokens("").size(), 0u);
  EXPECT_EQ(unicode::non_space_chars("你 好!").size(), 3u);
  EXPECT_EQ(unicode::count_scalars("añb世"), 4u);
}

TEST(CollapseWhitespace, TrimsAndCollapses) {
  EXPECT_EQ(unicode::collapse_whitespace("  you  are   an  "), "you are an");
  EXPECT_EQ(unicode::collapse_whitespace("   "), "");
  EXPECT_EQ(unicode::remove_whitespace(" a b\tc "), "abc");
}

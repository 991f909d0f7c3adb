#include "detox/corpus_io.hpp"
#include "detox/error.hpp"
#include "detox/lexicon.hpp"
#include "detox/stats.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace detox;

TEST(LengthSummary, Words) {
  const std::vector<std::string> t = {"a b c"};
  const auto s = length_summary(t, Lang::en);
  EXPECT_EQ(s.unit, LengthUnit::Words);
  EXPECT_DOUBLE_EQ(s.mean, 3);
  EXPECT_EQ(s.min, 3u);
  EXPECT_EQ(s.max, 3u);
}

TEST(LengthSummary, CharactersForCjk) {
  const std::vector<std::string> t = {"ab"};
  const auto s = length_summary(t, Lang::zh);
  EXPECT_EQ(s.unit, LengthUnit::Characters);
  EXPECT_DOUBLE_EQ(s.mean, 2);
  EXPECT_EQ(length_unit_for(Lang::ja), LengthUnit::Characters);
  EXPECT_EQ(length_unit_for(Lang::hin), LengthUnit::Words);
  EXPECT_THROW(length_summary(std::vector<std::string>{}, Lang::en), Error);
}

TEST(Quartiles, InclusiveMedianHinges) {
  const std::vector<double> odd = {1, 2, 3, 4, 5};
  const auto q = inclusive_quartiles(odd);
  EXPECT_DOUBLE_EQ(q.q1, 2);
  EXPECT_DOUBLE_EQ(q.median, 3);
  EXPECT_DOUBLE_EQ(q.q3, 4);
  const std::vector<double> even = {1, 2, 3, 4};
  const auto e = inclusive_quartiles(even);
  EXPECT_DOUBLE_EQ(e.q1, 1.5);
  EXPECT_DOUBLE_EQ(e.median, 2.5);
  EXPECT_DOUBLE_EQ(e.q3, 3.5);
  const std::vector<double> seven = {1, 2, 3, 4, 5, 6, 7};
  const auto s = inclusive_quartiles(seven);
  EXPECT_DOUBLE_EQ(s.q1, 2.5);
  EXPECT_DOUBLE_EQ(s.q3, 5.5);
  const std::vector<double> one = {4};
  EXPECT_DOUBLE_EQ(inclusive_quartiles(one).q1, 4);
}

TEST(LengthSummary, OrderingInvariant) {
  const std::vector<std::string> t = {"a", "a b c d e f", "a b", "a b c", "x y z w", "q"};
  const auto s = length_summary(t, Lang::de);
  EXPECT_LE(s.min, s.quartiles.q1);
  EXPECT_LE(s.quartiles.q1, s.quartiles.median);
  EXPECT_LE(s.quartiles.median, s.quartiles.q3);
  EXPECT_LE(s.quartiles.q3, s.max);
}

// Counted by hand.
TEST(Counting, MixedScriptHandOracle) {
  struct Case {
    std::string text;
    std::size_t words, chars;
  };
  const std::vector<Case> cases = {
      {"hello world", 2, 11},
      {"  leading and trailing  ", 3, 24},
      {"tab\tseparated\twords", 3, 19},
      {"你好世界", 1, 4},
      {"你好 世界", 2, 5},
      {"Привет, мир!", 2, 12},
      {"ідіот", 1, 5},
      {"Grüße aus Köln", 3, 14},
      {"e\xCC\x81t\xC3\xA9", 1, 4},  // e + combining acute, t, é
      {"مرحبا بالعالم", 2, 13},
      {"שלום עולם", 2, 9},
      {"नमस्ते दुनिया", 2, 13},
      {"こんにちは、世界。", 1, 9},
      {"mixed 中文 text", 3, 13},
      {"", 0, 0},
      {"   ", 0, 3},
      {"a　b", 2, 3},  // ideographic space separates words
      {"one two", 2, 7},  // no-break space is whitespace
      {"😀 emoji", 2, 7},
      {"ሰላም ዓለም", 2, 7},
  };
  ASSERT_EQ(cases.size(), 20u);
  for (const auto& c : cases) {
    EXPECT_EQ(count_words(c.text), c.words) << c.text;
    EXPECT_EQ(count_characters(c.text), c.chars) << c.text;
  }
}

TEST(Census, RawCountsPerLanguage) {
  LexiconManifest m = {{Lang::en, std::string(DETOX_FIXTURE_DIR) + "/lexicons/tiny.txt"},
                       {Lang::de, std::string(DETOX_FIXTURE_DIR) + "/lexicons/de.txt"}};
  const auto census = lexicon_census(m);
  EXPECT_EQ(census.at(Lang::en), 3u);
  EXPECT_EQ(census.at(Lang::de), 7u);
  const auto full = lexicon_census(load_manifest(std::string(DETOX_FIXTURE_DIR) + "/manifest.json"));
  EXPECT_EQ(full.at(Lang::en), 9u);
  EXPECT_NE(census_tsv(census).find("en\t3"), std::string::npos);
}

TEST(Census, FailureNamesLanguage) {
  LexiconManifest m = {{Lang::tt, "/nonexistent/tt.txt"}};
  try {
    lexicon_census(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("tt"), std::string::npos);
  }
}

TEST(ParallelStats, PerLanguageTables) {
  const auto pairs = load_parallel(std::string(DETOX_FIXTURE_DIR) + "/corpus.tsv", true);
  const auto stats = parallel_stats(pairs);
  EXPECT_EQ(stats.size(), 6u);
  EXPECT_EQ(stats.at(Lang::en).pairs, 36u);
  EXPECT_EQ(stats.at(Lang::zh).toxic.unit, LengthUnit::Characters);
  ASSERT_TRUE(stats.at(Lang::ru).neutral);
  const auto tsv = lengths_tsv(stats);
  EXPECT_NE(tsv.find("zh\t"), std::string::npos);
  const auto j = summary_json(stats.at(Lang::en).toxic);
  EXPECT_EQ(j.at("unit"), "words");
}

TEST(Labels, CountsByLanguage) {
  const auto s = load_labeled(std::string(DETOX_FIXTURE_DIR) + "/labeled_sample.tsv");
  const auto by = label_counts_by_lang(s);
  EXPECT_EQ(by.at(Lang::en)[0], 1u);
  EXPECT_EQ(by.at(Lang::ru)[1], 1u);
  EXPECT_NE(labels_tsv(by).find("ru\t1\t1"), std::string::npos);
}

#include "detox/aho_corasick.hpp"
#include "detox/error.hpp"
#include "detox/lexicon.hpp"
#include "detox/unicode.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"

using namespace detox;

namespace {

std::vector<oracle::Candidate> implementation_candidates(const CompiledMatcher& m, std::string_view hay) {
  std::vector<oracle::Candidate> out;
  for (const auto& hit : m.candidates(hay)) out.push_back({hit.begin, hit.end, m.entry(hit.pattern)});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Lexicon, NormalizesAndDeduplicates) {
  const auto lex = parse_lexicon("Idiot\nidiot\nIDIOT \n\n   \nmoron\n", Lang::en);
  EXPECT_EQ(lex.entries(), (std::vector<std::string>{"idiot", "moron"}));
  EXPECT_EQ(lex.raw_count(), 4u);
  EXPECT_EQ(lex.size(), 2u);
}

TEST(Lexicon, EmptyFileIsAnError) {
  EXPECT_THROW(parse_lexicon("\n \n", Lang::en), Error);
  EXPECT_THROW(load_lexicon("/nonexistent/lexicon.txt", Lang::en), Error);
  EXPECT_THROW(parse_lexicon("ok\n\xFF\n", Lang::en), DecodeError);
}

TEST(Lexicon, TinyFixtureHasThreeLines) {
  const auto lex = load_lexicon(std::string(DETOX_FIXTURE_DIR) + "/lexicons/tiny.txt", Lang::en);
  EXPECT_EQ(lex.raw_count(), 3u);
}

TEST(Lexicon, EveryEntryMatchesItsOwnNormalization) {
  oracle::TextGenerator gen(3);
  std::vector<std::string> raw;
  for (int i = 0; i < 200; ++i) raw.push_back(gen.word(6));
  const auto lex = Lexicon::from_terms(Lang::en, raw);
  const auto matcher = compile(lex);
  for (const auto& e : lex.entries()) {
    EXPECT_EQ(unicode::normalize(e), e);
    bool found = false;
    for (const auto& hit : matcher.candidates(e)) {
      if (hit.begin == 0 && hit.end == e.size() && matcher.entry(hit.pattern) == e) found = true;
    }
    EXPECT_TRUE(found) << e;
  }
}

TEST(Matcher, OverlappingCandidatesAllReported) {
  const auto matcher = compile(Lexicon::from_terms(Lang::en, std::vector<std::string>{"cat", "category"}));
  const auto hits = implementation_candidates(matcher, "category");
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0], (oracle::Candidate{0, 3, "cat"}));
  EXPECT_EQ(hits[1], (oracle::Candidate{0, 8, "category"}));
}

TEST(Matcher, AgreesWithBruteForceScan) {
  oracle::TextGenerator gen(99);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> raw;
    const auto n = gen.uniform(1, 50);
    for (std::size_t i = 0; i < n; ++i) raw.push_back(gen.word(3));
    const auto lex = Lexicon::from_terms(Lang::en, raw);
    const auto matcher = compile(lex);
    std::string hay = unicode::normalize_with_offsets(gen.text(120)).text;
    if (hay.size() > 200) hay.resize(200);
    EXPECT_EQ(implementation_candidates(matcher, hay), oracle::oracle_candidates(hay, lex.entries())) << hay;
  }
}

TEST(AhoCorasick, RawBytesAndNodeCount) {
  std::vector<std::string> pats = {"he", "she", "his", "hers"};
  AhoCorasick ac(pats);
  EXPECT_EQ(ac.pattern_count(), 4u);
  EXPECT_EQ(ac.node_count(), 10u);  // root + h,he,her,hers,hi,his,s,sh,she
  std::set<std::pair<std::size_t, std::uint32_t>> got;
  for (const auto& m : ac.find_all("ushers")) got.insert({m.begin, m.pattern});
  EXPECT_EQ(got, (std::set<std::pair<std::size_t, std::uint32_t>>{{1, 1}, {2, 0}, {2, 3}}));
  std::vector<std::string> bad = {"ok", ""};
  EXPECT_THROW(AhoCorasick{bad}, std::invalid_argument);
}

TEST(Manifest, LoadsRelativePathsAndBuildsMatchers) {
  const auto manifest = load_manifest(std::string(DETOX_FIXTURE_DIR) + "/manifest.json");
  EXPECT_EQ(manifest.size(), 6u);
  const auto set = MatcherSet::from_manifest(manifest);
  EXPECT_EQ(set.size(), 6u);
  EXPECT_EQ(set.at(Lang::zh).segmentation(), Segmentation::Cjk);
  EXPECT_EQ(set.find(Lang::am), nullptr);
  try {
    (void)set.at(Lang::am);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("am"), std::string::npos);
  }
}

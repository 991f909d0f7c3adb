#include "detox/error.hpp"
#include "detox/gate.hpp"
#include "detox/lexicon.hpp"
#include "detox/log.hpp"
#include "detox/shim_client.hpp"

#include <gtest/gtest.h>

#include "mock_process.hpp"

using namespace detox;

namespace {

CompiledMatcher en_matcher() { return compile(Lexicon::from_terms(Lang::en, std::vector<std::string>{"idiot", "shut up"})); }

struct CaptureWarnings {
  std::vector<std::string> lines;
  WarningSink previous;
  CaptureWarnings() {
    previous = set_warning_sink([this](std::string_view m) { lines.emplace_back(m); });
  }
  ~CaptureWarnings() { set_warning_sink(previous); }
};

}  // namespace

TEST(Verdict, StrictThreshold) {
  EXPECT_TRUE(make_verdict(0.9).flagged);
  EXPECT_FALSE(make_verdict(0.5).flagged);
  EXPECT_FALSE(make_verdict(0.1).flagged);
  EXPECT_TRUE(make_verdict(0.3, 0.2).flagged);
}

TEST(GateConfig, ThresholdMustBeOpenUnitInterval) {
  EXPECT_THROW((GateConfig{0.0}).validate(), Error);
  EXPECT_THROW((GateConfig{1.0}).validate(), Error);
  EXPECT_NO_THROW((GateConfig{0.7}).validate());
}

TEST(Presence, FlagsAnyLexiconSpan) {
  const auto m = en_matcher();
  EXPECT_EQ(score_lexicon_presence("you are an idiot", m, Segmentation::Whitespace), (ToxicityVerdict{1.0, true}));
  EXPECT_EQ(score_lexicon_presence("you are wrong", m, Segmentation::Whitespace), (ToxicityVerdict{0.0, false}));
  EXPECT_FALSE(score_lexicon_presence("idiotic", m, Segmentation::Whitespace).flagged);
}

TEST(Ratio, ShareOfTokensInSpans) {
  const auto m = en_matcher();
  EXPECT_DOUBLE_EQ(score_lexicon_ratio("you are an idiot", m, Segmentation::Whitespace).score, 0.25);
  EXPECT_DOUBLE_EQ(score_lexicon_ratio("you idiot", m, Segmentation::Whitespace).score, 0.5);
  EXPECT_DOUBLE_EQ(score_lexicon_ratio("shut up now idiot", m, Segmentation::Whitespace).score, 0.75);
  EXPECT_DOUBLE_EQ(score_lexicon_ratio("", m, Segmentation::Whitespace).score, 0.0);
  const auto zh = compile(Lexicon::from_terms(Lang::zh, std::vector<std::string>{"笨蛋"}));
  EXPECT_DOUBLE_EQ(score_lexicon_ratio("你 笨蛋", zh, Segmentation::Cjk).score, 2.0 / 3.0);
}

TEST(LexiconScorer, UsesMatcherForLanguage) {
  auto set = std::make_shared<MatcherSet>();
  set->add(std::make_shared<CompiledMatcher>(en_matcher()));
  LexiconScorer scorer(set, ScorerKind::LexiconPresence);
  const std::vector<std::string> texts = {"an idiot", "fine"};
  const auto v = scorer.score(texts, Lang::en);
  EXPECT_TRUE(v[0].value().flagged);
  EXPECT_FALSE(v[1].value().flagged);
  EXPECT_THROW(LexiconScorer(set, ScorerKind::External), Error);
}

TEST(External, MockScoresAroundThreshold) {
  const std::vector<std::string> texts = {"anything"};
  for (auto [score, flagged] : {std::pair{0.9, true}, std::pair{0.5, false}}) {
    auto client = oracle::connect_mock("--score " + std::to_string(score));
    const auto v = score_external(texts, Lang::en, *client);
    ASSERT_TRUE(v[0].ok());
    EXPECT_DOUBLE_EQ(v[0].value().score, score);
    EXPECT_EQ(v[0].value().flagged, flagged);
  }
}

TEST(External, OutOfRangeScoreIsClampedWithWarning) {
  CaptureWarnings warnings;
  auto client = oracle::connect_mock("--score 1.3");
  const std::vector<std::string> texts = {"x"};
  const auto v = score_external(texts, Lang::en, *client);
  EXPECT_EQ(v[0].value(), (ToxicityVerdict{1.0, true}));
  EXPECT_EQ(warnings.lines.size(), 1u);
}

TEST(External, ScorerWithoutCapabilityFailsLocally) {
  auto client = oracle::connect_mock("--capabilities detox");
  ExternalScorer scorer(client);
  const std::vector<std::string> texts = {"x"};
  EXPECT_THROW(scorer.score(texts, Lang::en), CapabilityError);
}

TEST(External, HeuristicToxicWords) {
  auto client = oracle::connect_mock("--toxic-word idiot");
  ExternalScorer scorer(client, 0.5);
  const std::vector<std::string> texts = {"an idiot", "kind"};
  const auto v = scorer.score(texts, Lang::en);
  EXPECT_TRUE(v[0].value().flagged);
  EXPECT_FALSE(v[1].value().flagged);
}

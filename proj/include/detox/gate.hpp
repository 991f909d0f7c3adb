#pragma once

#include "detox/error.hpp"
#include "detox/language.hpp"
#include "detox/lexicon.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace detox {

class ShimClient;

inline constexpr double kDefaultThreshold = 0.5;

struct ToxicityVerdict {
  double score;  // in [0, 1]
  bool flagged;  // score > threshold

  bool operator==(const ToxicityVerdict&) const = default;
};

enum class ScorerKind { LexiconPresence, LexiconRatio, External };

struct GateConfig {
  double threshold = kDefaultThreshold;
  ScorerKind scorer = ScorerKind::LexiconPresence;

  // Throws Error unless 0 < threshold < 1.
  void validate() const;
};

// Flagging is strict: a score equal to the threshold passes.
ToxicityVerdict make_verdict(double score, double threshold = kDefaultThreshold);

// 1.0 when the text has at least one lexicon span, else 0.0.
ToxicityVerdict score_lexicon_presence(std::string_view text, const CompiledMatcher& matcher,
                                       Segmentation segmentation, double threshold = kDefaultThreshold);

// Share of tokens overlapping a lexicon span. Tokens are whitespace-split
// words, or non-space characters under Cjk segmentation.
ToxicityVerdict score_lexicon_ratio(std::string_view text, const CompiledMatcher& matcher,
                                    Segmentation segmentation, double threshold = kDefaultThreshold);

// Backend scores, clamped to [0, 1] with a warning when out of range.
std::vector<Result<ToxicityVerdict>> score_external(std::span<const std::string> texts, Lang lang,
                                                    ShimClient& backend, double threshold = kDefaultThreshold);

class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual std::string name() const = 0;
  virtual double threshold() const = 0;
  virtual std::vector<Result<ToxicityVerdict>> score(std::span<const std::string> texts, Lang lang) = 0;
};

class LexiconScorer final : public Scorer {
 public:
  // kind must be LexiconPresence or LexiconRatio.
  LexiconScorer(std::shared_ptr<const MatcherSet> matchers, ScorerKind kind, double threshold = kDefaultThreshold);
  std::string name() const override;
  double threshold() const override { return threshold_; }
  std::vector<Result<ToxicityVerdict>> score(std::span<const std::string> texts, Lang lang) override;

 private:
  std::shared_ptr<const MatcherSet> matchers_;
  ScorerKind kind_;
  double threshold_;
};

class ExternalScorer final : public Scorer {
 public:
  ExternalScorer(std::shared_ptr<ShimClient> backend, double threshold = kDefaultThreshold);
  std::string name() const override { return "shim"; }
  double threshold() const override { return threshold_; }
  std::vector<Result<ToxicityVerdict>> score(std::span<const std::string> texts, Lang lang) override;

 private:
  std::shared_ptr<ShimClient> backend_;
  double threshold_;
};

}  // namespace detox

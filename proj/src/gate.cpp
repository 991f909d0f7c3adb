#include "detox/gate.hpp"

#include "detox/log.hpp"
#include "detox/shim_client.hpp"
#include "detox/tagger.hpp"
#include "detox/unicode.hpp"

#include <algorithm>
#include <cmath>

namespace detox {

void GateConfig::validate() const {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error("gate threshold must lie strictly between 0 and 1, got " + std::to_string(threshold));
  }
}

ToxicityVerdict make_verdict(double score, double threshold) { return {score, score > threshold}; }

ToxicityVerdict score_lexicon_presence(std::string_view text, const CompiledMatcher& matcher,
                                       Segmentation segmentation, double threshold) {
  const bool hit = !tag(text, matcher, segmentation).spans.empty();
  return make_verdict(hit ? 1.0 : 0.0, threshold);
}

ToxicityVerdict score_lexicon_ratio(std::string_view text, const CompiledMatcher& matcher,
                                    Segmentation segmentation, double threshold) {
  const auto tokens = segmentation == Segmentation::Cjk ? unicode::non_space_chars(text)
                                                        : unicode::whitespace_tokens(text);
  if (tokens.empty()) return make_verdict(0.0, threshold);
  const auto spans = tag(text, matcher, segmentation).spans;
  std::size_t covered = 0;
  for (const auto& [begin, end] : tokens) {
    const bool overlaps = std::any_of(spans.begin(), spans.end(),
                                      [&](const ToxicSpan& s) { return s.start < end && begin < s.end; });
    if (overlaps) ++covered;
  }
  return make_verdict(static_cast<double>(covered) / static_cast<double>(tokens.size()), threshold);
}

std::vector<Result<ToxicityVerdict>> score_external(std::span<const std::string> texts, Lang lang,
                                                    ShimClient& backend, double threshold) {
  std::vector<ShimMessage> requests;
  requests.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    ShimMessage m;
    m.op = Op::score;
    m.id = "score-" + std::to_string(next_request_serial());
    m.lang = lang;
    m.text = texts[i];
    requests.push_back(std::move(m));
  }
  auto replies = backend.call(requests);
  std::vector<Result<ToxicityVerdict>> out;
  out.reserve(replies.size());
  for (std::size_t i = 0; i < replies.size(); ++i) {
    if (!replies[i].ok()) {
      out.emplace_back(replies[i].failure());
      continue;
    }
    double score = *replies[i].value().score;
    if (!(score >= 0.0 && score <= 1.0)) {
      const double clamped = std::isnan(score) ? 1.0 : std::clamp(score, 0.0, 1.0);
      log_warning("backend score " + std::to_string(score) + " for '" + *requests[i].id + "' clamped to " +
                  std::to_string(clamped));
      score = clamped;
    }
    out.emplace_back(make_verdict(score, threshold));
  }
  return out;
}

LexiconScorer::LexiconScorer(std::shared_ptr<const MatcherSet> matchers, ScorerKind kind, double threshold)
    : matchers_(std::move(matchers)), kind_(kind), threshold_(threshold) {
  if (kind_ == ScorerKind::External) throw Error("LexiconScorer needs a lexicon scorer kind");
  GateConfig{threshold_, kind_}.validate();
}

std::string LexiconScorer::name() const { return kind_ == ScorerKind::LexiconPresence ? "presence" : "ratio"; }

std::vector<Result<ToxicityVerdict>> LexiconScorer::score(std::span<const std::string> texts, Lang lang) {
  std::vector<Result<ToxicityVerdict>> out;
  out.reserve(texts.size());
  const CompiledMatcher* matcher = matchers_->find(lang);
  for (const auto& text : texts) {
    if (!matcher) {
      out.emplace_back(Failure{FailureKind::Input, "no lexicon loaded for '" + std::string(to_string(lang)) + "'"});
      continue;
    }
    try {
      out.emplace_back(kind_ == ScorerKind::LexiconPresence
                           ? score_lexicon_presence(text, *matcher, matcher->segmentation(), threshold_)
                           : score_lexicon_ratio(text, *matcher, matcher->segmentation(), threshold_));
    } catch (const Error& e) {
      out.emplace_back(Failure{FailureKind::Input, e.what()});
    }
  }
  return out;
}

ExternalScorer::ExternalScorer(std::shared_ptr<ShimClient> backend, double threshold)
    : backend_(std::move(backend)), threshold_(threshold) {
  GateConfig{threshold_, ScorerKind::External}.validate();
}

std::vector<Result<ToxicityVerdict>> ExternalScorer::score(std::span<const std::string> texts, Lang lang) {
  return score_external(texts, lang, *backend_, threshold_);
}

}  // namespace detox

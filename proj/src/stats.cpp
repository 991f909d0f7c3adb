#include "detox/stats.hpp"

#include "detox/error.hpp"
#include "detox/unicode.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

namespace detox {

std::string_view to_string(LengthUnit unit) { return unit == LengthUnit::Words ? "words" : "characters"; }

std::size_t count_words(std::string_view text) { return unicode::whitespace_tokens(text).size(); }

std::size_t count_characters(std::string_view text) { return unicode::count_scalars(text); }

namespace {

double median_of(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  return n % 2 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

}  // namespace

Quartiles inclusive_quartiles(std::span<const double> sorted) {
  if (sorted.empty()) throw Error("quartiles of an empty sample");
  const std::size_t n = sorted.size();
  if (n == 1) return {sorted[0], sorted[0], sorted[0]};
  const std::size_t half = n / 2 + (n % 2);  // odd counts share the median
  return {median_of(sorted.first(half)), median_of(sorted), median_of(sorted.last(half))};
}

LengthSummary length_summary(std::span<const std::string> texts, Lang lang) {
  if (texts.empty()) throw Error("length summary of an empty list");
  const LengthUnit unit = length_unit_for(lang);
  std::vector<double> lengths;
  lengths.reserve(texts.size());
  for (const auto& t : texts) {
    lengths.push_back(static_cast<double>(unit == LengthUnit::Words ? count_words(t) : count_characters(t)));
  }
  std::sort(lengths.begin(), lengths.end());
  LengthSummary s{lang, unit, texts.size(), 0.0, 0, 0, inclusive_quartiles(lengths)};
  s.mean = std::accumulate(lengths.begin(), lengths.end(), 0.0) / static_cast<double>(lengths.size());
  s.min = static_cast<std::size_t>(lengths.front());
  s.max = static_cast<std::size_t>(lengths.back());
  return s;
}

std::map<Lang, std::size_t> lexicon_census(const LexiconManifest& manifest) {
  std::map<Lang, std::size_t> census;
  for (const auto& [lang, path] : manifest) {
    try {
      census[lang] = load_lexicon(path, lang).raw_count();
    } catch (const Error& e) {
      throw Error("lexicon census failed for '" + std::string(to_string(lang)) + "': " + e.what());
    }
  }
  return census;
}

std::map<Lang, ParallelStats> parallel_stats(std::span<const ParallelPair> pairs) {
  std::map<Lang, std::vector<std::string>> toxic, neutral;
  for (const auto& p : pairs) {
    toxic[p.lang].push_back(p.toxic);
    if (p.neutral) neutral[p.lang].push_back(*p.neutral);
  }
  std::map<Lang, ParallelStats> out;
  for (const auto& [lang, texts] : toxic) {
    ParallelStats s{texts.size(), length_summary(texts, lang), std::nullopt};
    if (auto it = neutral.find(lang); it != neutral.end()) s.neutral = length_summary(it->second, lang);
    out.emplace(lang, std::move(s));
  }
  return out;
}

std::map<Lang, std::array<std::size_t, 2>> label_counts_by_lang(std::span<const LabeledSentence> sentences) {
  std::map<Lang, std::array<std::size_t, 2>> out;
  for (const auto& s : sentences) ++out[s.lang][s.label ? 1 : 0];
  return out;
}

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void append_summary(std::string& out, std::string_view column, const LengthSummary& s) {
  out += std::string(to_string(s.lang)) + '\t' + std::string(column) + '\t' + std::string(to_string(s.unit)) + '\t' +
         std::to_string(s.count) + '\t' + fixed(s.mean) + '\t' + std::to_string(s.min) + '\t' +
         fixed(s.quartiles.q1) + '\t' + fixed(s.quartiles.median) + '\t' + fixed(s.quartiles.q3) + '\t' +
         std::to_string(s.max) + '\n';
}

}  // namespace

std::string lengths_tsv(const std::map<Lang, ParallelStats>& stats) {
  std::string out = "lang\tcolumn\tunit\tcount\tmean\tmin\tq1\tmedian\tq3\tmax\n";
  for (const auto& [lang, s] : stats) {
    append_summary(out, "toxic", s.toxic);
    if (s.neutral) append_summary(out, "neutral", *s.neutral);
  }
  return out;
}

std::string census_tsv(const std::map<Lang, std::size_t>& census) {
  std::string out = "lang\tentries\n";
  for (const auto& [lang, n] : census) out += std::string(to_string(lang)) + '\t' + std::to_string(n) + '\n';
  return out;
}

std::string labels_tsv(const std::map<Lang, std::array<std::size_t, 2>>& counts) {
  std::string out = "lang\tnon_toxic\ttoxic\n";
  for (const auto& [lang, c] : counts) {
    out += std::string(to_string(lang)) + '\t' + std::to_string(c[0]) + '\t' + std::to_string(c[1]) + '\n';
  }
  return out;
}

nlohmann::json summary_json(const LengthSummary& s) {
  return {{"lang", to_string(s.lang)}, {"unit", to_string(s.unit)}, {"count", s.count},
          {"mean", s.mean},            {"min", s.min},              {"q1", s.quartiles.q1},
          {"median", s.quartiles.median}, {"q3", s.quartiles.q3},   {"max", s.max}};
}

}  // namespace detox

#pragma once

#include "detox/corpus_io.hpp"
#include "detox/language.hpp"
#include "detox/lexicon.hpp"

#include <json.hpp>

#include <cstddef>
#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace detox {

enum class LengthUnit { Words, Characters };

std::string_view to_string(LengthUnit unit);

// Characters for zh and ja, words elsewhere.
constexpr LengthUnit length_unit_for(Lang lang) {
  return segmentation_for(lang) == Segmentation::Cjk ? LengthUnit::Characters : LengthUnit::Words;
}

std::size_t count_words(std::string_view text);       // whitespace tokens
std::size_t count_characters(std::string_view text);  // Unicode scalar values

struct Quartiles {
  double q1, median, q3;
};

// Inclusive-median (Tukey hinge) quartiles: with an odd count the median joins
// both halves. Input must be sorted and non-empty.
Quartiles inclusive_quartiles(std::span<const double> sorted);

struct LengthSummary {
  Lang lang;
  LengthUnit unit;
  std::size_t count;
  double mean;
  std::size_t min;
  std::size_t max;
  Quartiles quartiles;
};

// Throws Error for an empty list.
LengthSummary length_summary(std::span<const std::string> texts, Lang lang);

// raw_count per language, as reported by load_lexicon. A failing language
// aborts the census with an Error naming it.
std::map<Lang, std::size_t> lexicon_census(const LexiconManifest& manifest);

struct ParallelStats {
  std::size_t pairs;
  LengthSummary toxic;
  std::optional<LengthSummary> neutral;
};

std::map<Lang, ParallelStats> parallel_stats(std::span<const ParallelPair> pairs);
std::map<Lang, std::array<std::size_t, 2>> label_counts_by_lang(std::span<const LabeledSentence> sentences);

// Tables mirroring per-language length distributions, label counts and lexicon sizes.
std::string lengths_tsv(const std::map<Lang, ParallelStats>& stats);
std::string census_tsv(const std::map<Lang, std::size_t>& census);
std::string labels_tsv(const std::map<Lang, std::array<std::size_t, 2>>& counts);
nlohmann::json summary_json(const LengthSummary& summary);

}  // namespace detox

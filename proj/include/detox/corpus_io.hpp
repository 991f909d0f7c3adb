#pragma once

#include "detox/language.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace detox {

// One toxic/neutral pair. `id` comes from an optional leading `id` column,
// otherwise it is the 1-based data-row number.
struct ParallelPair {
  std::string id;
  Lang lang;
  std::string toxic;
  std::optional<std::string> neutral;

  bool operator==(const ParallelPair&) const = default;
};

struct LabeledSentence {
  Lang lang;
  std::string text;
  int label;  // 0 = non-toxic, 1 = toxic

  bool operator==(const LabeledSentence&) const = default;
};

enum class ErrorMode { Strict, Lenient };

struct RowError {
  std::size_t line;
  std::string message;
};

template <typename T>
struct Loaded {
  std::vector<T> records;
  std::vector<RowError> errors;  // only populated in lenient mode
  std::size_t data_rows = 0;
};

// Header: [id<TAB>]lang<TAB>toxic_sentence[<TAB>neutral_sentence].
Loaded<ParallelPair> parse_parallel(std::string_view content, bool has_neutral,
                                    ErrorMode mode = ErrorMode::Strict);
std::vector<ParallelPair> load_parallel(const std::filesystem::path& path, bool has_neutral);
Loaded<ParallelPair> load_parallel(const std::filesystem::path& path, bool has_neutral, ErrorMode mode);

// Header: lang<TAB>text<TAB>label.
Loaded<LabeledSentence> parse_labeled(std::string_view content, ErrorMode mode = ErrorMode::Strict);
std::vector<LabeledSentence> load_labeled(const std::filesystem::path& path);
Loaded<LabeledSentence> load_labeled(const std::filesystem::path& path, ErrorMode mode);

// Always writes the id column. Throws when a field cannot be represented.
std::string format_parallel(std::span<const ParallelPair> pairs, bool has_neutral);
std::string format_labeled(std::span<const LabeledSentence> sentences);

// counts[label]
std::array<std::size_t, 2> label_counts(std::span<const LabeledSentence> sentences);

}  // namespace detox

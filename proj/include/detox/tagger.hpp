#pragma once

#include "detox/language.hpp"
#include "detox/lexicon.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace detox {

inline constexpr std::string_view kOpenTag = "<toxic>";
inline constexpr std::string_view kCloseTag = "</toxic>";

// A lexicon hit in the original text; offsets are byte offsets on code point boundaries.
struct ToxicSpan {
  std::size_t start;
  std::size_t end;  // exclusive
  std::string surface;
  std::string entry;  // the normalized lexicon term that matched

  bool operator==(const ToxicSpan&) const = default;
};

struct TaggedText {
  std::string original;
  std::vector<ToxicSpan> spans;  // sorted by start, non-overlapping
  Lang lang;
};

bool contains_markup(std::string_view text);

// Finds lexicon spans, leftmost-longest and non-overlapping. With whitespace
// segmentation a hit must not touch a word character on either side; with
// Cjk segmentation any substring hit counts.
// Throws PreTaggedInputError if the text already carries markup.
TaggedText tag(std::string_view text, const CompiledMatcher& matcher, Segmentation segmentation);
TaggedText tag(std::string_view text, const CompiledMatcher& matcher);

std::string render_markup(const TaggedText& tagged);

struct StrippedText {
  std::string clean;
  bool had_tags;
};

// Removes every markup token (contents are kept), repeating until none remain.
StrippedText strip_markup(std::string_view text);

}  // namespace detox

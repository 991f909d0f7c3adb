#include "detox/tagger.hpp"

#include "detox/error.hpp"
#include "detox/unicode.hpp"

#include <algorithm>

namespace detox {

namespace {

bool boundary_ok(std::string_view text, std::size_t start, std::size_t end) {
  const auto before = unicode::codepoint_before(text, start);
  if (before && unicode::is_word_char(*before)) return false;
  const auto after = unicode::codepoint_at(text, end);
  return !(after && unicode::is_word_char(*after));
}

}  // namespace

bool contains_markup(std::string_view text) {
  return text.find(kOpenTag) != std::string_view::npos || text.find(kCloseTag) != std::string_view::npos;
}

TaggedText tag(std::string_view text, const CompiledMatcher& matcher, Segmentation segmentation) {
  if (contains_markup(text)) throw PreTaggedInputError();

  TaggedText out{std::string(text), {}, matcher.lang()};
  const auto normalized = unicode::normalize_with_offsets(text);

  struct Hit {
    std::size_t start, end;
    std::uint32_t pattern;
  };
  std::vector<Hit> hits;
  for (const auto& m : matcher.candidates(normalized.text)) {
    const auto range = normalized.original_range(m.begin, m.end);
    if (!range) continue;
    if (segmentation == Segmentation::Whitespace && !boundary_ok(text, range->first, range->second)) continue;
    hits.push_back({range->first, range->second, m.pattern});
  }

  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return a.start != b.start ? a.start < b.start : a.end > b.end;
  });
  std::size_t cursor = 0;
  for (const auto& h : hits) {
    if (h.start < cursor) continue;
    out.spans.push_back({h.start, h.end, std::string(text.substr(h.start, h.end - h.start)),
                         matcher.entry(h.pattern)});
    cursor = h.end;
  }
  return out;
}

TaggedText tag(std::string_view text, const CompiledMatcher& matcher) {
  return tag(text, matcher, matcher.segmentation());
}

std::string render_markup(const TaggedText& tagged) {
  std::string out;
  out.reserve(tagged.original.size() + tagged.spans.size() * (kOpenTag.size() + kCloseTag.size()));
  std::size_t pos = 0;
  for (const auto& span : tagged.spans) {
    out.append(tagged.original, pos, span.start - pos);
    out.append(kOpenTag);
    out.append(tagged.original, span.start, span.end - span.start);
    out.append(kCloseTag);
    pos = span.end;
  }
  out.append(tagged.original, pos);
  return out;
}

StrippedText strip_markup(std::string_view text) {
  StrippedText result{std::string(text), false};
  while (contains_markup(result.clean)) {
    std::string next;
    next.reserve(result.clean.size());
    std::string_view rest = result.clean;
    while (!rest.empty()) {
      if (rest.starts_with(kOpenTag)) {
        rest.remove_prefix(kOpenTag.size());
      } else if (rest.starts_with(kCloseTag)) {
        rest.remove_prefix(kCloseTag.size());
      } else {
        next.push_back(rest.front());
        rest.remove_prefix(1);
      }
    }
    result.clean = std::move(next);
    result.had_tags = true;
  }
  return result;
}

}  // namespace detox

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace detox::unicode {

bool is_valid_utf8(std::string_view text);

// Throws DecodeError mentioning `what` on malformed UTF-8.
void require_utf8(std::string_view text, std::string_view what);

bool is_whitespace(char32_t cp);

// Letters (Alphabetic, plus combining marks), decimal digits, and underscore.
bool is_word_char(char32_t cp);

// Code point starting at byte `pos`, or nullopt at end of text.
std::optional<char32_t> codepoint_at(std::string_view text, std::size_t pos);

// Code point ending just before byte `pos`, or nullopt at start of text.
std::optional<char32_t> codepoint_before(std::string_view text, std::size_t pos);

std::vector<char32_t> decode(std::string_view text);

std::size_t count_scalars(std::string_view text);

using ByteRange = std::pair<std::size_t, std::size_t>;

// Whitespace-delimited tokens as [begin, end) byte ranges.
std::vector<ByteRange> whitespace_tokens(std::string_view text);

// Byte ranges of every non-whitespace code point.
std::vector<ByteRange> non_space_chars(std::string_view text);

// Collapses whitespace runs to a single ASCII space and trims both ends.
std::string collapse_whitespace(std::string_view text);

std::string remove_whitespace(std::string_view text);

// A matching-ready copy of a text plus the offset map back to the original.
//
// The text is cut into normalization-safe pieces (cluster boundaries per
// NFC), each piece is NFC-normalized and case-folded on its own, and every
// whitespace run becomes a single space. Concatenating per-piece results is
// identical to normalizing the whole string.
struct NormalizedText {
  struct Piece {
    std::size_t orig_begin, orig_end;
    std::size_t norm_begin, norm_end;
  };

  std::string text;
  std::vector<Piece> pieces;
  std::vector<std::uint32_t> piece_of_byte;  // one entry per byte of `text`

  // Original-text range covered by normalized [begin, end), or nullopt when
  // either end cuts through the output of a single piece.
  std::optional<ByteRange> original_range(std::size_t begin, std::size_t end) const;
};

NormalizedText normalize_with_offsets(std::string_view text);

// NFC, full case folding, whitespace collapse and trim.
std::string normalize(std::string_view term);

}  // namespace detox::unicode

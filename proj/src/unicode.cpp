#include "detox/unicode.hpp"

#include "detox/error.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

namespace detox::unicode {

namespace {

const icu::Normalizer2& nfc() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) throw Error(std::string("ICU NFC unavailable: ") + u_errorName(status));
    return n;
  }();
  return *instance;
}

// Decodes one code point at `pos`, advancing it. Ill-formed bytes yield U+FFFD.
char32_t next_cp(std::string_view text, std::size_t& pos) {
  auto i = static_cast<int32_t>(pos);
  UChar32 c;
  U8_NEXT(reinterpret_cast<const uint8_t*>(text.data()), i, static_cast<int32_t>(text.size()), c);
  pos = static_cast<std::size_t>(i);
  return c < 0 ? U'\uFFFD' : static_cast<char32_t>(c);
}

void append_folded(std::string& out, std::string_view piece) {
  if (piece.size() == 1 && static_cast<unsigned char>(piece[0]) < 0x80) {
    char ch = piece[0];
    out.push_back(ch >= 'A' && ch <= 'Z' ? static_cast<char>(ch - 'A' + 'a') : ch);
    return;
  }
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(piece.data(), static_cast<int32_t>(piece.size())));
  icu::UnicodeString composed = nfc().normalize(s, status);
  if (U_FAILURE(status)) composed = s;
  composed.foldCase(U_FOLD_CASE_DEFAULT);
  composed.toUTF8String(out);
}

}  // namespace

bool is_valid_utf8(std::string_view text) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) return false;
  }
  return true;
}

void require_utf8(std::string_view text, std::string_view what) {
  if (!is_valid_utf8(text)) throw DecodeError("invalid UTF-8 in " + std::string(what));
}

bool is_whitespace(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)); }

bool is_word_char(char32_t cp) {
  if (cp == U'_') return true;
  auto c = static_cast<UChar32>(cp);
  if (u_hasBinaryProperty(c, UCHAR_ALPHABETIC)) return true;
  return (U_GET_GC_MASK(c) & (U_GC_M_MASK | U_GC_ND_MASK)) != 0;
}

std::optional<char32_t> codepoint_at(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return std::nullopt;
  return next_cp(text, pos);
}

std::optional<char32_t> codepoint_before(std::string_view text, std::size_t pos) {
  if (pos == 0 || pos > text.size()) return std::nullopt;
  auto i = static_cast<int32_t>(pos);
  UChar32 c;
  U8_PREV(reinterpret_cast<const uint8_t*>(text.data()), 0, i, c);
  return c < 0 ? U'\uFFFD' : static_cast<char32_t>(c);
}

std::vector<char32_t> decode(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  for (std::size_t pos = 0; pos < text.size();) out.push_back(next_cp(text, pos));
  return out;
}

std::size_t count_scalars(std::string_view text) {
  std::size_t n = 0;
  for (std::size_t pos = 0; pos < text.size(); ++n) next_cp(text, pos);
  return n;
}

std::vector<ByteRange> whitespace_tokens(std::string_view text) {
  constexpr std::size_t kNoToken = std::string_view::npos;
  std::vector<ByteRange> tokens;
  std::size_t begin = kNoToken;
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t at = pos;
    const bool space = is_whitespace(next_cp(text, pos));
    if (space && begin != kNoToken) {
      tokens.emplace_back(begin, at);
      begin = kNoToken;
    } else if (!space && begin == kNoToken) {
      begin = at;
    }
  }
  if (begin != kNoToken) tokens.emplace_back(begin, text.size());
  return tokens;
}

std::vector<ByteRange> non_space_chars(std::string_view text) {
  std::vector<ByteRange> chars;
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t at = pos;
    if (!is_whitespace(next_cp(text, pos))) chars.emplace_back(at, pos);
  }
  return chars;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t at = pos;
    if (is_whitespace(next_cp(text, pos))) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.append(text.substr(at, pos - at));
  }
  return out;
}

std::string remove_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t at = pos;
    if (!is_whitespace(next_cp(text, pos))) out.append(text.substr(at, pos - at));
  }
  return out;
}

std::optional<ByteRange> NormalizedText::original_range(std::size_t begin, std::size_t end) const {
  if (begin >= end || end > text.size()) return std::nullopt;
  const Piece& first = pieces[piece_of_byte[begin]];
  const Piece& last = pieces[piece_of_byte[end - 1]];
  if (first.norm_begin != begin || last.norm_end != end) return std::nullopt;
  return ByteRange{first.orig_begin, last.orig_end};
}

NormalizedText normalize_with_offsets(std::string_view text) {
  NormalizedText result;
  result.text.reserve(text.size() + text.size() / 8);
  const icu::Normalizer2& n = nfc();

  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t begin = pos;
    const char32_t first = next_cp(text, pos);
    const bool space = is_whitespace(first);
    // Extend the piece up to the next normalization boundary (or to the end
    // of a whitespace run).
    while (pos < text.size()) {
      std::size_t peek = pos;
      const char32_t cp = next_cp(text, peek);
      if (space ? !is_whitespace(cp) : (n.hasBoundaryBefore(static_cast<UChar32>(cp)) || is_whitespace(cp))) {
        break;
      }
      pos = peek;
    }

    const std::size_t norm_begin = result.text.size();
    if (space) {
      result.text.push_back(' ');
    } else {
      append_folded(result.text, text.substr(begin, pos - begin));
    }
    const std::size_t norm_end = result.text.size();
    const auto index = static_cast<std::uint32_t>(result.pieces.size());
    result.pieces.push_back({begin, pos, norm_begin, norm_end});
    result.piece_of_byte.insert(result.piece_of_byte.end(), norm_end - norm_begin, index);
  }
  return result;
}

std::string normalize(std::string_view term) {
  std::string text = normalize_with_offsets(term).text;
  const auto first = text.find_first_not_of(' ');
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(' ');
  return text.substr(first, last - first + 1);
}

}  // namespace detox::unicode

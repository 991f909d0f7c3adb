#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace detox {

// The closed set of fifteen supported languages. Hinglish is `hin`.
enum class Lang : std::uint8_t { am, ar, de, en, es, fr, he, hi, hin, it, ja, ru, tt, uk, zh };

inline constexpr std::array<Lang, 15> kAllLanguages = {
    Lang::am, Lang::ar, Lang::de, Lang::en, Lang::es, Lang::fr, Lang::he, Lang::hi,
    Lang::hin, Lang::it, Lang::ja, Lang::ru, Lang::tt, Lang::uk, Lang::zh};

std::string_view to_string(Lang lang);

std::optional<Lang> try_parse_lang(std::string_view code);

// Throws detox::Error naming the code when it is not one of the fifteen.
Lang parse_lang(std::string_view code);

enum class Segmentation { Whitespace, Cjk };

// Cjk for zh and ja; everything else (Hinglish included) is whitespace-delimited.
constexpr Segmentation segmentation_for(Lang lang) {
  return (lang == Lang::zh || lang == Lang::ja) ? Segmentation::Cjk : Segmentation::Whitespace;
}

}  // namespace detox

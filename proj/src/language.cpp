#include "detox/language.hpp"

#include "detox/error.hpp"

#include <string>

namespace detox {

namespace {

constexpr std::array<std::string_view, 15> kCodes = {
    "am", "ar", "de", "en", "es", "fr", "he", "hi", "hin", "it", "ja", "ru", "tt", "uk", "zh"};

}  // namespace

std::string_view to_string(Lang lang) { return kCodes[static_cast<std::size_t>(lang)]; }

std::optional<Lang> try_parse_lang(std::string_view code) {
  for (std::size_t i = 0; i < kCodes.size(); ++i) {
    if (kCodes[i] == code) return static_cast<Lang>(i);
  }
  return std::nullopt;
}

Lang parse_lang(std::string_view code) {
  if (auto lang = try_parse_lang(code)) return *lang;
  throw Error("invalid language code '" + std::string(code) + "'");
}

const char* to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::Input: return "input";
    case FailureKind::Protocol: return "protocol";
    case FailureKind::Timeout: return "timeout";
    case FailureKind::Channel: return "channel";
    case FailureKind::Backend: return "backend";
    case FailureKind::Capability: return "capability";
  }
  return "unknown";
}

}  // namespace detox

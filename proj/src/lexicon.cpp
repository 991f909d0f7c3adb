#include "detox/lexicon.hpp"

#include "detox/error.hpp"
#include "detox/tsv.hpp"
#include "detox/unicode.hpp"

#include <json.hpp>

#include <algorithm>

namespace detox {

Lexicon Lexicon::from_terms(Lang lang, std::span<const std::string> raw_terms) {
  std::vector<std::string> entries;
  entries.reserve(raw_terms.size());
  std::size_t raw_count = 0;
  for (const auto& term : raw_terms) {
    std::string normalized = unicode::normalize(term);
    if (normalized.empty()) continue;
    ++raw_count;
    entries.push_back(std::move(normalized));
  }
  if (entries.empty()) throw Error("lexicon for '" + std::string(to_string(lang)) + "' has no entries");
  std::sort(entries.begin(), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  return Lexicon(lang, std::move(entries), raw_count);
}

Lexicon parse_lexicon(std::string_view content, Lang lang) {
  std::vector<std::string> terms;
  for (const auto& line : tsv::split_lines(content)) {
    if (!unicode::is_valid_utf8(line.text)) {
      throw DecodeError("line " + std::to_string(line.number) + ": invalid UTF-8");
    }
    terms.emplace_back(line.text);
  }
  return Lexicon::from_terms(lang, terms);
}

Lexicon load_lexicon(const std::filesystem::path& path, Lang lang) {
  try {
    return parse_lexicon(tsv::read_file(path), lang);
  } catch (const DecodeError& e) {
    throw DecodeError(path.string() + ": " + e.what());
  }
}

CompiledMatcher::CompiledMatcher(Lang lang, std::vector<std::string> entries)
    : lang_(lang), entries_(std::move(entries)), automaton_(entries_) {}

CompiledMatcher compile(const Lexicon& lexicon) {
  if (lexicon.entries().empty()) throw Error("cannot compile an empty lexicon");
  return CompiledMatcher(lexicon.lang(), lexicon.entries());
}

LexiconManifest load_manifest(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(tsv::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(path.string() + ": manifest must be a JSON object");
  LexiconManifest manifest;
  const auto base = path.parent_path();
  for (const auto& [code, value] : doc.items()) {
    if (!value.is_string()) throw Error(path.string() + ": path for '" + code + "' must be a string");
    std::filesystem::path file = value.get<std::string>();
    manifest[parse_lang(code)] = file.is_absolute() ? file : base / file;
  }
  return manifest;
}

void MatcherSet::add(std::shared_ptr<const CompiledMatcher> matcher) {
  const Lang lang = matcher->lang();
  matchers_[lang] = std::move(matcher);
}

const CompiledMatcher* MatcherSet::find(Lang lang) const {
  auto it = matchers_.find(lang);
  return it == matchers_.end() ? nullptr : it->second.get();
}

const CompiledMatcher& MatcherSet::at(Lang lang) const {
  if (const auto* m = find(lang)) return *m;
  throw Error("no lexicon loaded for '" + std::string(to_string(lang)) + "'");
}

MatcherSet MatcherSet::from_manifest(const LexiconManifest& manifest) {
  MatcherSet set;
  for (const auto& [lang, path] : manifest) {
    set.add(std::make_shared<const CompiledMatcher>(compile(load_lexicon(path, lang))));
  }
  return set;
}

}  // namespace detox

#pragma once

#include "detox/aho_corasick.hpp"
#include "detox/language.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace detox {

// Per-language toxic term set. Entries are normalized (see unicode::normalize),
// unique, and sorted; raw_count is the number of non-blank source lines.
class Lexicon {
 public:
  // Throws Error if no entry survives normalization.
  static Lexicon from_terms(Lang lang, std::span<const std::string> raw_terms);

  Lang lang() const { return lang_; }
  Segmentation segmentation() const { return segmentation_for(lang_); }
  const std::vector<std::string>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t raw_count() const { return raw_count_; }

 private:
  Lexicon(Lang lang, std::vector<std::string> entries, std::size_t raw_count)
      : lang_(lang), entries_(std::move(entries)), raw_count_(raw_count) {}

  Lang lang_;
  std::vector<std::string> entries_;
  std::size_t raw_count_;
};

// One term per line, UTF-8; blank lines are ignored.
Lexicon load_lexicon(const std::filesystem::path& path, Lang lang);
Lexicon parse_lexicon(std::string_view content, Lang lang);

// Immutable multi-pattern index over a Lexicon's entries; shareable across threads.
class CompiledMatcher {
 public:
  Lang lang() const { return lang_; }
  Segmentation segmentation() const { return segmentation_for(lang_); }
  std::size_t pattern_count() const { return entries_.size(); }
  const std::string& entry(std::uint32_t pattern) const { return entries_[pattern]; }

  // Every occurrence of every entry in an already-normalized haystack,
  // before boundary filtering and overlap resolution.
  std::vector<AhoCorasick::Match> candidates(std::string_view normalized) const {
    return automaton_.find_all(normalized);
  }

 private:
  friend CompiledMatcher compile(const Lexicon& lexicon);
  CompiledMatcher(Lang lang, std::vector<std::string> entries);

  Lang lang_;
  std::vector<std::string> entries_;
  AhoCorasick automaton_;
};

CompiledMatcher compile(const Lexicon& lexicon);

// Language -> lexicon file, from a JSON object such as {"en": "lexicons/en.txt"}.
// Relative paths resolve against the manifest's directory.
using LexiconManifest = std::map<Lang, std::filesystem::path>;
LexiconManifest load_manifest(const std::filesystem::path& path);

// Compiled matchers keyed by language.
class MatcherSet {
 public:
  void add(std::shared_ptr<const CompiledMatcher> matcher);
  const CompiledMatcher* find(Lang lang) const;
  // Throws Error naming the language when absent.
  const CompiledMatcher& at(Lang lang) const;
  std::size_t size() const { return matchers_.size(); }

  static MatcherSet from_manifest(const LexiconManifest& manifest);

 private:
  std::map<Lang, std::shared_ptr<const CompiledMatcher>> matchers_;
};

}  // namespace detox

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace detox {

// Byte-level Aho-Corasick automaton reporting every occurrence of every
// pattern. Transitions are stored in CSR form (sorted labels per node) with a
// dense table for the root, so memory stays proportional to the trie size.
class AhoCorasick {
 public:
  struct Match {
    std::size_t begin;
    std::size_t end;
    std::uint32_t pattern;

    bool operator==(const Match&) const = default;
  };

  AhoCorasick() = default;

  // Patterns must be non-empty. When a pattern repeats, its first index is reported.
  explicit AhoCorasick(std::span<const std::string> patterns);

  std::size_t pattern_count() const { return pattern_lengths_.size(); }
  std::size_t node_count() const { return fail_.size(); }

  // Calls f(Match) for every occurrence, ordered by end offset.
  template <typename F>
  void for_each_match(std::string_view haystack, F&& f) const;

  std::vector<Match> find_all(std::string_view haystack) const;

 private:
  static constexpr std::uint32_t kNone = UINT32_MAX;

  std::uint32_t child(std::uint32_t node, std::uint8_t label) const;
  std::uint32_t step(std::uint32_t node, std::uint8_t label) const;

  std::vector<std::uint32_t> edge_begin_;  // node -> first edge, size nodes + 1
  std::vector<std::uint8_t> edge_label_;
  std::vector<std::uint32_t> edge_target_;
  std::array<std::uint32_t, 256> root_{};
  std::vector<std::uint32_t> fail_;
  std::vector<std::uint32_t> output_;     // pattern ending exactly here, or kNone
  std::vector<std::uint32_t> dict_link_;  // nearest proper suffix node with output
  std::vector<std::uint32_t> pattern_lengths_;
};

inline std::uint32_t AhoCorasick::child(std::uint32_t node, std::uint8_t label) const {
  if (node == 0) return root_[label];
  const std::uint8_t* first = edge_label_.data() + edge_begin_[node];
  const std::uint8_t* last = edge_label_.data() + edge_begin_[node + 1];
  // Fan-out is small below the root; a linear scan beats binary search here.
  for (const std::uint8_t* p = first; p != last; ++p) {
    if (*p == label) return edge_target_[static_cast<std::size_t>(p - edge_label_.data())];
    if (*p > label) break;
  }
  return kNone;
}

inline std::uint32_t AhoCorasick::step(std::uint32_t node, std::uint8_t label) const {
  while (true) {
    const std::uint32_t next = child(node, label);
    if (next != kNone) return next;
    if (node == 0) return 0;
    node = fail_[node];
  }
}

template <typename F>
void AhoCorasick::for_each_match(std::string_view haystack, F&& f) const {
  if (fail_.empty()) return;
  std::uint32_t node = 0;
  for (std::size_t i = 0; i < haystack.size(); ++i) {
    node = step(node, static_cast<std::uint8_t>(haystack[i]));
    for (std::uint32_t hit = output_[node] != kNone ? node : dict_link_[node]; hit != kNone;
         hit = dict_link_[hit]) {
      const std::uint32_t pattern = output_[hit];
      f(Match{i + 1 - pattern_lengths_[pattern], i + 1, pattern});
    }
  }
}

}  // namespace detox

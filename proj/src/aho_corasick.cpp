#include "detox/aho_corasick.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace detox {

AhoCorasick::AhoCorasick(std::span<const std::string> patterns) {
  // Build the trie with per-node edge lists, then flatten to CSR.
  std::vector<std::vector<std::pair<std::uint8_t, std::uint32_t>>> edges(1);
  std::vector<std::uint32_t> output(1, kNone);
  pattern_lengths_.reserve(patterns.size());

  for (std::size_t p = 0; p < patterns.size(); ++p) {
    const std::string& pattern = patterns[p];
    if (pattern.empty()) throw std::invalid_argument("empty pattern");
    std::uint32_t node = 0;
    for (char ch : pattern) {
      const auto label = static_cast<std::uint8_t>(ch);
      auto& out = edges[node];
      auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == label; });
      if (it != out.end()) {
        node = it->second;
        continue;
      }
      const auto next = static_cast<std::uint32_t>(edges.size());
      out.emplace_back(label, next);
      edges.emplace_back();
      output.push_back(kNone);
      node = next;
    }
    if (output[node] == kNone) output[node] = static_cast<std::uint32_t>(p);
    pattern_lengths_.push_back(static_cast<std::uint32_t>(pattern.size()));
  }

  const std::size_t n = edges.size();
  edge_begin_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(edges[v].begin(), edges[v].end());
    edge_begin_[v + 1] = edge_begin_[v] + static_cast<std::uint32_t>(edges[v].size());
  }
  edge_label_.resize(edge_begin_[n]);
  edge_target_.resize(edge_begin_[n]);
  root_.fill(kNone);
  for (std::size_t v = 0; v < n; ++v) {
    std::uint32_t at = edge_begin_[v];
    for (const auto& [label, target] : edges[v]) {
      edge_label_[at] = label;
      edge_target_[at] = target;
      ++at;
      if (v == 0) root_[label] = target;
    }
    std::vector<std::pair<std::uint8_t, std::uint32_t>>().swap(edges[v]);
  }
  output_ = std::move(output);

  // Breadth-first failure and dictionary links.
  fail_.assign(n, 0);
  dict_link_.assign(n, kNone);
  std::vector<std::uint32_t> queue;
  queue.reserve(n);
  for (std::uint32_t e = edge_begin_[0]; e < edge_begin_[1]; ++e) queue.push_back(edge_target_[e]);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t v = queue[head];
    for (std::uint32_t e = edge_begin_[v]; e < edge_begin_[v + 1]; ++e) {
      const std::uint32_t u = edge_target_[e];
      const std::uint32_t f = step(fail_[v], edge_label_[e]);
      fail_[u] = f;
      dict_link_[u] = output_[f] != kNone ? f : dict_link_[f];
      queue.push_back(u);
    }
  }
}

std::vector<AhoCorasick::Match> AhoCorasick::find_all(std::string_view haystack) const {
  std::vector<Match> out;
  for_each_match(haystack, [&](const Match& m) { out.push_back(m); });
  return out;
}

}  // namespace detox

#pragma once

#include "detox/embeddings.hpp"
#include "detox/shim_protocol.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace detox {

// Behaviour knobs for the in-repo test backend, including fault injection.
struct MockOptions {
  CapabilitySet capabilities = {Capability::detox, Capability::score, Capability::embed};
  std::string protocol = std::string(kProtocolVersion);

  enum class DetoxMode { Echo, Delete } detox_mode = DetoxMode::Echo;

  // Score answered for every text; otherwise 0.95 when any toxic word occurs, else 0.05.
  std::optional<double> fixed_score;
  std::vector<std::string> toxic_words;
  std::size_t embed_dim = 64;

  bool garbage_hello = false;     // reply to hello with a non-JSON line
  bool corrupt_ids = false;       // answer with ids that were never sent
  bool malformed_reply = false;   // answer requests with a non-JSON line
  std::set<std::string> drop_ids; // never answer these ids
  std::size_t drop_every = 0;     // never answer every Nth request
  std::size_t die_after = 0;      // stop after this many requests (0 = never)
  bool reorder = false;           // transport hint: emit buffered replies in reverse order
};

// Protocol state machine of the mock backend, independent of transport.
class MockBackend {
 public:
  explicit MockBackend(MockOptions options);

  // Replies to one request line: zero lines (dropped) or one line.
  std::vector<std::string> handle(std::string_view line);

  // True once die_after requests have been consumed.
  bool finished() const { return options_.die_after && requests_seen_ >= options_.die_after; }
  const MockOptions& options() const { return options_; }

 private:
  ShimMessage reply_to(const ShimMessage& request) const;

  MockOptions options_;
  NgramEmbedder embedder_;
  std::size_t requests_seen_ = 0;
};

}  // namespace detox

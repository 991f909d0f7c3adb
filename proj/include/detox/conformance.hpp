#pragma once

#include "detox/shim_client.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace detox {

struct ConformanceEntry {
  enum class Status { Pass, Fail, Skipped };

  std::string rule;
  Status status;
  std::string detail;
};

struct ConformanceReport {
  std::vector<ConformanceEntry> entries;

  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
  const ConformanceEntry* find(const std::string& rule) const;
  std::string to_text() const;
};

// Runs a fixed battery against a handshaken backend: empty text, a 10 kB
// text, non-Latin scripts, unusual ids, score range and embedding shape, plus
// an id bijection check per capability. Never throws for backend misbehaviour;
// every finding is a report entry.
ConformanceReport conformance_check(ShimClient& client);

}  // namespace detox

// Test backend speaking the shim protocol over stdin/stdout, with switches
// for injecting the failures the client must detect.

#include "detox/mock_backend.hpp"

#include <CLI11.hpp>

#include <poll.h>
#include <unistd.h>

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

namespace {

// Reads stdin by file descriptor so poll() sees exactly what is unconsumed.
class LineReader {
 public:
  // Returns false at end of input.
  bool next(std::string& line) {
    while (true) {
      const auto newline = buffer_.find('\n');
      if (newline != std::string::npos) {
        line = buffer_.substr(0, newline);
        buffer_.erase(0, newline + 1);
        return true;
      }
      if (eof_) {
        if (buffer_.empty()) return false;
        line = std::exchange(buffer_, {});
        return true;
      }
      fill();
    }
  }

  // True when a complete line is available within timeout_ms.
  bool ready(int timeout_ms) {
    if (buffer_.find('\n') != std::string::npos || eof_) return true;
    pollfd pfd{STDIN_FILENO, POLLIN, 0};
    return poll(&pfd, 1, timeout_ms) > 0;
  }

 private:
  void fill() {
    char chunk[65536];
    const ssize_t n = read(STDIN_FILENO, chunk, sizeof chunk);
    if (n <= 0) {
      eof_ = true;
    } else {
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  std::string buffer_;
  bool eof_ = false;
};

void emit(const std::vector<std::string>& lines) {
  for (const auto& l : lines) std::cout << l << '\n';
  std::cout.flush();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mock detox-shim/1 backend for tests"};
  detox::MockOptions options;
  std::vector<std::string> capabilities;
  std::string detox_mode = "echo";
  std::vector<std::string> drop_ids;
  double fixed_score = 0;
  app.add_option("--capabilities", capabilities, "Subset of detox,score,embed")->delimiter(',');
  app.add_option("--protocol", options.protocol, "Protocol string announced in hello");
  app.add_option("--detox-mode", detox_mode, "echo | delete")->check(CLI::IsMember({"echo", "delete"}));
  auto* score_opt = app.add_option("--score", fixed_score, "Fixed score returned for every text");
  app.add_option("--toxic-word", options.toxic_words, "Words that raise the heuristic score");
  app.add_option("--embed-dim", options.embed_dim, "Embedding dimension")->check(CLI::PositiveNumber);
  app.add_flag("--garbage-hello", options.garbage_hello, "Answer hello with a non-JSON line");
  app.add_flag("--corrupt-ids", options.corrupt_ids, "Reply with ids that were never sent");
  app.add_flag("--malformed", options.malformed_reply, "Reply with a truncated JSON line");
  app.add_option("--drop-id", drop_ids, "Never answer this id");
  app.add_option("--drop-every", options.drop_every, "Never answer every Nth request");
  app.add_option("--die-after", options.die_after, "Exit after N requests");
  app.add_flag("--reorder", options.reorder, "Hold replies until input goes idle, then send them reversed");
  CLI11_PARSE(app, argc, argv);

  if (!capabilities.empty()) {
    options.capabilities.clear();
    for (const auto& name : capabilities) {
      auto c = detox::parse_capability(name);
      if (!c) {
        std::cerr << "unknown capability '" << name << "'\n";
        return 2;
      }
      options.capabilities.insert(*c);
    }
  }
  options.detox_mode = detox_mode == "delete" ? detox::MockOptions::DetoxMode::Delete : detox::MockOptions::DetoxMode::Echo;
  if (*score_opt) options.fixed_score = fixed_score;
  options.drop_ids.insert(drop_ids.begin(), drop_ids.end());

  detox::MockBackend backend(options);
  LineReader reader;
  std::vector<std::string> held;
  std::string line;
  while (reader.next(line)) {
    if (line.empty()) continue;
    auto replies = backend.handle(line);
    const bool is_hello = line.find("\"hello\"") != std::string::npos && held.empty();
    if (options.reorder && !is_hello) {
      held.insert(held.end(), replies.begin(), replies.end());
      if (!reader.ready(50)) {
        std::reverse(held.begin(), held.end());
        emit(held);
        held.clear();
      }
    } else {
      emit(replies);
    }
    if (backend.finished()) return 0;
  }
  std::reverse(held.begin(), held.end());
  emit(held);
  return 0;
}

#include "detox/shim_client.hpp"

#include <atomic>
#include <cerrno>
#include <csignal>
#include <cstring>
#include <thread>
#include <unordered_map>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace detox {

namespace {

class ProcessTransport final : public Transport {
 public:
  explicit ProcessTransport(std::string command) : command_(std::move(command)) {
    static const bool sigpipe_ignored = [] {
      std::signal(SIGPIPE, SIG_IGN);
      return true;
    }();
    (void)sigpipe_ignored;

    int to_child[2];
    int from_child[2];
    if (pipe2(to_child, O_CLOEXEC) != 0) throw ChannelError("pipe: " + std::string(std::strerror(errno)));
    if (pipe2(from_child, O_CLOEXEC) != 0) {
      close(to_child[0]);
      close(to_child[1]);
      throw ChannelError("pipe: " + std::string(std::strerror(errno)));
    }
    pid_ = fork();
    if (pid_ < 0) throw ChannelError("fork: " + std::string(std::strerror(errno)));
    if (pid_ == 0) {
      setpgid(0, 0);
      dup2(to_child[0], STDIN_FILENO);
      dup2(from_child[1], STDOUT_FILENO);
      execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
      _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    write_fd_ = to_child[1];
    read_fd_ = from_child[0];
  }

  ~ProcessTransport() override {
    close_write();
    if (read_fd_ >= 0) close(read_fd_);
    reap();
  }

  void send(std::span<const std::string> lines) override {
    std::string payload;
    for (const auto& line : lines) {
      payload += line;
      payload += '\n';
    }
    std::size_t written = 0;
    while (written < payload.size()) {
      const int fd = write_fd_.load();
      if (fd < 0) throw ChannelError("backend channel closed");
      const ssize_t n = write(fd, payload.data() + written, payload.size() - written);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw ChannelError("write to backend failed: " + std::string(std::strerror(errno)));
      }
      written += static_cast<std::size_t>(n);
    }
  }

  std::optional<std::string> receive(Clock::time_point deadline) override {
    while (true) {
      const auto newline = buffer_.find('\n');
      if (newline != std::string::npos) {
        std::string line = buffer_.substr(0, newline);
        buffer_.erase(0, newline + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      if (eof_) {
        if (!buffer_.empty()) return std::exchange(buffer_, {});
        throw ChannelError("backend closed its output");
      }
      const auto remaining =
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
      if (remaining <= 0) return std::nullopt;
      pollfd pfd{read_fd_, POLLIN, 0};
      const int ready = poll(&pfd, 1, static_cast<int>(std::min<long long>(remaining, 1'000'000)));
      if (ready < 0) {
        if (errno == EINTR) continue;
        throw ChannelError("poll failed: " + std::string(std::strerror(errno)));
      }
      if (ready == 0) continue;
      char chunk[65536];
      const ssize_t n = read(read_fd_, chunk, sizeof chunk);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw ChannelError("read from backend failed: " + std::string(std::strerror(errno)));
      }
      if (n == 0) {
        eof_ = true;
      } else {
        buffer_.append(chunk, static_cast<std::size_t>(n));
      }
    }
  }

  void abort() override {
    if (pid_ > 0) kill(-pid_, SIGKILL);
  }

  std::string describe() const override { return "process '" + command_ + "'"; }

 private:
  void close_write() {
    const int fd = write_fd_.exchange(-1);
    if (fd >= 0) close(fd);
  }

  void reap() {
    if (pid_ <= 0) return;
    for (int i = 0; i < 100; ++i) {
      if (waitpid(pid_, nullptr, WNOHANG) != 0) return;
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    kill(-pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
  }

  std::string command_;
  pid_t pid_ = -1;
  std::atomic<int> write_fd_{-1};
  int read_fd_ = -1;
  std::string buffer_;
  bool eof_ = false;
};

}  // namespace

std::unique_ptr<Transport> spawn_process(const std::string& command) {
  return std::make_unique<ProcessTransport>(command);
}

ShimClient::ShimClient(std::unique_ptr<Transport> transport, ClientOptions options)
    : transport_(std::move(transport)), options_(options) {}

ShimClient::~ShimClient() = default;

void ShimClient::fail_channel() {
  broken_ = true;
  transport_->abort();
}

const CapabilitySet& ShimClient::handshake() {
  std::lock_guard lock(mutex_);
  if (broken_) throw ChannelError("backend channel is unusable after an earlier failure");
  const std::string hello = serialize(make_hello_request());
  transport_->send(std::span(&hello, 1));

  std::optional<std::string> line;
  try {
    line = transport_->receive(Clock::now() + options_.handshake_timeout);
  } catch (const ChannelError& e) {
    broken_ = true;
    throw ProtocolError(std::string("no hello reply: ") + e.what());
  }
  if (!line) {
    fail_channel();
    throw TimeoutError("handshake timed out with " + transport_->describe());
  }
  ShimMessage reply;
  try {
    reply = parse_message(*line);
  } catch (const ProtocolError&) {
    fail_channel();
    throw;
  }
  if (reply.op != Op::hello) {
    fail_channel();
    throw ProtocolError("expected hello reply", *line);
  }
  if (reply.protocol.value_or("") != kProtocolVersion) {
    fail_channel();
    throw ProtocolError("unsupported protocol version '" + reply.protocol.value_or("") + "'", *line);
  }
  capabilities_.clear();
  for (const auto& name : reply.capabilities.value_or(std::vector<std::string>{})) {
    if (auto c = parse_capability(name)) capabilities_.insert(*c);
  }
  handshaken_ = true;
  return capabilities_;
}

std::vector<Result<ShimMessage>> ShimClient::call(std::span<const ShimMessage> requests) {
  std::lock_guard lock(mutex_);
  if (!handshaken_) throw ProtocolError("call before handshake");
  if (broken_) throw ChannelError("backend channel is unusable after an earlier failure");

  std::unordered_map<std::string, std::size_t> pending;
  std::vector<std::string> lines;
  lines.reserve(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const ShimMessage& r = requests[i];
    if (r.op == Op::hello || r.op == Op::error) throw Error("not a request op: " + std::string(to_string(r.op)));
    if (!supports(capability_for(r.op))) {
      throw CapabilityError("backend does not offer '" + std::string(to_string(r.op)) + "'");
    }
    if (!r.id || r.id->empty()) throw Error("request without id");
    if (!pending.emplace(*r.id, i).second) throw Error("duplicate request id '" + *r.id + "'");
    lines.push_back(serialize(r));
  }

  std::vector<std::optional<Result<ShimMessage>>> slots(requests.size());
  arrival_order_.clear();
  if (requests.empty()) return {};

  std::atomic<bool> writer_done{false};
  std::thread writer([&] {
    try {
      transport_->send(lines);
    } catch (const Error&) {
      // The reader observes the closed channel.
    }
    writer_done = true;
  });
  struct Joiner {
    std::thread& t;
    ~Joiner() { t.join(); }
  } joiner{writer};

  auto settle_remaining = [&](FailureKind kind, const std::string& why) {
    for (auto& [id, index] : pending) {
      slots[index] = Failure{kind, why + " (id '" + id + "')"};
      if (kind == FailureKind::Timeout) abandoned_.insert(id);
    }
    pending.clear();
  };

  const auto deadline = Clock::now() + options_.batch_timeout;
  while (!pending.empty()) {
    std::optional<std::string> line;
    try {
      line = transport_->receive(deadline);
    } catch (const ChannelError& e) {
      broken_ = true;
      settle_remaining(FailureKind::Channel, e.what());
      break;
    }
    if (!line) {
      settle_remaining(FailureKind::Timeout, "no reply within " + std::to_string(options_.batch_timeout.count()) + " ms");
      if (!writer_done) fail_channel();
      break;
    }

    ShimMessage reply;
    try {
      reply = parse_message(*line);
    } catch (const ProtocolError&) {
      fail_channel();
      throw;
    }
    if (!reply.id) {
      fail_channel();
      throw ProtocolError(reply.op == Op::error ? "backend error without id" : "reply without id", *line);
    }
    if (abandoned_.erase(*reply.id) != 0) continue;  // late reply to a timed-out request
    auto it = pending.find(*reply.id);
    if (it == pending.end()) {
      fail_channel();
      throw ProtocolError("reply for unknown or already answered id '" + *reply.id + "'", *line);
    }
    const std::size_t index = it->second;
    const ShimMessage& request = requests[index];
    arrival_order_.push_back(*reply.id);
    pending.erase(it);

    if (reply.op == Op::error) {
      slots[index] = Failure{FailureKind::Backend, reply.message.value_or("backend error")};
      continue;
    }
    const bool payload_ok = reply.op == request.op &&
                            ((reply.op == Op::detox && reply.text) || (reply.op == Op::score && reply.score) ||
                             (reply.op == Op::embed && reply.vector));
    if (!payload_ok) {
      fail_channel();
      throw ProtocolError("reply does not match a '" + std::string(to_string(request.op)) + "' request", *line);
    }
    slots[index] = std::move(reply);
  }

  std::vector<Result<ShimMessage>> out;
  out.reserve(slots.size());
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

std::uint64_t next_request_serial() {
  static std::atomic<std::uint64_t> serial{0};
  return ++serial;
}

std::shared_ptr<ShimClient> connect_shim(std::string_view target, ClientOptions options) {
  std::unique_ptr<Transport> transport;
  if (target.starts_with("http://") || target.starts_with("https://")) {
    transport = http_transport(std::string(target), options.batch_timeout);
  } else {
    transport = spawn_process(std::string(target));
  }
  auto client = std::make_shared<ShimClient>(std::move(transport), options);
  client->handshake();
  return client;
}

}  // namespace detox

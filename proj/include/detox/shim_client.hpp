#pragma once

#include "detox/error.hpp"
#include "detox/shim_protocol.hpp"

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace detox {

using Clock = std::chrono::steady_clock;

// Line transport to a backend. send() runs on a writer thread while the
// caller blocks in receive(); at most one send is in flight per transport.
class Transport {
 public:
  virtual ~Transport() = default;

  virtual void send(std::span<const std::string> lines) = 0;

  // Next line without its terminator; nullopt when the deadline passes.
  // Throws ChannelError once the stream is closed.
  virtual std::optional<std::string> receive(Clock::time_point deadline) = 0;

  // Tears the channel down so a blocked send() returns. Idempotent.
  virtual void abort() = 0;

  virtual std::string describe() const = 0;
};

// Launches `/bin/sh -c command` and speaks over its stdin/stdout.
std::unique_ptr<Transport> spawn_process(const std::string& command);

// POSTs newline-delimited request bodies to an http:// URL; response bodies
// carry newline-delimited replies.
std::unique_ptr<Transport> http_transport(const std::string& url,
                                          std::chrono::milliseconds timeout = std::chrono::seconds(120));

struct ClientOptions {
  std::chrono::milliseconds handshake_timeout{10'000};
  std::chrono::milliseconds batch_timeout{120'000};
};

// Drives one backend channel. Calls are serialized; replies are matched to
// requests strictly by id, so backends may answer in any order.
class ShimClient {
 public:
  explicit ShimClient(std::unique_ptr<Transport> transport, ClientOptions options = {});
  ~ShimClient();
  ShimClient(const ShimClient&) = delete;
  ShimClient& operator=(const ShimClient&) = delete;

  // Sends hello and validates the reply. Throws TimeoutError or ProtocolError.
  const CapabilitySet& handshake();

  bool supports(Capability capability) const { return capabilities_.count(capability) != 0; }
  const CapabilitySet& capabilities() const { return capabilities_; }
  const ClientOptions& options() const { return options_; }
  std::string describe() const { return transport_->describe(); }

  // One result per request, in request order. Requests need unique non-empty
  // ids and an op the backend advertised (CapabilityError otherwise, before
  // anything is sent). Malformed replies, unknown or repeated ids, and op
  // mismatches throw ProtocolError and leave the client unusable; unanswered
  // requests come back as Timeout or Channel failures.
  std::vector<Result<ShimMessage>> call(std::span<const ShimMessage> requests);

  // Reply ids of the most recent call, in arrival order.
  const std::vector<std::string>& last_arrival_order() const { return arrival_order_; }

 private:
  void fail_channel();

  std::unique_ptr<Transport> transport_;
  ClientOptions options_;
  CapabilitySet capabilities_;
  bool handshaken_ = false;
  bool broken_ = false;
  std::unordered_set<std::string> abandoned_;
  std::vector<std::string> arrival_order_;
  std::mutex mutex_;
};

// Process-wide counter for building request ids that never repeat.
std::uint64_t next_request_serial();

// `target` is an http:// URL or a shell command. Performs the handshake.
std::shared_ptr<ShimClient> connect_shim(std::string_view target, ClientOptions options = {});

}  // namespace detox

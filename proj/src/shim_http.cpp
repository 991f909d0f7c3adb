#include "detox/shim_client.hpp"

#include <httplib.h>

#include <condition_variable>
#include <deque>

namespace detox {

namespace {

class HttpTransport final : public Transport {
 public:
  HttpTransport(std::string url, std::chrono::milliseconds timeout) : url_(std::move(url)) {
    if (url_.starts_with("https://")) throw ChannelError("https backends are not supported: " + url_);
    const auto scheme_end = url_.find("://") + 3;
    const auto path_begin = url_.find('/', scheme_end);
    origin_ = url_.substr(0, path_begin);
    path_ = path_begin == std::string::npos ? "/" : url_.substr(path_begin);
    client_ = std::make_unique<httplib::Client>(origin_);
    const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout).count() + 1;
    client_->set_read_timeout(static_cast<time_t>(seconds), 0);
    client_->set_write_timeout(static_cast<time_t>(seconds), 0);
    client_->set_connection_timeout(10, 0);
  }

  void send(std::span<const std::string> lines) override {
    std::string body;
    for (const auto& line : lines) {
      body += line;
      body += '\n';
    }
    auto response = client_->Post(path_, body, "application/x-ndjson");
    std::lock_guard lock(mutex_);
    if (!response) {
      closed_ = "HTTP request to " + url_ + " failed: " + httplib::to_string(response.error());
    } else if (response->status != 200) {
      closed_ = "HTTP " + std::to_string(response->status) + " from " + url_;
    } else {
      std::string_view rest = response->body;
      while (!rest.empty()) {
        auto newline = rest.find('\n');
        std::string_view line = rest.substr(0, newline);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) queue_.emplace_back(line);
        if (newline == std::string_view::npos) break;
        rest.remove_prefix(newline + 1);
      }
    }
    ready_.notify_all();
  }

  std::optional<std::string> receive(Clock::time_point deadline) override {
    std::unique_lock lock(mutex_);
    if (!ready_.wait_until(lock, deadline, [&] { return !queue_.empty() || !closed_.empty(); })) {
      return std::nullopt;
    }
    if (queue_.empty()) throw ChannelError(closed_);
    std::string line = std::move(queue_.front());
    queue_.pop_front();
    return line;
  }

  void abort() override { client_->stop(); }

  std::string describe() const override { return "endpoint " + url_; }

 private:
  std::string url_;
  std::string origin_;
  std::string path_;
  std::unique_ptr<httplib::Client> client_;
  std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<std::string> queue_;
  std::string closed_;
};

}  // namespace

std::unique_ptr<Transport> http_transport(const std::string& url, std::chrono::milliseconds timeout) {
  return std::make_unique<HttpTransport>(url, timeout);
}

}  // namespace detox

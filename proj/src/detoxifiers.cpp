#include "detox/detoxifiers.hpp"

#include "detox/shim_client.hpp"
#include "detox/tagger.hpp"
#include "detox/unicode.hpp"

namespace detox {

std::string build_model_input(std::string_view prompt_template, std::string_view tagged_text) {
  std::string input(prompt_template);
  input += '\n';
  input += tagged_text;
  return input;
}

DetoxResponse detox_duplicate(const DetoxRequest& request) {
  return {request.id, strip_markup(request.tagged_text).clean};
}

std::string delete_marked_regions(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  while (!text.empty()) {
    if (text.starts_with(kOpenTag)) {
      const auto close = text.find(kCloseTag, kOpenTag.size());
      if (close == std::string_view::npos) break;
      text.remove_prefix(close + kCloseTag.size());
    } else if (text.starts_with(kCloseTag)) {
      text.remove_prefix(kCloseTag.size());
    } else {
      out.push_back(text.front());
      text.remove_prefix(1);
    }
  }
  return out;
}

DetoxResponse detox_delete(const DetoxRequest& request) {
  return {request.id, unicode::collapse_whitespace(delete_marked_regions(request.tagged_text))};
}

namespace {

template <typename F>
std::vector<Result<DetoxResponse>> map_requests(std::span<const DetoxRequest> requests, F f) {
  std::vector<Result<DetoxResponse>> out;
  out.reserve(requests.size());
  for (const auto& r : requests) out.emplace_back(f(r));
  return out;
}

}  // namespace

std::vector<Result<DetoxResponse>> DuplicateDetoxifier::detox(std::span<const DetoxRequest> requests) {
  return map_requests(requests, detox_duplicate);
}

std::vector<Result<DetoxResponse>> DeleteDetoxifier::detox(std::span<const DetoxRequest> requests) {
  return map_requests(requests, detox_delete);
}

std::vector<Result<DetoxResponse>> detox_external(std::span<const DetoxRequest> requests, ShimClient& backend) {
  std::vector<ShimMessage> messages;
  messages.reserve(requests.size());
  for (const auto& r : requests) {
    ShimMessage m;
    m.op = Op::detox;
    m.id = r.id;
    m.lang = r.lang;
    m.text = r.tagged_text;
    m.prompt = r.prompt;
    m.pass_index = r.pass_index;
    messages.push_back(std::move(m));
  }
  auto replies = backend.call(messages);
  std::vector<Result<DetoxResponse>> out;
  out.reserve(replies.size());
  for (std::size_t i = 0; i < replies.size(); ++i) {
    if (replies[i].ok()) {
      out.emplace_back(DetoxResponse{requests[i].id, *replies[i].value().text});
    } else {
      out.emplace_back(replies[i].failure());
    }
  }
  return out;
}

std::string ExternalDetoxifier::name() const { return "shim:" + backend_->describe(); }

std::vector<Result<DetoxResponse>> ExternalDetoxifier::detox(std::span<const DetoxRequest> requests) {
  return detox_external(requests, *backend_);
}

}  // namespace detox

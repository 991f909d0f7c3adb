#include "detox/mock_backend.hpp"

#include "detox/detoxifiers.hpp"
#include "detox/error.hpp"
#include "detox/unicode.hpp"

namespace detox {

MockBackend::MockBackend(MockOptions options) : options_(std::move(options)), embedder_(options_.embed_dim) {}

std::vector<std::string> MockBackend::handle(std::string_view line) {
  ShimMessage request;
  try {
    request = parse_message(line);
  } catch (const ProtocolError& e) {
    return {serialize(make_error(std::nullopt, e.what()))};
  }

  if (request.op == Op::hello) {
    if (options_.garbage_hello) return {"HELLO?? not json"};
    return {serialize(make_hello_response(options_.capabilities, options_.protocol))};
  }

  ++requests_seen_;
  if (options_.die_after && requests_seen_ > options_.die_after) return {};
  if (options_.drop_ids.count(*request.id)) return {};
  if (options_.drop_every && requests_seen_ % options_.drop_every == 0) return {};
  if (options_.malformed_reply) return {"{\"op\": \"detox\", \"id\": "};

  ShimMessage reply = reply_to(request);
  if (options_.corrupt_ids && reply.id) *reply.id += "#corrupt";
  return {serialize(reply)};
}

ShimMessage MockBackend::reply_to(const ShimMessage& request) const {
  if (request.op == Op::error) return make_error(request.id, "unexpected error message");
  if (!options_.capabilities.count(capability_for(request.op))) {
    return make_error(request.id, "capability not offered: " + std::string(to_string(request.op)));
  }
  const std::string text = request.text.value_or("");
  ShimMessage reply;
  reply.op = request.op;
  reply.id = request.id;
  switch (request.op) {
    case Op::detox:
      reply.text = options_.detox_mode == MockOptions::DetoxMode::Echo
                       ? text
                       : detox_delete({*request.id, request.lang.value_or(Lang::en), text, "", 1}).text;
      break;
    case Op::score: {
      if (options_.fixed_score) {
        reply.score = *options_.fixed_score;
        break;
      }
      const std::string haystack = unicode::normalize(text);
      bool toxic = false;
      for (const auto& w : options_.toxic_words) toxic = toxic || haystack.find(unicode::normalize(w)) != std::string::npos;
      reply.score = toxic ? 0.95 : 0.05;
      break;
    }
    case Op::embed: {
      auto v = embedder_.embed_text(text).values;
      // Keep empty text off the zero vector so callers can always take a cosine.
      v[0] += 1.0;
      reply.vector = std::move(v);
      break;
    }
    default:
      return make_error(request.id, "unsupported op");
  }
  return reply;
}

}  // namespace detox

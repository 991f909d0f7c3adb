#include "detox/shim_protocol.hpp"

#include "detox/error.hpp"

#include <json.hpp>

#include <cmath>

namespace detox {

namespace {

constexpr std::string_view kOps[] = {"hello", "detox", "score", "embed", "error"};
constexpr std::string_view kCapabilities[] = {"detox", "score", "embed"};

template <typename T>
std::optional<T> field(const nlohmann::json& doc, const char* key, std::string_view line) {
  auto it = doc.find(key);
  if (it == doc.end()) return std::nullopt;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ProtocolError(std::string("field '") + key + "' has the wrong type", std::string(line));
  }
}

}  // namespace

std::string_view to_string(Op op) { return kOps[static_cast<int>(op)]; }

std::optional<Op> parse_op(std::string_view name) {
  for (int i = 0; i < 5; ++i) {
    if (kOps[i] == name) return static_cast<Op>(i);
  }
  return std::nullopt;
}

std::string_view to_string(Capability capability) { return kCapabilities[static_cast<int>(capability)]; }

std::optional<Capability> parse_capability(std::string_view name) {
  for (int i = 0; i < 3; ++i) {
    if (kCapabilities[i] == name) return static_cast<Capability>(i);
  }
  return std::nullopt;
}

Capability capability_for(Op op) {
  switch (op) {
    case Op::detox: return Capability::detox;
    case Op::score: return Capability::score;
    case Op::embed: return Capability::embed;
    default: throw Error("op '" + std::string(to_string(op)) + "' is not a request capability");
  }
}

std::string serialize(const ShimMessage& m) {
  nlohmann::json doc = nlohmann::json::object();
  doc["op"] = to_string(m.op);
  if (m.id) doc["id"] = *m.id;
  if (m.lang) doc["lang"] = to_string(*m.lang);
  if (m.text) doc["text"] = *m.text;
  if (m.prompt) doc["prompt"] = *m.prompt;
  if (m.score) {
    if (!std::isfinite(*m.score)) throw ProtocolError("non-finite score");
    doc["score"] = *m.score;
  }
  if (m.vector) {
    for (double v : *m.vector) {
      if (!std::isfinite(v)) throw ProtocolError("non-finite vector component");
    }
    doc["vector"] = *m.vector;
  }
  if (m.pass_index) doc["pass_index"] = *m.pass_index;
  if (m.protocol) doc["protocol"] = *m.protocol;
  if (m.capabilities) doc["capabilities"] = *m.capabilities;
  if (m.message) doc["message"] = *m.message;
  try {
    return doc.dump();
  } catch (const nlohmann::json::type_error& e) {
    throw ProtocolError(std::string("cannot encode message: ") + e.what());
  }
}

ShimMessage parse_message(std::string_view line) {
  const std::string raw(line);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error&) {
    throw ProtocolError("malformed JSON", raw);
  }
  if (!doc.is_object()) throw ProtocolError("message is not a JSON object", raw);

  ShimMessage m;
  const auto op_name = field<std::string>(doc, "op", line);
  if (!op_name) throw ProtocolError("missing op", raw);
  const auto op = parse_op(*op_name);
  if (!op) throw ProtocolError("unknown op '" + *op_name + "'", raw);
  m.op = *op;
  m.id = field<std::string>(doc, "id", line);
  if (const auto code = field<std::string>(doc, "lang", line)) {
    m.lang = try_parse_lang(*code);
    if (!m.lang) throw ProtocolError("invalid language code '" + *code + "'", raw);
  }
  m.text = field<std::string>(doc, "text", line);
  m.prompt = field<std::string>(doc, "prompt", line);
  if (auto it = doc.find("score"); it != doc.end()) {
    if (!it->is_number()) throw ProtocolError("field 'score' has the wrong type", raw);
    m.score = it->get<double>();
  }
  if (auto it = doc.find("vector"); it != doc.end()) {
    if (!it->is_array()) throw ProtocolError("field 'vector' has the wrong type", raw);
    std::vector<double> values;
    values.reserve(it->size());
    for (const auto& v : *it) {
      if (!v.is_number()) throw ProtocolError("field 'vector' has a non-numeric component", raw);
      values.push_back(v.get<double>());
    }
    m.vector = std::move(values);
  }
  if (auto it = doc.find("pass_index"); it != doc.end()) {
    if (!it->is_number_integer()) throw ProtocolError("field 'pass_index' has the wrong type", raw);
    m.pass_index = it->get<int>();
  }
  m.protocol = field<std::string>(doc, "protocol", line);
  m.capabilities = field<std::vector<std::string>>(doc, "capabilities", line);
  m.message = field<std::string>(doc, "message", line);

  if (m.op != Op::hello && m.op != Op::error && (!m.id || m.id->empty())) {
    throw ProtocolError("missing id", raw);
  }
  return m;
}

ShimMessage make_hello_request() {
  ShimMessage m;
  m.op = Op::hello;
  m.protocol = std::string(kProtocolVersion);
  return m;
}

ShimMessage make_hello_response(const CapabilitySet& capabilities, std::string_view protocol) {
  ShimMessage m;
  m.op = Op::hello;
  m.protocol = std::string(protocol);
  std::vector<std::string> names;
  for (auto c : capabilities) names.emplace_back(to_string(c));
  m.capabilities = std::move(names);
  return m;
}

ShimMessage make_error(std::optional<std::string> id, std::string message) {
  ShimMessage m;
  m.op = Op::error;
  m.id = std::move(id);
  m.message = std::move(message);
  return m;
}

}  // namespace detox

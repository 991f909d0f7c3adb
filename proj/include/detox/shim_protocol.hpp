#pragma once

#include "detox/language.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace detox {

inline constexpr std::string_view kProtocolVersion = "detox-shim/1";

enum class Op { hello, detox, score, embed, error };
enum class Capability { detox, score, embed };
using CapabilitySet = std::set<Capability>;

std::string_view to_string(Op op);
std::optional<Op> parse_op(std::string_view name);
std::string_view to_string(Capability capability);
std::optional<Capability> parse_capability(std::string_view name);
Capability capability_for(Op op);  // detox/score/embed only

// One newline-delimited JSON object on the wire. Absent optionals are omitted.
struct ShimMessage {
  Op op = Op::hello;
  std::optional<std::string> id;
  std::optional<Lang> lang;
  std::optional<std::string> text;
  std::optional<std::string> prompt;  // full model input for detox requests
  std::optional<double> score;
  std::optional<std::vector<double>> vector;
  std::optional<int> pass_index;
  std::optional<std::string> protocol;
  std::optional<std::vector<std::string>> capabilities;
  std::optional<std::string> message;

  bool operator==(const ShimMessage&) const = default;
};

// Compact single-line JSON without a trailing newline. Throws ProtocolError
// for values that cannot be encoded (invalid UTF-8, non-finite numbers).
std::string serialize(const ShimMessage& message);

// Throws ProtocolError carrying the line for anything that is not a valid message.
ShimMessage parse_message(std::string_view line);

ShimMessage make_hello_request();
ShimMessage make_hello_response(const CapabilitySet& capabilities, std::string_view protocol = kProtocolVersion);
ShimMessage make_error(std::optional<std::string> id, std::string message);

}  // namespace detox

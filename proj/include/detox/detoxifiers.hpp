#pragma once

#include "detox/error.hpp"
#include "detox/language.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace detox {

class ShimClient;

inline constexpr std::string_view kDefaultPrompt =
    "Detoxify the following text, paying special attention to <toxic> words.";

// The model input: instruction, a newline, then the marked-up sentence.
std::string build_model_input(std::string_view prompt_template, std::string_view tagged_text);

struct DetoxRequest {
  std::string id;
  Lang lang;
  std::string tagged_text;  // render_markup output
  std::string prompt;       // build_model_input(template, tagged_text)
  int pass_index = 1;
};

struct DetoxResponse {
  std::string id;
  std::string text;
};

// Replicates the input with markup removed.
DetoxResponse detox_duplicate(const DetoxRequest& request);

// Removes every marked region together with its contents, then collapses whitespace.
DetoxResponse detox_delete(const DetoxRequest& request);

// Marked-region removal used by detox_delete. An unclosed <toxic> runs to the
// end of the text; stray closing tags are dropped.
std::string delete_marked_regions(std::string_view tagged_text);

// Responses aligned with requests; transport failures are per-request,
// protocol violations throw (see ShimClient::call).
std::vector<Result<DetoxResponse>> detox_external(std::span<const DetoxRequest> requests, ShimClient& backend);

class Detoxifier {
 public:
  virtual ~Detoxifier() = default;
  virtual std::string name() const = 0;
  virtual std::vector<Result<DetoxResponse>> detox(std::span<const DetoxRequest> requests) = 0;
};

class DuplicateDetoxifier final : public Detoxifier {
 public:
  std::string name() const override { return "duplicate"; }
  std::vector<Result<DetoxResponse>> detox(std::span<const DetoxRequest> requests) override;
};

class DeleteDetoxifier final : public Detoxifier {
 public:
  std::string name() const override { return "delete"; }
  std::vector<Result<DetoxResponse>> detox(std::span<const DetoxRequest> requests) override;
};

class ExternalDetoxifier final : public Detoxifier {
 public:
  explicit ExternalDetoxifier(std::shared_ptr<ShimClient> backend) : backend_(std::move(backend)) {}
  std::string name() const override;
  std::vector<Result<DetoxResponse>> detox(std::span<const DetoxRequest> requests) override;

 private:
  std::shared_ptr<ShimClient> backend_;
};

}  // namespace detox

#pragma once

#include "detox/detoxifiers.hpp"
#include "detox/gate.hpp"
#include "detox/language.hpp"
#include "detox/lexicon.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace detox {

struct PipelineConfig {
  int max_passes = 2;  // one conditional retry
  GateConfig gate;
  std::string prompt_template = std::string(kDefaultPrompt);
  // Send each pass of a batch to the detoxifier and scorer as one call.
  bool batched = true;

  void validate() const;
};

struct PassTrace {
  std::string tagged_input;  // marked-up text sent to the detoxifier
  std::string raw_output;    // detoxifier output before stripping
  ToxicityVerdict verdict;   // gate verdict on the stripped output

  bool operator==(const PassTrace&) const = default;
};

struct DetoxOutcome {
  std::string id;
  Lang lang;
  std::string input;
  std::string final_text;
  int passes_used = 0;
  bool flagged_final = false;
  std::vector<PassTrace> pass_traces;
  // Set on sentinel outcomes; passes_used is left at 0 for them.
  std::optional<std::string> error;

  bool ok() const { return !error; }
  bool operator==(const DetoxOutcome&) const = default;
};

// Borrowed collaborators for a run. The scorer must apply cfg.gate.threshold.
struct PipelineResources {
  const MatcherSet& matchers;
  Detoxifier& detoxifier;
  Scorer& scorer;
};

struct SentenceInput {
  std::string id;
  Lang lang;
  std::string text;
};

// Pass k tags the current text, sends prompt + markup to the detoxifier,
// strips the reply and gates it; a flagged reply becomes the next pass's input
// until max_passes. Throws Error when the sentence cannot be processed.
DetoxOutcome run_sentence(std::string_view input, Lang lang, const PipelineConfig& cfg, PipelineResources& res,
                          std::string id = "1");

// Output order equals input order. Failures become sentinel outcomes so the
// batch stays aligned. Throws Error on duplicate ids.
std::vector<DetoxOutcome> run_batch(std::span<const SentenceInput> inputs, const PipelineConfig& cfg,
                                    PipelineResources& res);

nlohmann::json trace_json(const DetoxOutcome& outcome);

// Columns: id, lang, final, passes_used, flagged_final. Sentinels are written
// with passes_used 0 and flagged_final 1.
std::string format_outcomes(std::span<const DetoxOutcome> outcomes);
std::vector<DetoxOutcome> parse_outcomes(std::string_view content);
std::vector<DetoxOutcome> load_outcomes(const std::filesystem::path& path);

}  // namespace detox

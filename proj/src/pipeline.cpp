#include "detox/pipeline.hpp"

#include "detox/error.hpp"
#include "detox/tagger.hpp"
#include "detox/tsv.hpp"
#include "detox/unicode.hpp"

#include <map>
#include <unordered_set>

namespace detox {

void PipelineConfig::validate() const {
  if (max_passes < 1) throw Error("max_passes must be at least 1");
  gate.validate();
}

namespace {

struct Work {
  DetoxOutcome outcome;
  std::string current;  // text entering the next pass
  bool done = false;
};

void fail(Work& w, std::string message) {
  w.outcome.error = std::move(message);
  w.outcome.final_text.clear();
  w.outcome.passes_used = 0;
  w.outcome.flagged_final = true;
  w.done = true;
}

// Advances every unfinished item by one pass. Items are grouped per language
// for scoring since scorers take a single language per call.
void run_pass(std::vector<Work*>& items, int pass, const PipelineConfig& cfg, PipelineResources& res) {
  std::vector<DetoxRequest> requests;
  std::vector<Work*> sent;
  for (Work* w : items) {
    try {
      const CompiledMatcher& matcher = res.matchers.at(w->outcome.lang);
      const std::string marked = render_markup(tag(w->current, matcher));
      requests.push_back({w->outcome.id, w->outcome.lang, marked, build_model_input(cfg.prompt_template, marked), pass});
      sent.push_back(w);
    } catch (const Error& e) {
      fail(*w, e.what());
    }
  }
  if (sent.empty()) return;

  std::vector<Result<DetoxResponse>> responses;
  try {
    responses = res.detoxifier.detox(requests);
  } catch (const Error& e) {
    for (Work* w : sent) fail(*w, std::string("detoxifier: ") + e.what());
    return;
  }
  if (responses.size() != sent.size()) {
    for (Work* w : sent) fail(*w, "detoxifier returned a different number of responses");
    return;
  }

  std::map<Lang, std::vector<std::size_t>> by_lang;
  std::vector<std::string> stripped(sent.size());
  for (std::size_t i = 0; i < sent.size(); ++i) {
    if (!responses[i].ok()) {
      const auto& f = responses[i].failure();
      fail(*sent[i], std::string("detoxifier ") + to_string(f.kind) + " failure: " + f.message);
      continue;
    }
    sent[i]->outcome.pass_traces.push_back({requests[i].tagged_text, responses[i].value().text, {}});
    stripped[i] = strip_markup(responses[i].value().text).clean;
    by_lang[sent[i]->outcome.lang].push_back(i);
  }

  for (const auto& [lang, indices] : by_lang) {
    std::vector<std::string> texts;
    texts.reserve(indices.size());
    for (auto i : indices) texts.push_back(stripped[i]);
    std::vector<Result<ToxicityVerdict>> verdicts;
    try {
      verdicts = res.scorer.score(texts, lang);
    } catch (const Error& e) {
      for (auto i : indices) fail(*sent[i], std::string("scorer: ") + e.what());
      continue;
    }
    for (std::size_t k = 0; k < indices.size(); ++k) {
      Work& w = *sent[indices[k]];
      if (k >= verdicts.size() || !verdicts[k].ok()) {
        fail(w, k < verdicts.size() ? "scorer: " + verdicts[k].failure().message
                                    : std::string("scorer returned too few verdicts"));
        continue;
      }
      const ToxicityVerdict verdict = verdicts[k].value();
      w.outcome.pass_traces.back().verdict = verdict;
      w.outcome.passes_used = pass;
      w.outcome.final_text = stripped[indices[k]];
      w.outcome.flagged_final = verdict.flagged;
      if (!verdict.flagged || pass == cfg.max_passes) {
        w.done = true;
      } else {
        w.current = stripped[indices[k]];
      }
    }
  }
}

void run_work(std::vector<Work>& work, const PipelineConfig& cfg, PipelineResources& res) {
  for (int pass = 1; pass <= cfg.max_passes; ++pass) {
    std::vector<Work*> active;
    for (auto& w : work) {
      if (!w.done) active.push_back(&w);
    }
    if (active.empty()) break;
    run_pass(active, pass, cfg, res);
  }
}

Work make_work(const SentenceInput& in) {
  Work w;
  w.outcome.id = in.id;
  w.outcome.lang = in.lang;
  w.outcome.input = in.text;
  w.current = in.text;
  if (unicode::collapse_whitespace(in.text).empty()) fail(w, "empty input");
  return w;
}

}  // namespace

DetoxOutcome run_sentence(std::string_view input, Lang lang, const PipelineConfig& cfg, PipelineResources& res,
                          std::string id) {
  cfg.validate();
  std::vector<Work> work;
  work.push_back(make_work({std::move(id), lang, std::string(input)}));
  run_work(work, cfg, res);
  if (work.front().outcome.error) throw Error(*work.front().outcome.error);
  return std::move(work.front().outcome);
}

std::vector<DetoxOutcome> run_batch(std::span<const SentenceInput> inputs, const PipelineConfig& cfg,
                                    PipelineResources& res) {
  cfg.validate();
  std::unordered_set<std::string> ids;
  for (const auto& in : inputs) {
    if (!ids.insert(in.id).second) throw Error("duplicate sentence id '" + in.id + "'");
  }

  std::vector<Work> work;
  work.reserve(inputs.size());
  for (const auto& in : inputs) work.push_back(make_work(in));
  if (cfg.batched) {
    run_work(work, cfg, res);
  } else {
    for (auto& w : work) {
      std::vector<Work> single;
      single.push_back(std::move(w));
      run_work(single, cfg, res);
      w = std::move(single.front());
    }
  }

  std::vector<DetoxOutcome> out;
  out.reserve(work.size());
  for (auto& w : work) out.push_back(std::move(w.outcome));
  return out;
}

nlohmann::json trace_json(const DetoxOutcome& o) {
  nlohmann::json passes = nlohmann::json::array();
  for (const auto& p : o.pass_traces) {
    passes.push_back({{"tagged_input", p.tagged_input},
                      {"raw_output", p.raw_output},
                      {"score", p.verdict.score},
                      {"flagged", p.verdict.flagged}});
  }
  nlohmann::json doc = {{"id", o.id},
                        {"lang", to_string(o.lang)},
                        {"input", o.input},
                        {"final", o.final_text},
                        {"passes_used", o.passes_used},
                        {"flagged_final", o.flagged_final},
                        {"passes", std::move(passes)}};
  if (o.error) doc["error"] = *o.error;
  return doc;
}

std::string format_outcomes(std::span<const DetoxOutcome> outcomes) {
  std::string out = "id\tlang\tfinal\tpasses_used\tflagged_final\n";
  for (const auto& o : outcomes) {
    if (!tsv::is_clean_field(o.id)) throw Error("id contains tab or newline: '" + o.id + "'");
    // Model output may carry control characters; flatten them to keep rows intact.
    std::string final_text = o.final_text;
    for (char& c : final_text) {
      if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    out += o.id + '\t' + std::string(to_string(o.lang)) + '\t' + final_text + '\t' +
           std::to_string(o.passes_used) + '\t' + (o.flagged_final ? "1" : "0") + '\n';
  }
  return out;
}

std::vector<DetoxOutcome> parse_outcomes(std::string_view content) {
  const auto table = tsv::parse_table(content);
  const auto id = table.require_column("id");
  const auto lang = table.require_column("lang");
  const auto final_col = table.require_column("final");
  const auto passes = table.require_column("passes_used");
  const auto flagged = table.require_column("flagged_final");
  std::vector<DetoxOutcome> out;
  out.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto line = table.line_numbers[r];
    DetoxOutcome o;
    o.id = row[id];
    const auto l = try_parse_lang(row[lang]);
    if (!l) throw ParseError("invalid language code '" + row[lang] + "'", line);
    o.lang = *l;
    o.final_text = row[final_col];
    try {
      o.passes_used = std::stoi(row[passes]);
    } catch (const std::exception&) {
      throw ParseError("passes_used is not an integer", line);
    }
    if (row[flagged] != "0" && row[flagged] != "1") throw ParseError("flagged_final must be 0 or 1", line);
    o.flagged_final = row[flagged] == "1";
    if (o.passes_used == 0) o.error = "sentinel outcome";
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<DetoxOutcome> load_outcomes(const std::filesystem::path& path) {
  return parse_outcomes(tsv::read_file(path));
}

}  // namespace detox

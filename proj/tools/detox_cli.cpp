// Command-line front end: tag, detox, evaluate, stats, shim-check.
//
// Exit codes: 0 success, 1 completed with sentinel outcomes or failed
// conformance rules, 2 usage or input errors.

#include "detox/conformance.hpp"
#include "detox/corpus_io.hpp"
#include "detox/detoxifiers.hpp"
#include "detox/embeddings.hpp"
#include "detox/error.hpp"
#include "detox/gate.hpp"
#include "detox/lexicon.hpp"
#include "detox/metrics.hpp"
#include "detox/pipeline.hpp"
#include "detox/shim_client.hpp"
#include "detox/stats.hpp"
#include "detox/tagger.hpp"
#include "detox/tsv.hpp"
#include "detox/unicode.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <string>

using namespace detox;
namespace {

constexpr int kExitSentinels = 1;
constexpr int kExitUsage = 2;

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  return tsv::read_file(path);
}

void write_output(const std::string& path, std::string_view content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    tsv::write_file(path, content);
  }
}

// Clients are shared when the detoxifier and the gate name the same backend.
class ShimPool {
 public:
  std::shared_ptr<ShimClient> get(const std::string& target) {
    auto& slot = clients_[target];
    if (!slot) slot = connect_shim(target);
    return slot;
  }

 private:
  std::map<std::string, std::shared_ptr<ShimClient>> clients_;
};

std::optional<std::string> shim_target(const std::string& spec) {
  if (spec.rfind("shim:", 0) != 0) return std::nullopt;
  auto target = spec.substr(5);
  if (target.empty()) throw Error("'shim:' needs a command or URL");
  return target;
}

std::unique_ptr<Detoxifier> make_detoxifier(const std::string& spec, ShimPool& pool) {
  if (spec == "duplicate") return std::make_unique<DuplicateDetoxifier>();
  if (spec == "delete") return std::make_unique<DeleteDetoxifier>();
  if (auto target = shim_target(spec)) return std::make_unique<ExternalDetoxifier>(pool.get(*target));
  throw Error("unknown detoxifier '" + spec + "' (duplicate, delete or shim:<command|url>)");
}

std::unique_ptr<Scorer> make_scorer(const std::string& spec, double threshold,
                                    std::shared_ptr<const MatcherSet> matchers, ShimPool& pool) {
  GateConfig{threshold}.validate();
  if (spec == "presence") return std::make_unique<LexiconScorer>(matchers, ScorerKind::LexiconPresence, threshold);
  if (spec == "ratio") return std::make_unique<LexiconScorer>(matchers, ScorerKind::LexiconRatio, threshold);
  if (auto target = shim_target(spec)) return std::make_unique<ExternalScorer>(pool.get(*target), threshold);
  throw Error("unknown gate '" + spec + "' (presence, ratio or shim:<command|url>)");
}

std::shared_ptr<const MatcherSet> load_matchers(const std::string& manifest) {
  return std::make_shared<MatcherSet>(MatcherSet::from_manifest(load_manifest(manifest)));
}

// ---- tag -------------------------------------------------------------------

struct TagArgs {
  std::string lang;
  std::string lexicon;
  std::string input;
  std::string output;
};

int run_tag(const TagArgs& a) {
  const Lang lang = parse_lang(a.lang);
  const auto matcher = compile(load_lexicon(a.lexicon, lang));
  const auto content = read_input(a.input);
  unicode::require_utf8(content, "input");
  std::string out;
  for (const auto& line : tsv::split_lines(content)) {
    try {
      out += render_markup(tag(line.text, matcher));
    } catch (const PreTaggedInputError& e) {
      throw ParseError(e.what(), line.number);
    }
    out += '\n';
  }
  write_output(a.output, out);
  return 0;
}

// ---- detox -----------------------------------------------------------------

struct DetoxArgs {
  std::string input;
  std::string lang_col = "lang";
  std::string text_col = "toxic_sentence";
  std::string id_col = "id";
  std::string output;
  std::string trace;
  std::string detoxifier = "delete";
  std::string gate = "presence";
  double threshold = kDefaultThreshold;
  int max_passes = 2;
  std::string lexicons;
  std::string prompt = std::string(kDefaultPrompt);
  bool unbatched = false;
};

std::vector<SentenceInput> read_sentences(const DetoxArgs& a) {
  const auto table = tsv::parse_table(read_input(a.input));
  const auto lang_col = table.require_column(a.lang_col);
  const auto text_col = table.require_column(a.text_col);
  const auto id_col = table.column(a.id_col);
  std::vector<SentenceInput> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto lang = try_parse_lang(row[lang_col]);
    if (!lang) throw ParseError("invalid language code '" + row[lang_col] + "'", table.line_numbers[r]);
    out.push_back({id_col ? row[*id_col] : std::to_string(r + 1), *lang, row[text_col]});
  }
  return out;
}

int run_detox(const DetoxArgs& a) {
  PipelineConfig cfg;
  cfg.max_passes = a.max_passes;
  cfg.gate.threshold = a.threshold;
  cfg.prompt_template = a.prompt;
  cfg.batched = !a.unbatched;
  cfg.validate();

  const auto inputs = read_sentences(a);
  const auto matchers = load_matchers(a.lexicons);
  ShimPool pool;
  auto detoxifier = make_detoxifier(a.detoxifier, pool);
  auto scorer = make_scorer(a.gate, a.threshold, matchers, pool);
  PipelineResources res{*matchers, *detoxifier, *scorer};
  const auto outcomes = run_batch(inputs, cfg, res);

  write_output(a.output, format_outcomes(outcomes));
  if (!a.trace.empty()) {
    std::string lines;
    for (const auto& o : outcomes) lines += trace_json(o).dump() + "\n";
    tsv::write_file(a.trace, lines);
  }
  std::size_t sentinels = 0;
  for (const auto& o : outcomes) {
    if (o.ok()) continue;
    ++sentinels;
    std::cerr << "error: sentence '" << o.id << "': " << *o.error << '\n';
  }
  if (sentinels) {
    std::cerr << sentinels << " of " << outcomes.size() << " sentences failed\n";
    return kExitSentinels;
  }
  return 0;
}

// ---- evaluate --------------------------------------------------------------

struct EvaluateArgs {
  std::string outcomes;
  std::string references;
  std::string embeddings = "ngram";
  std::string report = "tsv";
  std::string gate = "presence";
  double threshold = kDefaultThreshold;
  std::string lexicons;
  std::string fl_file;
  std::string sim_against = "source";
  std::string output;
};

// The neutral column is optional and detected from the header.
std::vector<ParallelPair> read_references(const std::string& path) {
  const auto content = tsv::read_file(path);
  const auto first = tsv::split_lines(content);
  bool has_neutral = false;
  if (!first.empty()) {
    for (auto f : tsv::split_fields(first.front().text)) has_neutral |= f == "neutral_sentence";
  }
  return parse_parallel(content, has_neutral).records;
}

std::unique_ptr<EmbeddingSource> make_embeddings(const std::string& spec, ShimPool& pool) {
  if (spec == "ngram") return std::make_unique<NgramEmbedder>();
  if (spec.rfind("file:", 0) == 0) return std::make_unique<FileEmbeddings>(FileEmbeddings::load(spec.substr(5)));
  if (auto target = shim_target(spec)) return std::make_unique<ShimEmbedder>(pool.get(*target));
  throw Error("unknown embeddings '" + spec + "' (ngram, file:<tsv> or shim:<command|url>)");
}

int run_evaluate(const EvaluateArgs& a) {
  const auto outcomes = load_outcomes(a.outcomes);
  const auto references = read_references(a.references);
  const auto matchers = load_matchers(a.lexicons);
  ShimPool pool;
  auto scorer = make_scorer(a.gate, a.threshold, matchers, pool);
  auto embeddings = make_embeddings(a.embeddings, pool);
  EvalOptions options;
  options.sim_against = a.sim_against == "reference" ? SimAgainst::Reference : SimAgainst::Source;
  if (!a.fl_file.empty()) options.external_fl = parse_external_fl(tsv::read_file(a.fl_file));
  const auto report = evaluate_corpus(outcomes, references, *embeddings, *scorer, options);
  write_output(a.output, a.report == "json" ? report_json(report).dump(2) + "\n" : report_tsv(report));
  return 0;
}

// ---- stats -----------------------------------------------------------------

struct StatsArgs {
  std::string paradetox;
  std::string lexicons;
  std::string labeled;
  std::string format = "tsv";
  std::string output;
};

int run_stats(const StatsArgs& a) {
  if (a.paradetox.empty() && a.lexicons.empty() && a.labeled.empty()) {
    throw Error("stats needs at least one of --paradetox, --lexicons, --labeled");
  }
  std::string text;
  nlohmann::json doc = nlohmann::json::object();
  auto section = [&](const std::string& name, const std::string& table) {
    if (!text.empty()) text += '\n';
    text += "# " + name + "\n" + table;
  };
  if (!a.paradetox.empty()) {
    const auto stats = parallel_stats(read_references(a.paradetox));
    section("lengths", lengths_tsv(stats));
    auto& j = doc["lengths"];
    j = nlohmann::json::object();
    for (const auto& [lang, s] : stats) {
      nlohmann::json entry = {{"pairs", s.pairs}, {"toxic", summary_json(s.toxic)}};
      if (s.neutral) entry["neutral"] = summary_json(*s.neutral);
      j[std::string(to_string(lang))] = entry;
    }
  }
  if (!a.labeled.empty()) {
    const auto counts = label_counts_by_lang(load_labeled(a.labeled));
    section("labels", labels_tsv(counts));
    auto& j = doc["labels"];
    j = nlohmann::json::object();
    for (const auto& [lang, c] : counts) j[std::string(to_string(lang))] = {{"non_toxic", c[0]}, {"toxic", c[1]}};
  }
  if (!a.lexicons.empty()) {
    const auto census = lexicon_census(load_manifest(a.lexicons));
    section("lexicons", census_tsv(census));
    auto& j = doc["lexicons"];
    j = nlohmann::json::object();
    for (const auto& [lang, n] : census) j[std::string(to_string(lang))] = n;
  }
  write_output(a.output, a.format == "json" ? doc.dump(2) + "\n" : text);
  return 0;
}

// ---- shim-check ------------------------------------------------------------

struct ShimCheckArgs {
  std::string target;
  int timeout_ms = 10'000;
};

int run_shim_check(const ShimCheckArgs& a) {
  ClientOptions options;
  options.handshake_timeout = std::chrono::milliseconds(a.timeout_ms);
  options.batch_timeout = std::chrono::milliseconds(a.timeout_ms);
  std::shared_ptr<ShimClient> client;
  try {
    client = connect_shim(a.target, options);
  } catch (const Error& e) {
    std::cout << "FAIL  handshake  " << e.what() << '\n';
    return kExitSentinels;
  }
  const auto report = conformance_check(*client);
  std::cout << report.to_text();
  return report.passed() ? 0 : kExitSentinels;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexicon-guided multilingual text detoxification"};
  app.require_subcommand(1);

  TagArgs tag_args;
  auto* tag_cmd = app.add_subcommand("tag", "Mark lexicon terms in sentences read one per line");
  tag_cmd->add_option("--lang", tag_args.lang, "Language code")->required();
  tag_cmd->add_option("--lexicon", tag_args.lexicon, "Lexicon file, one term per line")->required();
  tag_cmd->add_option("--input", tag_args.input, "Input file (default stdin)");
  tag_cmd->add_option("--output", tag_args.output, "Output file (default stdout)");

  DetoxArgs detox_args;
  auto* detox_cmd = app.add_subcommand("detox", "Run the tag/rewrite/gate loop over a TSV of sentences");
  detox_cmd->add_option("--input", detox_args.input, "Input TSV with a header row")->required();
  detox_cmd->add_option("--lexicons", detox_args.lexicons, "Lexicon manifest (JSON)")->required();
  detox_cmd->add_option("--lang-col", detox_args.lang_col, "Language column")->capture_default_str();
  detox_cmd->add_option("--text-col", detox_args.text_col, "Text column")->capture_default_str();
  detox_cmd->add_option("--id-col", detox_args.id_col, "Id column, row number when absent")->capture_default_str();
  detox_cmd->add_option("--output", detox_args.output, "Outcome TSV (default stdout)");
  detox_cmd->add_option("--trace", detox_args.trace, "Per-sentence pass traces as JSON lines");
  detox_cmd->add_option("--detoxifier", detox_args.detoxifier, "duplicate | delete | shim:<command|url>")
      ->capture_default_str();
  detox_cmd->add_option("--gate", detox_args.gate, "presence | ratio | shim:<command|url>")->capture_default_str();
  detox_cmd->add_option("--threshold", detox_args.threshold, "Flag when score > threshold")->capture_default_str();
  detox_cmd->add_option("--max-passes", detox_args.max_passes, "Passes per sentence")->capture_default_str();
  detox_cmd->add_option("--prompt", detox_args.prompt, "Instruction placed before the marked-up text");
  detox_cmd->add_flag("--unbatched", detox_args.unbatched, "Send one sentence per backend call");

  EvaluateArgs eval_args;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score outcomes: STA, SIM, FL and J per language");
  eval_cmd->add_option("--outcomes", eval_args.outcomes, "Outcome TSV written by detox")->required();
  eval_cmd->add_option("--references", eval_args.references, "Parallel TSV with the source sentences")->required();
  eval_cmd->add_option("--lexicons", eval_args.lexicons, "Lexicon manifest (JSON)")->required();
  eval_cmd->add_option("--embeddings", eval_args.embeddings, "ngram | file:<tsv> | shim:<command|url>")
      ->capture_default_str();
  eval_cmd->add_option("--report", eval_args.report, "tsv | json")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  eval_cmd->add_option("--gate", eval_args.gate, "presence | ratio | shim:<command|url>")->capture_default_str();
  eval_cmd->add_option("--threshold", eval_args.threshold, "Flag when score > threshold")->capture_default_str();
  eval_cmd->add_option("--fl-file", eval_args.fl_file, "External fluency TSV (id, fl) replacing ChrF");
  eval_cmd->add_option("--sim-against", eval_args.sim_against, "source | reference")
      ->check(CLI::IsMember({"source", "reference"}))
      ->capture_default_str();
  eval_cmd->add_option("--output", eval_args.output, "Report file (default stdout)");

  StatsArgs stats_args;
  auto* stats_cmd = app.add_subcommand("stats", "Dataset statistics: lengths, label counts, lexicon sizes");
  stats_cmd->add_option("--paradetox", stats_args.paradetox, "Parallel TSV");
  stats_cmd->add_option("--lexicons", stats_args.lexicons, "Lexicon manifest (JSON)");
  stats_cmd->add_option("--labeled", stats_args.labeled, "Labeled TSV (lang, text, label)");
  stats_cmd->add_option("--format", stats_args.format, "tsv | json")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  stats_cmd->add_option("--output", stats_args.output, "Output file (default stdout)");

  ShimCheckArgs check_args;
  auto* check_cmd = app.add_subcommand("shim-check", "Run the conformance battery against a backend");
  check_cmd->add_option("target", check_args.target, "Shell command or http:// URL")->required();
  check_cmd->add_option("--timeout-ms", check_args.timeout_ms, "Handshake and per-call timeout")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*tag_cmd) return run_tag(tag_args);
    if (*detox_cmd) return run_detox(detox_args);
    if (*eval_cmd) return run_evaluate(eval_args);
    if (*stats_cmd) return run_stats(stats_args);
    if (*check_cmd) return run_shim_check(check_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

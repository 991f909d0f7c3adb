#pragma once

#include "detox/corpus_io.hpp"
#include "detox/embeddings.hpp"
#include "detox/gate.hpp"
#include "detox/language.hpp"
#include "detox/pipeline.hpp"

#include <json.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace detox {

inline constexpr int kChrfOrder = 6;
inline constexpr double kChrfBeta = 2.0;

// Character n-gram F-score over whitespace-free strings. Precision and recall
// average m/h and m/r over the orders whose denominator is non-zero (a side
// with no such order scores 0); the F-beta of the two is 0 when both are 0.
double chrf(std::string_view hypothesis, std::string_view reference, int max_order = kChrfOrder,
            double beta = kChrfBeta);

// Cosine similarity clamped to [0, 1]. Throws on dimension mismatch or a zero vector.
double sim(const EmbeddingVector& a, const EmbeddingVector& b);

struct StaResult {
  std::vector<int> per_sample;  // 1 = judged non-toxic
  double mean;
};

StaResult sta(std::span<const ToxicityVerdict> verdicts);

struct JointInput {
  double sta, sim, fl;
};

struct JointResult {
  std::vector<double> per_sample;
  double mean;
};

// Per-sample product sta*sim*fl and its mean. Throws when a component leaves [0, 1].
JointResult joint(std::span<const JointInput> records);

struct EvalRecord {
  std::string id;
  Lang lang;
  int sta;
  double sim;
  std::optional<double> fl;
  std::optional<double> j;  // present exactly when fl is
};

struct Aggregate {
  std::size_t count = 0;
  double sta = 0;
  double sim = 0;
  std::size_t fl_count = 0;
  std::optional<double> fl;
  std::optional<double> j;  // mean of per-record j, not a product of means
};

enum class FlSource { Chrf, External };
enum class SimAgainst { Source, Reference };

std::string_view to_string(FlSource source);

struct EvalReport {
  std::map<Lang, Aggregate> per_language;
  Aggregate overall;
  std::vector<EvalRecord> records;
  FlSource fl_source = FlSource::Chrf;
  SimAgainst sim_against = SimAgainst::Source;
};

struct EvalOptions {
  SimAgainst sim_against = SimAgainst::Source;
  // Externally computed fluency per id; replaces ChrF when set.
  std::optional<std::map<std::string, double>> external_fl;
};

// Scores every outcome against its reference (matched by id): STA from the
// scorer on the final text, SIM between the source (or neutral reference) and
// the final text, FL as ChrF against the neutral reference when there is one.
// An empty side counts as SIM 0 without consulting the embedder.
EvalReport evaluate_corpus(std::span<const DetoxOutcome> outcomes, std::span<const ParallelPair> references,
                           EmbeddingSource& embeddings, Scorer& scorer, const EvalOptions& options = {});

Aggregate aggregate(std::span<const EvalRecord> records);

// Columns: lang, count, sta, sim, fl, j; the last row is lang "all".
std::string report_tsv(const EvalReport& report);
nlohmann::json report_json(const EvalReport& report);

// TSV with header id<TAB>fl.
std::map<std::string, double> parse_external_fl(std::string_view content);

}  // namespace detox

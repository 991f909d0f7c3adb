#include "detox/metrics.hpp"

#include "detox/error.hpp"
#include "detox/tsv.hpp"
#include "detox/unicode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace detox {

namespace {

using NgramCounts = std::unordered_map<std::u32string_view, int>;

NgramCounts count_ngrams(const std::u32string& s, std::size_t n) {
  NgramCounts counts;
  if (s.size() < n) return counts;
  counts.reserve(s.size() - n + 1);
  const std::u32string_view view(s);
  for (std::size_t i = 0; i + n <= s.size(); ++i) ++counts[view.substr(i, n)];
  return counts;
}

std::u32string chars_without_space(std::string_view text) {
  const auto cps = unicode::decode(unicode::remove_whitespace(text));
  return std::u32string(cps.begin(), cps.end());
}

}  // namespace

double chrf(std::string_view hypothesis, std::string_view reference, int max_order, double beta) {
  if (max_order < 1) throw Error("chrf: max_order must be at least 1");
  if (!(beta > 0)) throw Error("chrf: beta must be positive");
  const std::u32string hyp = chars_without_space(hypothesis);
  const std::u32string ref = chars_without_space(reference);

  double precision_sum = 0;
  double recall_sum = 0;
  int precision_orders = 0;
  int recall_orders = 0;
  for (int order = 1; order <= max_order; ++order) {
    const auto n = static_cast<std::size_t>(order);
    const std::size_t hyp_total = hyp.size() >= n ? hyp.size() - n + 1 : 0;
    const std::size_t ref_total = ref.size() >= n ? ref.size() - n + 1 : 0;
    if (hyp_total == 0 && ref_total == 0) continue;
    std::size_t matches = 0;
    if (hyp_total > 0 && ref_total > 0) {
      const auto hyp_counts = count_ngrams(hyp, n);
      const auto ref_counts = count_ngrams(ref, n);
      for (const auto& [gram, count] : hyp_counts) {
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) matches += static_cast<std::size_t>(std::min(count, it->second));
      }
    }
    if (hyp_total > 0) {
      precision_sum += static_cast<double>(matches) / static_cast<double>(hyp_total);
      ++precision_orders;
    }
    if (ref_total > 0) {
      recall_sum += static_cast<double>(matches) / static_cast<double>(ref_total);
      ++recall_orders;
    }
  }
  const double p = precision_orders ? precision_sum / precision_orders : 0.0;
  const double r = recall_orders ? recall_sum / recall_orders : 0.0;
  if (p + r == 0.0) return 0.0;
  const double b2 = beta * beta;
  return (1 + b2) * p * r / (b2 * p + r);
}

double sim(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    throw Error("sim: dimension mismatch (" + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += a.values[i] * b.values[i];
    na += a.values[i] * a.values[i];
    nb += b.values[i] * b.values[i];
  }
  if (na == 0.0 || nb == 0.0) throw Error("sim: zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

StaResult sta(std::span<const ToxicityVerdict> verdicts) {
  if (verdicts.empty()) throw Error("sta: no verdicts");
  StaResult out;
  out.per_sample.reserve(verdicts.size());
  std::size_t clean = 0;
  for (const auto& v : verdicts) {
    out.per_sample.push_back(v.flagged ? 0 : 1);
    clean += v.flagged ? 0 : 1;
  }
  out.mean = static_cast<double>(clean) / static_cast<double>(verdicts.size());
  return out;
}

JointResult joint(std::span<const JointInput> records) {
  if (records.empty()) throw Error("joint: no records");
  JointResult out;
  out.per_sample.reserve(records.size());
  double sum = 0;
  for (const auto& r : records) {
    for (double c : {r.sta, r.sim, r.fl}) {
      if (!(c >= 0.0 && c <= 1.0)) throw Error("joint: component " + std::to_string(c) + " outside [0, 1]");
    }
    const double j = r.sta * r.sim * r.fl;
    out.per_sample.push_back(j);
    sum += j;
  }
  out.mean = sum / static_cast<double>(records.size());
  return out;
}

std::string_view to_string(FlSource source) { return source == FlSource::Chrf ? "chrf" : "external"; }

Aggregate aggregate(std::span<const EvalRecord> records) {
  Aggregate a;
  double fl_sum = 0, j_sum = 0;
  for (const auto& r : records) {
    ++a.count;
    a.sta += r.sta;
    a.sim += r.sim;
    if (r.fl) {
      ++a.fl_count;
      fl_sum += *r.fl;
      j_sum += *r.j;
    }
  }
  if (a.count) {
    a.sta /= static_cast<double>(a.count);
    a.sim /= static_cast<double>(a.count);
  }
  if (a.fl_count) {
    a.fl = fl_sum / static_cast<double>(a.fl_count);
    a.j = j_sum / static_cast<double>(a.fl_count);
  }
  return a;
}

EvalReport evaluate_corpus(std::span<const DetoxOutcome> outcomes, std::span<const ParallelPair> references,
                           EmbeddingSource& embeddings, Scorer& scorer, const EvalOptions& options) {
  if (outcomes.empty()) throw Error("evaluate: no outcomes");

  std::unordered_map<std::string_view, const ParallelPair*> by_id;
  for (const auto& ref : references) by_id.emplace(ref.id, &ref);
  std::vector<std::string> unmatched;
  std::vector<std::string> sentinels;
  std::unordered_set<std::string_view> seen;
  for (const auto& o : outcomes) {
    if (!by_id.count(o.id)) unmatched.push_back(o.id);
    if (!o.ok()) sentinels.push_back(o.id);
    if (!seen.insert(o.id).second) throw Error("evaluate: duplicate outcome id '" + o.id + "'");
  }
  for (const auto& ref : references) {
    if (!seen.count(ref.id)) unmatched.push_back(ref.id);
  }
  auto joined = [](const std::vector<std::string>& ids) {
    std::string s;
    for (const auto& id : ids) s += (s.empty() ? "" : ", ") + id;
    return s;
  };
  if (!unmatched.empty()) throw Error("evaluate: unmatched ids: " + joined(unmatched));
  if (!sentinels.empty()) throw Error("evaluate: errored outcomes cannot be scored: " + joined(sentinels));

  EvalReport report;
  report.sim_against = options.sim_against;
  report.fl_source = options.external_fl ? FlSource::External : FlSource::Chrf;
  report.records.resize(outcomes.size());

  std::map<Lang, std::vector<std::size_t>> by_lang;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    const ParallelPair& ref = *by_id.at(o.id);
    if (ref.lang != o.lang) throw Error("evaluate: language mismatch for id '" + o.id + "'");
    report.records[i].id = o.id;
    report.records[i].lang = o.lang;
    by_lang[o.lang].push_back(i);
  }

  // STA
  for (const auto& [lang, indices] : by_lang) {
    std::vector<std::string> texts;
    for (auto i : indices) texts.push_back(outcomes[i].final_text);
    const auto results = scorer.score(texts, lang);
    if (results.size() != indices.size()) throw Error("evaluate: scorer returned the wrong number of verdicts");
    std::vector<ToxicityVerdict> verdicts;
    for (std::size_t k = 0; k < results.size(); ++k) {
      if (!results[k].ok()) {
        throw Error("evaluate: scoring '" + outcomes[indices[k]].id + "' failed: " + results[k].failure().message);
      }
      verdicts.push_back(results[k].value());
    }
    const auto s = sta(verdicts);
    for (std::size_t k = 0; k < indices.size(); ++k) report.records[indices[k]].sta = s.per_sample[k];
  }

  // SIM
  std::vector<EmbedQuery> queries;
  std::vector<std::size_t> query_owner;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    const ParallelPair& ref = *by_id.at(o.id);
    std::string anchor = ref.toxic;
    EmbedRole anchor_role = EmbedRole::Source;
    if (options.sim_against == SimAgainst::Reference) {
      if (!ref.neutral) throw Error("evaluate: SIM against reference needs a neutral sentence for '" + o.id + "'");
      anchor = *ref.neutral;
      anchor_role = EmbedRole::Reference;
    }
    report.records[i].sim = 0.0;
    if (unicode::collapse_whitespace(anchor).empty() || unicode::collapse_whitespace(o.final_text).empty()) continue;
    queries.push_back({o.id, anchor_role, o.lang, std::move(anchor)});
    queries.push_back({o.id, EmbedRole::Output, o.lang, o.final_text});
    query_owner.push_back(i);
  }
  if (!queries.empty()) {
    const auto vectors = embeddings.embed(queries);
    if (vectors.size() != queries.size()) throw Error("evaluate: embedder returned the wrong number of vectors");
    for (std::size_t k = 0; k < query_owner.size(); ++k) {
      try {
        report.records[query_owner[k]].sim = sim(vectors[2 * k], vectors[2 * k + 1]);
      } catch (const Error& e) {
        throw Error("evaluate: id '" + report.records[query_owner[k]].id + "': " + e.what());
      }
    }
  }

  // FL and J
  std::vector<JointInput> joint_inputs;
  std::vector<std::size_t> joint_owner;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    auto& record = report.records[i];
    const ParallelPair& ref = *by_id.at(record.id);
    if (options.external_fl) {
      auto it = options.external_fl->find(record.id);
      if (it == options.external_fl->end()) throw Error("evaluate: no external FL for id '" + record.id + "'");
      record.fl = it->second;
    } else if (ref.neutral) {
      record.fl = chrf(outcomes[i].final_text, *ref.neutral);
    }
    if (record.fl) {
      joint_inputs.push_back({static_cast<double>(record.sta), record.sim, *record.fl});
      joint_owner.push_back(i);
    }
  }
  if (!joint_inputs.empty()) {
    const auto j = joint(joint_inputs);
    for (std::size_t k = 0; k < joint_owner.size(); ++k) report.records[joint_owner[k]].j = j.per_sample[k];
  }

  for (const auto& [lang, indices] : by_lang) {
    std::vector<EvalRecord> subset;
    for (auto i : indices) subset.push_back(report.records[i]);
    report.per_language[lang] = aggregate(subset);
  }
  report.overall = aggregate(report.records);
  return report;
}

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string number(const std::optional<double>& v) { return v ? number(*v) : "NA"; }

void append_row(std::string& out, std::string_view lang, const Aggregate& a) {
  out += std::string(lang) + '\t' + std::to_string(a.count) + '\t' + number(a.sta) + '\t' + number(a.sim) + '\t' +
         number(a.fl) + '\t' + number(a.j) + '\n';
}

nlohmann::json aggregate_json(const Aggregate& a) {
  nlohmann::json doc = {{"count", a.count}, {"sta", a.sta}, {"sim", a.sim}, {"fl_count", a.fl_count}};
  doc["fl"] = a.fl ? nlohmann::json(*a.fl) : nlohmann::json(nullptr);
  doc["j"] = a.j ? nlohmann::json(*a.j) : nlohmann::json(nullptr);
  return doc;
}

}  // namespace

std::string report_tsv(const EvalReport& report) {
  std::string out = "lang\tcount\tsta\tsim\tfl\tj\n";
  for (const auto& [lang, a] : report.per_language) append_row(out, to_string(lang), a);
  append_row(out, "all", report.overall);
  return out;
}

nlohmann::json report_json(const EvalReport& report) {
  nlohmann::json per_language = nlohmann::json::object();
  for (const auto& [lang, a] : report.per_language) per_language[std::string(to_string(lang))] = aggregate_json(a);
  return {{"fl_source", to_string(report.fl_source)},
          {"sim_against", report.sim_against == SimAgainst::Source ? "source" : "reference"},
          {"overall", aggregate_json(report.overall)},
          {"per_language", std::move(per_language)}};
}

std::map<std::string, double> parse_external_fl(std::string_view content) {
  const auto table = tsv::parse_table(content);
  const auto id = table.require_column("id");
  const auto fl = table.require_column("fl");
  std::map<std::string, double> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    double value;
    try {
      std::size_t used = 0;
      value = std::stod(table.rows[r][fl], &used);
      if (used != table.rows[r][fl].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("fl is not a number", table.line_numbers[r]);
    }
    if (!(value >= 0.0 && value <= 1.0)) throw ParseError("fl outside [0, 1]", table.line_numbers[r]);
    out[table.rows[r][id]] = value;
  }
  return out;
}

}  // namespace detox

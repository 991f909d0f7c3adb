#include "detox/conformance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace detox {

std::size_t ConformanceReport::failures() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.status == ConformanceEntry::Status::Fail ? 1 : 0;
  return n;
}

const ConformanceEntry* ConformanceReport::find(const std::string& rule) const {
  for (const auto& e : entries) {
    if (e.rule == rule) return &e;
  }
  return nullptr;
}

std::string ConformanceReport::to_text() const {
  std::string out;
  for (const auto& e : entries) {
    const char* status = e.status == ConformanceEntry::Status::Pass   ? "PASS"
                         : e.status == ConformanceEntry::Status::Fail ? "FAIL"
                                                                      : "SKIP";
    out += std::string(status) + "  " + e.rule;
    if (!e.detail.empty()) out += "  (" + e.detail + ")";
    out += '\n';
  }
  return out;
}

namespace {

struct Probe {
  std::string id;
  Lang lang;
  std::string text;
  std::string group;  // the rule this probe feeds
};

std::vector<Probe> battery(std::string_view op) {
  const std::string p = "conf-" + std::string(op) + "-";
  std::string long_text;
  while (long_text.size() < 10'240) long_text += "this sentence is padding for the long input probe. ";
  return {
      {p + "empty", Lang::en, "", "empty text"},
      {p + "long", Lang::en, long_text, "long text (10 kB)"},
      {p + "ru", Lang::ru, "ты просто идиот", "non-Latin scripts"},
      {p + "zh", Lang::zh, "你这个笨蛋", "non-Latin scripts"},
      {p + "am", Lang::am, "አንተ ደደብ ነህ", "non-Latin scripts"},
      {p + "ar", Lang::ar, "أنت غبي جدا", "non-Latin scripts"},
      {p + "hi", Lang::hi, "तुम मूर्ख हो", "non-Latin scripts"},
      {p + "markup", Lang::en, "you are an <toxic>idiot</toxic>", "non-Latin scripts"},
      {p + "id with spaces", Lang::en, "hello there", "id echo"},
      {p + "ïd-ünicode-标识", Lang::en, "hello there", "id echo"},
      {p + "quote\"back\\slash", Lang::en, "hello there", "id echo"},
      {p + "tab\tnewline\n", Lang::en, "hello there", "id echo"},
  };
}

using Status = ConformanceEntry::Status;

void check_capability(ShimClient& client, Op op, ConformanceReport& report) {
  const std::string prefix = std::string(to_string(op)) + ": ";
  const auto probes = battery(to_string(op));
  std::vector<std::string> groups;
  for (const auto& probe : probes) {
    if (std::find(groups.begin(), groups.end(), probe.group) == groups.end()) groups.push_back(probe.group);
  }
  std::vector<std::string> extra = {"ordering tolerated, ids matched"};
  if (op == Op::score) extra.push_back("score range");
  if (op == Op::embed) extra.push_back("embedding shape");

  if (!client.supports(capability_for(op))) {
    for (const auto& g : groups) report.entries.push_back({prefix + g, Status::Skipped, "capability not advertised"});
    for (const auto& g : extra) report.entries.push_back({prefix + g, Status::Skipped, "capability not advertised"});
    return;
  }

  std::vector<ShimMessage> requests;
  for (const auto& probe : probes) {
    ShimMessage m;
    m.op = op;
    m.id = probe.id;
    m.lang = probe.lang;
    m.text = probe.text;
    if (op == Op::detox) {
      m.prompt = "Detoxify the following text, paying special attention to <toxic> words.\n" + probe.text;
      m.pass_index = 1;
    }
    requests.push_back(std::move(m));
  }

  std::vector<Result<ShimMessage>> replies;
  try {
    replies = client.call(requests);
  } catch (const std::exception& e) {
    for (const auto& g : groups) report.entries.push_back({prefix + g, Status::Fail, e.what()});
    for (const auto& g : extra) report.entries.push_back({prefix + g, Status::Fail, e.what()});
    return;
  }

  std::map<std::string, std::string> group_errors;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (!replies[i].ok()) {
      auto& err = group_errors[probes[i].group];
      if (err.empty()) err = std::string(to_string(replies[i].failure().kind)) + ": " + replies[i].failure().message;
    }
  }
  for (const auto& g : groups) {
    auto it = group_errors.find(g);
    report.entries.push_back(
        {prefix + g, it == group_errors.end() ? Status::Pass : Status::Fail, it == group_errors.end() ? "" : it->second});
  }

  const auto& arrival = client.last_arrival_order();
  const std::set<std::string> unique(arrival.begin(), arrival.end());
  std::vector<std::string> expected;
  for (const auto& probe : probes) {
    if (unique.count(probe.id)) expected.push_back(probe.id);
  }
  const bool in_order = expected == arrival;
  if (group_errors.empty() && unique.size() == probes.size() && arrival.size() == probes.size()) {
    report.entries.push_back({prefix + "ordering tolerated, ids matched", Status::Pass,
                              in_order ? "replies arrived in request order" : "replies arrived out of order"});
  } else {
    report.entries.push_back({prefix + "ordering tolerated, ids matched", Status::Fail,
                              std::to_string(arrival.size()) + " of " + std::to_string(probes.size()) +
                                  " requests answered"});
  }

  if (op == Op::score) {
    std::string bad;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      if (!replies[i].ok()) continue;
      double s = *replies[i].value().score;
      if (!(s >= 0.0 && s <= 1.0)) bad = "score " + std::to_string(s) + " for '" + probes[i].id + "'";
    }
    report.entries.push_back({prefix + "score range", bad.empty() ? Status::Pass : Status::Fail, bad});
  }
  if (op == Op::embed) {
    std::string bad;
    std::size_t dim = 0;
    for (std::size_t i = 0; i < probes.size() && bad.empty(); ++i) {
      if (!replies[i].ok()) continue;
      const auto& v = *replies[i].value().vector;
      if (v.empty()) bad = "empty vector for '" + probes[i].id + "'";
      if (dim == 0) dim = v.size();
      if (v.size() != dim) bad = "inconsistent dimension for '" + probes[i].id + "'";
      double norm = 0;
      for (double x : v) norm += x * x;
      if (bad.empty() && !probes[i].text.empty() && norm == 0.0) bad = "zero vector for '" + probes[i].id + "'";
    }
    report.entries.push_back({prefix + "embedding shape", bad.empty() ? Status::Pass : Status::Fail,
                              bad.empty() ? "dim " + std::to_string(dim) : bad});
  }
}

}  // namespace

ConformanceReport conformance_check(ShimClient& client) {
  ConformanceReport report;
  std::string caps;
  for (auto c : client.capabilities()) caps += (caps.empty() ? "" : ",") + std::string(to_string(c));
  report.entries.push_back({"handshake", Status::Pass, std::string(kProtocolVersion) + " [" + caps + "]"});
  report.entries.push_back({"capabilities advertised", client.capabilities().empty() ? Status::Fail : Status::Pass,
                            caps});
  for (Op op : {Op::detox, Op::score, Op::embed}) check_capability(client, op, report);
  return report;
}

}  // namespace detox

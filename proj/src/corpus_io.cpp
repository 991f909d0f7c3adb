#include "detox/corpus_io.hpp"

#include "detox/error.hpp"
#include "detox/tsv.hpp"
#include "detox/unicode.hpp"

#include <unordered_set>

namespace detox {

namespace {

bool blank(std::string_view s) { return unicode::collapse_whitespace(s).empty(); }

// Runs `parse_row` over every data row, applying the error mode. The header
// row is validated by `check_header`, which returns whether an id column leads.
template <typename T, typename HeaderFn, typename RowFn>
Loaded<T> parse_rows(std::string_view content, ErrorMode mode, HeaderFn check_header, RowFn parse_row) {
  const auto lines = tsv::split_lines(content);
  if (lines.empty()) throw ParseError("missing header row", 1);
  if (!unicode::is_valid_utf8(lines.front().text)) throw DecodeError("line 1: invalid UTF-8");
  const auto header = tsv::split_fields(lines.front().text);
  const bool has_id = check_header(header);

  Loaded<T> out;
  out.data_rows = lines.size() - 1;
  out.records.reserve(out.data_rows);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    try {
      if (!unicode::is_valid_utf8(line.text)) {
        throw DecodeError("line " + std::to_string(line.number) + ": invalid UTF-8");
      }
      auto fields = tsv::split_fields(line.text);
      if (fields.size() != header.size()) {
        throw ParseError("expected " + std::to_string(header.size()) + " columns, found " +
                             std::to_string(fields.size()),
                         line.number);
      }
      out.records.push_back(parse_row(fields, has_id, i, line.number));
    } catch (const Error& e) {
      if (mode == ErrorMode::Strict) throw;
      out.errors.push_back({line.number, e.what()});
    }
  }
  return out;
}

Lang row_lang(std::string_view code, std::size_t line) {
  auto lang = try_parse_lang(code);
  if (!lang) throw ParseError("invalid language code '" + std::string(code) + "'", line);
  return *lang;
}

}  // namespace

Loaded<ParallelPair> parse_parallel(std::string_view content, bool has_neutral, ErrorMode mode) {
  std::unordered_set<std::string> seen_ids;
  auto check_header = [&](const std::vector<std::string_view>& header) {
    std::vector<std::string_view> expected = {"lang", "toxic_sentence"};
    if (has_neutral) expected.push_back("neutral_sentence");
    const bool has_id = !header.empty() && header.front() == "id";
    std::vector<std::string_view> rest(header.begin() + (has_id ? 1 : 0), header.end());
    if (rest != expected) {
      throw ParseError(std::string("unexpected header; want [id<TAB>]lang<TAB>toxic_sentence") +
                           (has_neutral ? "<TAB>neutral_sentence" : ""),
                       1);
    }
    return has_id;
  };
  auto parse_row = [&](const std::vector<std::string_view>& f, bool has_id, std::size_t row,
                       std::size_t line) {
    const std::size_t base = has_id ? 1 : 0;
    ParallelPair pair;
    pair.id = has_id ? std::string(f[0]) : std::to_string(row);
    if (pair.id.empty()) throw ParseError("empty id", line);
    pair.lang = row_lang(f[base], line);
    if (blank(f[base + 1])) throw ParseError("empty toxic sentence", line);
    pair.toxic = std::string(f[base + 1]);
    if (has_neutral) {
      if (blank(f[base + 2])) throw ParseError("empty neutral sentence", line);
      pair.neutral = std::string(f[base + 2]);
    }
    if (!seen_ids.insert(pair.id).second) throw ParseError("duplicate id '" + pair.id + "'", line);
    return pair;
  };
  return parse_rows<ParallelPair>(content, mode, check_header, parse_row);
}

std::vector<ParallelPair> load_parallel(const std::filesystem::path& path, bool has_neutral) {
  return parse_parallel(tsv::read_file(path), has_neutral, ErrorMode::Strict).records;
}

Loaded<ParallelPair> load_parallel(const std::filesystem::path& path, bool has_neutral, ErrorMode mode) {
  return parse_parallel(tsv::read_file(path), has_neutral, mode);
}

Loaded<LabeledSentence> parse_labeled(std::string_view content, ErrorMode mode) {
  auto check_header = [](const std::vector<std::string_view>& header) {
    if (header != std::vector<std::string_view>{"lang", "text", "label"}) {
      throw ParseError("unexpected header; want lang<TAB>text<TAB>label", 1);
    }
    return false;
  };
  auto parse_row = [](const std::vector<std::string_view>& f, bool, std::size_t, std::size_t line) {
    LabeledSentence s;
    s.lang = row_lang(f[0], line);
    if (blank(f[1])) throw ParseError("empty text", line);
    s.text = std::string(f[1]);
    if (f[2] == "0") {
      s.label = 0;
    } else if (f[2] == "1") {
      s.label = 1;
    } else {
      throw ParseError("label must be 0 or 1, got '" + std::string(f[2]) + "'", line);
    }
    return s;
  };
  return parse_rows<LabeledSentence>(content, mode, check_header, parse_row);
}

std::vector<LabeledSentence> load_labeled(const std::filesystem::path& path) {
  return parse_labeled(tsv::read_file(path), ErrorMode::Strict).records;
}

Loaded<LabeledSentence> load_labeled(const std::filesystem::path& path, ErrorMode mode) {
  return parse_labeled(tsv::read_file(path), mode);
}

namespace {

void append_field(std::string& out, std::string_view value) {
  if (!tsv::is_clean_field(value)) throw Error("field contains tab or newline: '" + std::string(value) + "'");
  out.append(value);
}

}  // namespace

std::string format_parallel(std::span<const ParallelPair> pairs, bool has_neutral) {
  std::string out = has_neutral ? "id\tlang\ttoxic_sentence\tneutral_sentence\n" : "id\tlang\ttoxic_sentence\n";
  for (const auto& p : pairs) {
    append_field(out, p.id);
    out += '\t';
    out += to_string(p.lang);
    out += '\t';
    append_field(out, p.toxic);
    if (has_neutral) {
      if (!p.neutral) throw Error("pair '" + p.id + "' has no neutral sentence");
      out += '\t';
      append_field(out, *p.neutral);
    }
    out += '\n';
  }
  return out;
}

std::string format_labeled(std::span<const LabeledSentence> sentences) {
  std::string out = "lang\ttext\tlabel\n";
  for (const auto& s : sentences) {
    out += to_string(s.lang);
    out += '\t';
    append_field(out, s.text);
    out += s.label ? "\t1\n" : "\t0\n";
  }
  return out;
}

std::array<std::size_t, 2> label_counts(std::span<const LabeledSentence> sentences) {
  std::array<std::size_t, 2> counts{};
  for (const auto& s : sentences) ++counts[s.label ? 1 : 0];
  return counts;
}

}  // namespace detox

#include "detox/tsv.hpp"

#include "detox/error.hpp"
#include "detox/unicode.hpp"

#include <fstream>
#include <sstream>

namespace detox::tsv {

std::vector<Line> split_lines(std::string_view content) {
  std::vector<Line> lines;
  std::size_t number = 1;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view text = content.substr(pos, end - pos);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    lines.push_back({number++, text});
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

bool is_clean_field(std::string_view value) {
  return value.find_first_of("\t\r\n") == std::string_view::npos;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error("read failed for " + path.string());
  return std::move(buffer).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("write failed for " + path.string());
}

std::optional<std::size_t> Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Table::require_column(std::string_view name) const {
  if (auto index = column(name)) return *index;
  throw Error("missing column '" + std::string(name) + "'");
}

Table parse_table(std::string_view content) {
  const auto lines = split_lines(content);
  if (lines.empty()) throw ParseError("missing header row", 1);
  Table table;
  for (const auto& line : lines) {
    if (!unicode::is_valid_utf8(line.text)) throw DecodeError("line " + std::to_string(line.number) + ": invalid UTF-8");
    auto fields = split_fields(line.text);
    if (table.header.empty()) {
      table.header.assign(fields.begin(), fields.end());
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ParseError("expected " + std::to_string(table.header.size()) + " columns, found " +
                           std::to_string(fields.size()),
                       line.number);
    }
    table.rows.emplace_back(fields.begin(), fields.end());
    table.line_numbers.push_back(line.number);
  }
  return table;
}

}  // namespace detox::tsv

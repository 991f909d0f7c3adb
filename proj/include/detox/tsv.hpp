#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace detox::tsv {

struct Line {
  std::size_t number;  // 1-based
  std::string_view text;
};

// LF or CRLF line endings; a final terminating newline does not add an empty line.
std::vector<Line> split_lines(std::string_view content);

std::vector<std::string_view> split_fields(std::string_view line);

// True when the value can be stored in a single TSV field.
bool is_clean_field(std::string_view value);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// A header-addressed table, for inputs whose column layout is chosen by flags.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;

  std::optional<std::size_t> column(std::string_view name) const;
  std::size_t require_column(std::string_view name) const;
};

// Throws ParseError on a row whose width differs from the header, DecodeError on bad UTF-8.
Table parse_table(std::string_view content);

}  // namespace detox::tsv

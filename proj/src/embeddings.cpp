#include "detox/embeddings.hpp"

#include "detox/error.hpp"
#include "detox/shim_client.hpp"
#include "detox/tsv.hpp"
#include "detox/unicode.hpp"

#include <charconv>
#include <cmath>

namespace detox {

std::string_view to_string(EmbedRole role) {
  switch (role) {
    case EmbedRole::Source: return "source";
    case EmbedRole::Output: return "output";
    case EmbedRole::Reference: return "reference";
  }
  return "unknown";
}

EmbedRole parse_embed_role(std::string_view name) {
  if (name == "source") return EmbedRole::Source;
  if (name == "output") return EmbedRole::Output;
  if (name == "reference") return EmbedRole::Reference;
  throw Error("unknown embedding role '" + std::string(name) + "'");
}

FileEmbeddings FileEmbeddings::parse(std::string_view content) {
  const auto table = tsv::parse_table(content);
  const auto id_col = table.require_column("id");
  const auto role_col = table.require_column("role");
  const auto vec_col = table.require_column("vector");
  FileEmbeddings out;
  std::size_t dim = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto line = table.line_numbers[r];
    EmbedRole role;
    try {
      role = parse_embed_role(row[role_col]);
    } catch (const Error& e) {
      throw ParseError(e.what(), line);
    }
    EmbeddingVector v;
    for (const auto& [begin, end] : unicode::whitespace_tokens(row[vec_col])) {
      double value = 0;
      const char* first = row[vec_col].data() + begin;
      const char* last = row[vec_col].data() + end;
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw ParseError("bad vector component '" + std::string(first, last) + "'", line);
      }
      v.values.push_back(value);
    }
    if (v.values.empty()) throw ParseError("empty vector", line);
    if (dim == 0) dim = v.dim();
    if (v.dim() != dim) {
      throw ParseError("vector has dimension " + std::to_string(v.dim()) + ", expected " + std::to_string(dim), line);
    }
    if (!out.vectors_.emplace(std::pair{row[id_col], role}, std::move(v)).second) {
      throw ParseError("duplicate vector for id '" + row[id_col] + "' role " + row[role_col], line);
    }
  }
  return out;
}

FileEmbeddings FileEmbeddings::load(const std::filesystem::path& path) { return parse(tsv::read_file(path)); }

std::vector<EmbeddingVector> FileEmbeddings::embed(std::span<const EmbedQuery> queries) {
  std::vector<EmbeddingVector> out;
  out.reserve(queries.size());
  for (const auto& q : queries) {
    auto it = vectors_.find({q.id, q.role});
    if (it == vectors_.end()) {
      throw Error("no embedding for id '" + q.id + "' role " + std::string(to_string(q.role)));
    }
    out.push_back(it->second);
  }
  return out;
}

EmbeddingVector NgramEmbedder::embed_text(std::string_view text) const {
  EmbeddingVector v;
  v.values.assign(dim_, 0.0);
  const auto cps = unicode::decode(unicode::normalize(text));
  for (std::size_t i = 0; i < cps.size(); ++i) {
    v.values[cps[i] % dim_] += 1.0;
    if (i + 1 < cps.size()) v.values[(cps[i] * 131u + cps[i + 1] * 7u + 17u) % dim_] += 0.5;
  }
  return v;
}

std::vector<EmbeddingVector> NgramEmbedder::embed(std::span<const EmbedQuery> queries) {
  std::vector<EmbeddingVector> out;
  out.reserve(queries.size());
  for (const auto& q : queries) out.push_back(embed_text(q.text));
  return out;
}

std::vector<EmbeddingVector> ShimEmbedder::embed(std::span<const EmbedQuery> queries) {
  std::vector<ShimMessage> requests;
  requests.reserve(queries.size());
  for (const auto& q : queries) {
    ShimMessage m;
    m.op = Op::embed;
    m.id = "embed-" + std::to_string(next_request_serial());
    m.lang = q.lang;
    m.text = q.text;
    requests.push_back(std::move(m));
  }
  auto replies = backend_->call(requests);
  std::vector<EmbeddingVector> out;
  out.reserve(replies.size());
  for (std::size_t i = 0; i < replies.size(); ++i) {
    if (!replies[i].ok()) {
      throw Error("embedding for id '" + queries[i].id + "' failed: " + replies[i].failure().message);
    }
    out.push_back({*replies[i].value().vector});
  }
  return out;
}

}  // namespace detox

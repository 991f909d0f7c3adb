#pragma once

#include "detox/language.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace detox {

class ShimClient;

struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
  bool operator==(const EmbeddingVector&) const = default;
};

// Which sentence of a record a vector belongs to.
enum class EmbedRole { Source, Output, Reference };

std::string_view to_string(EmbedRole role);
EmbedRole parse_embed_role(std::string_view name);

struct EmbedQuery {
  std::string id;
  EmbedRole role;
  Lang lang;
  std::string text;
};

class EmbeddingSource {
 public:
  virtual ~EmbeddingSource() = default;
  virtual std::string name() const = 0;
  // One vector per query, in order. Throws Error when a vector is unavailable.
  virtual std::vector<EmbeddingVector> embed(std::span<const EmbedQuery> queries) = 0;
};

// Precomputed vectors from a TSV with header id<TAB>role<TAB>vector, where
// role is source|output|reference and vector is space-separated numbers.
class FileEmbeddings final : public EmbeddingSource {
 public:
  static FileEmbeddings parse(std::string_view content);
  static FileEmbeddings load(const std::filesystem::path& path);

  std::string name() const override { return "file"; }
  std::vector<EmbeddingVector> embed(std::span<const EmbedQuery> queries) override;
  std::size_t size() const { return vectors_.size(); }

 private:
  std::map<std::pair<std::string, EmbedRole>, EmbeddingVector> vectors_;
};

// Deterministic bag of normalized character unigrams and bigrams folded into
// `dim` buckets. Identical texts map to identical vectors; non-empty text never
// maps to the zero vector. A dependency-free stand-in for a sentence encoder.
class NgramEmbedder final : public EmbeddingSource {
 public:
  explicit NgramEmbedder(std::size_t dim = 256) : dim_(dim) {}
  std::string name() const override { return "ngram"; }
  std::vector<EmbeddingVector> embed(std::span<const EmbedQuery> queries) override;
  EmbeddingVector embed_text(std::string_view text) const;

 private:
  std::size_t dim_;
};

// Uses a backend's `embed` capability.
class ShimEmbedder final : public EmbeddingSource {
 public:
  explicit ShimEmbedder(std::shared_ptr<ShimClient> backend) : backend_(std::move(backend)) {}
  std::string name() const override { return "shim"; }
  std::vector<EmbeddingVector> embed(std::span<const EmbedQuery> queries) override;

 private:
  std::shared_ptr<ShimClient> backend_;
};

}  // namespace detox

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "msq/entities.hpp"

namespace msq {

/// Token -> dense float vector, all of one dimension.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  explicit EmbeddingStore(std::size_t dim) : dim_(dim) {}

  /// Returns false (and stores nothing) when the token is already present.
  bool add(std::string token, std::span<const float> vector);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return tokens_.size(); }
  bool contains(std::string_view token) const;
  /// Empty span when absent.
  std::span<const float> vector(std::string_view token) const;
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> tokens_;
  std::vector<float> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Plain-text vectors: `token v1 ... vd` per line, optional `count dim`
/// header. Later duplicates of a token are ignored.
EmbeddingStore load_vectors(const std::filesystem::path& path,
                            std::optional<std::size_t> limit = std::nullopt);
EmbeddingStore parse_vectors(std::string_view content,
                             std::optional<std::size_t> limit = std::nullopt);

/// dot(a,b) / (|a| |b|) with double accumulation, clamped to [-1, 1].
/// Throws ZeroNormVector / DimensionMismatch.
double cosine(std::span<const float> a, std::span<const float> b);

struct SimilarityPair {
  std::string a;  // a < b lexicographically
  std::string b;
  double similarity;

  bool operator==(const SimilarityPair&) const = default;
};

struct SimilarityMatrix {
  std::vector<SimilarityPair> pairs;
  std::vector<std::string> out_of_vocabulary;
  /// In-store tokens whose vector has zero norm; excluded like OOV tokens.
  std::vector<std::string> zero_norm;
  /// Tokens that took part in pair generation, sorted.
  std::vector<std::string> tokens;
};

/// All unordered pairs of in-store vocabulary tokens, lexicographic order.
SimilarityMatrix similarity_matrix(const EntityVocabulary& vocab, const EmbeddingStore& store,
                                   unsigned threads = 1);

}  // namespace msq

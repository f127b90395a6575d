#include "msq/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "msq/error.hpp"
#include "msq/util.hpp"

namespace msq {

bool EmbeddingStore::add(std::string token, std::span<const float> vector) {
  if (vector.size() != dim_) {
    throw Error(ErrorCode::DimensionMismatch,
                "vector for '" + token + "' has " + std::to_string(vector.size()) +
                    " components, expected " + std::to_string(dim_));
  }
  if (index_.contains(token)) return false;
  for (float v : vector) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteValue, "non-finite value for '" + token + "'");
  }
  index_.emplace(token, tokens_.size());
  tokens_.push_back(std::move(token));
  values_.insert(values_.end(), vector.begin(), vector.end());
  return true;
}

bool EmbeddingStore::contains(std::string_view token) const {
  return index_.contains(std::string(token));
}

std::span<const float> EmbeddingStore::vector(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) return {};
  return std::span<const float>(values_).subspan(it->second * dim_, dim_);
}

namespace {

std::vector<std::string_view> fields_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    const auto end = line.find_first_of(" \t", pos);
    out.push_back(line.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) break;
    pos = end;
  }
  return out;
}

bool parse_size(std::string_view s, std::size_t& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

}  // namespace

EmbeddingStore parse_vectors(std::string_view content, std::optional<std::size_t> limit) {
  std::optional<EmbeddingStore> store;
  std::vector<float> buffer;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool first_content_line = true;
  while (pos < content.size()) {
    const auto nl = content.find('\n', pos);
    auto line = content.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? content.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto fields = fields_of(line);
    if (fields.empty()) continue;

    if (first_content_line) {
      first_content_line = false;
      std::size_t count = 0;
      std::size_t dim = 0;
      if (fields.size() == 2 && parse_size(fields[0], count) && parse_size(fields[1], dim)) {
        if (dim == 0) throw Error(ErrorCode::DimensionMismatch, "header declares dimension 0", line_no);
        store.emplace(dim);
        continue;
      }
    }
    if (limit && store && store->size() >= *limit) break;
    if (fields.size() < 2) {
      throw Error(ErrorCode::DimensionMismatch, "line has no vector components", line_no);
    }
    const std::size_t dim = fields.size() - 1;
    if (!store) store.emplace(dim);
    if (dim != store->dim()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "expected " + std::to_string(store->dim()) + " components, got " +
                      std::to_string(dim),
                  line_no);
    }
    buffer.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const auto f = fields[i + 1];
      const auto res = std::from_chars(f.data(), f.data() + f.size(), buffer[i]);
      if (res.ec == std::errc::result_out_of_range) {
        throw Error(ErrorCode::NonFiniteValue, "value out of float range: " + std::string(f), line_no);
      }
      if (res.ec != std::errc{} || res.ptr != f.data() + f.size()) {
        throw Error(ErrorCode::MalformedRecord, "not a number: " + std::string(f), line_no);
      }
      if (!std::isfinite(buffer[i])) {
        throw Error(ErrorCode::NonFiniteValue, "non-finite component " + std::string(f), line_no);
      }
    }
    store->add(std::string(fields[0]), buffer);
  }
  if (!store || (store->size() == 0 && !(limit && *limit == 0))) {
    throw Error(ErrorCode::EmptyFile, "no vectors found");
  }
  return std::move(*store);
}

EmbeddingStore load_vectors(const std::filesystem::path& path, std::optional<std::size_t> limit) {
  return parse_vectors(read_file(path), limit);
}

double cosine(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "cosine of vectors with different dimensions");
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i];
    const double y = b[i];
    dot += x * y;
    na += x * x;
    nb += y * y;
  }
  if (na == 0.0 || nb == 0.0) throw Error(ErrorCode::ZeroNormVector, "cosine of a zero vector");
  // sqrt(na)*sqrt(nb) is commutative, so cosine(a,b) == cosine(b,a) bitwise.
  const double sim = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(sim, -1.0, 1.0);
}

SimilarityMatrix similarity_matrix(const EntityVocabulary& vocab, const EmbeddingStore& store,
                                   unsigned threads) {
  SimilarityMatrix out;
  std::vector<std::span<const float>> vectors;
  for (const auto& [lemma, count] : vocab.entries) {  // sorted keys
    const auto v = store.vector(lemma);
    if (v.empty()) {
      out.out_of_vocabulary.push_back(lemma);
      continue;
    }
    if (std::all_of(v.begin(), v.end(), [](float x) { return x == 0.0f; })) {
      out.zero_norm.push_back(lemma);
      continue;
    }
    out.tokens.push_back(lemma);
    vectors.push_back(v);
  }

  const std::size_t n = out.tokens.size();
  auto rows = parallel_map<std::vector<SimilarityPair>>(n, threads, [&](std::size_t i) {
    std::vector<SimilarityPair> row;
    row.reserve(n - i - 1);
    for (std::size_t j = i + 1; j < n; ++j) {
      row.push_back({out.tokens[i], out.tokens[j], cosine(vectors[i], vectors[j])});
    }
    return row;
  });
  out.pairs.reserve(n * (n > 0 ? n - 1 : 0) / 2);
  for (auto& row : rows) {
    std::move(row.begin(), row.end(), std::back_inserter(out.pairs));
  }
  return out;
}

}  // namespace msq

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "msq/textprep.hpp"

namespace msq {

enum class VocabularySource { Lexicon, Frequency, Hybrid };

VocabularySource parse_vocabulary_source(std::string_view name);
std::string_view to_string(VocabularySource source);

/// Candidate entity lemmas with their corpus frequency.
struct EntityVocabulary {
  std::map<std::string, std::uint64_t> entries;
  VocabularySource source = VocabularySource::Frequency;

  bool contains(std::string_view lemma) const { return entries.contains(std::string(lemma)); }
  std::size_t size() const { return entries.size(); }
};

struct VocabularyOptions {
  VocabularySource mode = VocabularySource::Frequency;
  std::optional<std::set<std::string>> lexicon;
  std::uint64_t min_count = 5;
  /// Cap on frequency-derived entries; 0 means unlimited.
  std::size_t max_vocab = 0;
};

/// Lemma frequencies over every sentence of every review.
std::map<std::string, std::uint64_t> lemma_frequencies(std::span<const ProcessedReview> reviews);

/// Throws Error(EmptyVocabulary) when nothing survives.
EntityVocabulary build_vocabulary(std::span<const ProcessedReview> reviews,
                                  const VocabularyOptions& options);
EntityVocabulary build_vocabulary(const std::map<std::string, std::uint64_t>& frequencies,
                                  const VocabularyOptions& options);

struct EntityMention {
  std::string lemma;
  std::string review_id;
  std::size_t sentence_index = 0;
  std::size_t token_index = 0;

  bool operator==(const EntityMention&) const = default;
};

/// One mention per matching token occurrence, in sentence then token order.
std::vector<EntityMention> extract_mentions(const ProcessedReview& review,
                                            const EntityVocabulary& vocab);

/// Pluggable mention extractor; the vocabulary scan is the shipped backend.
class EntityRecognizer {
 public:
  virtual ~EntityRecognizer() = default;
  virtual std::vector<EntityMention> extract(const ProcessedReview& review) const = 0;
};

class VocabularyRecognizer final : public EntityRecognizer {
 public:
  explicit VocabularyRecognizer(EntityVocabulary vocab) : vocab_(std::move(vocab)) {}
  std::vector<EntityMention> extract(const ProcessedReview& review) const override {
    return extract_mentions(review, vocab_);
  }
  const EntityVocabulary& vocabulary() const { return vocab_; }

 private:
  EntityVocabulary vocab_;
};

/// Entity lexicon file: one term per line, '#' comments; terms are normalized
/// with `lemmatizer` (multi-token results are rejected).
std::set<std::string> parse_entity_lexicon(std::string_view content, const Lemmatizer& lemmatizer);
std::set<std::string> load_entity_lexicon(const std::filesystem::path& path,
                                          const Lemmatizer& lemmatizer);

}  // namespace msq

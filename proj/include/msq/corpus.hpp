#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace msq {

struct Review {
  std::string listing_id;
  std::string review_id;
  std::string text;
  std::optional<std::string> language;

  bool operator==(const Review&) const = default;
};

/// Ordered, immutable collection of reviews keyed by (listing_id, review_id).
class ReviewCorpus {
 public:
  ReviewCorpus() = default;
  /// Validates non-empty keys and (listing_id, review_id) uniqueness.
  explicit ReviewCorpus(std::vector<Review> reviews);

  const std::vector<Review>& reviews() const { return reviews_; }
  std::size_t size() const { return reviews_.size(); }
  bool empty() const { return reviews_.empty(); }

  /// listing_id -> review positions, in input order. Keys iterate sorted.
  const std::map<std::string, std::vector<std::size_t>>& listing_index() const {
    return listing_index_;
  }
  /// K_c for a listing; zero for unknown listings.
  std::size_t review_count(std::string_view listing_id) const;

  bool operator==(const ReviewCorpus& other) const { return reviews_ == other.reviews_; }

 private:
  std::vector<Review> reviews_;
  std::map<std::string, std::vector<std::size_t>> listing_index_;
};

enum class CorpusFormat { Jsonl, Csv };

CorpusFormat parse_corpus_format(std::string_view name);
std::optional<CorpusFormat> format_from_extension(const std::filesystem::path& path);

ReviewCorpus load_corpus(const std::filesystem::path& path, CorpusFormat format);
ReviewCorpus parse_corpus(std::string_view content, CorpusFormat format);
std::string serialize_corpus(const ReviewCorpus& corpus, CorpusFormat format);
void write_corpus(const ReviewCorpus& corpus, const std::filesystem::path& path,
                  CorpusFormat format);

// ---------------------------------------------------------------- cleaning

struct CleanOptions {
  /// Reviews with fewer alphanumeric code points than this are invalid.
  std::size_t min_alnum = 1;
};

struct CleanResult {
  ReviewCorpus corpus;
  std::vector<std::string> removed_review_ids;
  std::size_t removed() const { return removed_review_ids.size(); }
};

CleanResult clean_reviews(const ReviewCorpus& corpus, const CleanOptions& options = {});

// ---------------------------------------------------- language standardizing

class Translator {
 public:
  virtual ~Translator() = default;
  /// Throws Error(TranslationFailure) when the text cannot be translated.
  virtual std::string translate(std::string_view text,
                                const std::optional<std::string>& source_tag,
                                std::string_view target) const = 0;
  /// Language guess for untagged text, or nullopt when the translator has no
  /// opinion (the ASCII-ratio heuristic applies then).
  virtual std::optional<std::string> detect(std::string_view /*text*/) const {
    return std::nullopt;
  }
};

class IdentityTranslator final : public Translator {
 public:
  std::string translate(std::string_view text, const std::optional<std::string>&,
                        std::string_view) const override {
    return std::string(text);
  }
};

/// Offline stand-in for a translation service: greedy longest-match
/// substitution of dictionary phrases. Text with no dictionary hit fails.
class DictionaryTranslator final : public Translator {
 public:
  explicit DictionaryTranslator(std::map<std::string, std::string> entries);
  /// Tab-separated `source<TAB>translation` lines, '#' comments.
  static DictionaryTranslator from_file(const std::filesystem::path& path);

  std::string translate(std::string_view text, const std::optional<std::string>& source_tag,
                        std::string_view target) const override;

 private:
  std::map<std::string, std::string> entries_;
  std::size_t longest_key_ = 0;
};

struct StandardizeOptions {
  std::string target = "en";
  double ascii_ratio_threshold = 0.9;
  /// On TranslationFailure: drop the review (true) or rethrow (false).
  bool skip_failures = false;
};

struct StandardizeResult {
  ReviewCorpus corpus;
  std::size_t translated = 0;
  std::vector<std::string> skipped_review_ids;
};

/// True when the review must be routed through the translator.
bool needs_translation(const Review& review, const Translator& translator,
                       const StandardizeOptions& options);

StandardizeResult standardize_language(const ReviewCorpus& corpus, const Translator& translator,
                                       const StandardizeOptions& options = {});

}  // namespace msq

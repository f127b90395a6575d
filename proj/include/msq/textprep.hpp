#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "msq/corpus.hpp"

namespace msq {

struct Sentence {
  std::vector<std::string> tokens;
  std::size_t offset = 0;  // byte offset into the original review text
  std::size_t length = 0;

  bool operator==(const Sentence&) const = default;
};

struct ProcessedReview {
  std::string listing_id;
  std::string review_id;
  std::vector<Sentence> sentences;

  bool operator==(const ProcessedReview&) const = default;
};

/// Byte span of one raw sentence.
struct SentenceSpan {
  std::size_t offset;
  std::size_t length;
};

/// Splits after '.', '!' or '?' when followed by whitespace or end of text.
/// Leading/trailing whitespace is trimmed from each piece; blank pieces are
/// dropped. No abbreviation handling.
std::vector<SentenceSpan> sentence_spans(std::string_view text);
std::vector<std::string> split_sentences(std::string_view text);

/// Lowercase, split on every non-alphanumeric run.
std::vector<std::string> tokenize(std::string_view sentence);

using Stoplist = std::unordered_set<std::string>;

std::vector<std::string> remove_stopwords(std::span<const std::string> tokens,
                                          const Stoplist& stoplist);

struct SuffixRule {
  std::string suffix;
  std::string replacement;
  std::size_t min_stem = 0;  // characters that must remain before the suffix
};

/// Suffix rules plus an exceptions dictionary. An exception form may span
/// several tokens ("wi fi" -> "wifi"); a single-token exception mapping a
/// form to itself protects it from the rules.
class Lemmatizer {
 public:
  Lemmatizer() = default;
  Lemmatizer(std::vector<SuffixRule> rules, std::map<std::string, std::string> exceptions);

  /// Reduces one token. Rules apply repeatedly (first match each round) until
  /// no rule or exception changes the token, so the output is a fixpoint.
  std::string lemma(std::string_view token) const;
  std::vector<std::string> lemmatize(std::span<const std::string> tokens) const;

  const std::vector<SuffixRule>& rules() const { return rules_; }
  const std::map<std::string, std::string>& exceptions() const { return exceptions_; }

  static Lemmatizer load(const std::filesystem::path& rules_file,
                         const std::filesystem::path& exceptions_file);
  static std::vector<SuffixRule> parse_rules(std::string_view content);
  static std::map<std::string, std::string> parse_exceptions(std::string_view content);

 private:
  std::vector<SuffixRule> rules_;
  std::map<std::string, std::string> exceptions_;
  // Multi-token exception forms, split into tokens; longest first.
  std::vector<std::pair<std::vector<std::string>, std::string>> phrases_;
};

std::vector<std::string> lemmatize(std::span<const std::string> tokens, const Lemmatizer& rules);

Stoplist parse_stoplist(std::string_view content);
Stoplist load_stoplist(const std::filesystem::path& path);

/// Shipped defaults.
const Stoplist& default_stoplist();
const Lemmatizer& default_lemmatizer();
std::string_view default_stoplist_text();
std::string_view default_lemma_rules_text();
std::string_view default_lemma_exceptions_text();

struct TextConfig {
  Stoplist stoplist = default_stoplist();
  Lemmatizer lemmatizer = default_lemmatizer();
  /// Lemmatize before stopword removal instead of after.
  bool lemmatize_first = false;
};

/// Token normalization for one raw sentence.
std::vector<std::string> normalize_sentence(std::string_view sentence, const TextConfig& config);

/// Normalizes a single seed/lexicon term without stopword removal.
std::vector<std::string> normalize_term(std::string_view term, const Lemmatizer& lemmatizer);

ProcessedReview preprocess(const Review& review, const TextConfig& config);
std::vector<ProcessedReview> preprocess_corpus(const ReviewCorpus& corpus,
                                               const TextConfig& config, unsigned threads = 1);

}  // namespace msq

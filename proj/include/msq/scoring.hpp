#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "msq/aspects.hpp"
#include "msq/entities.hpp"
#include "msq/textprep.hpp"

namespace msq {

/// Lemma polarities in {+1, -1} plus negation words. A polarity is flipped
/// when a negator occurs within `window` tokens before it.
struct SentimentLexicon {
  std::unordered_map<std::string, int> polarities;
  std::unordered_set<std::string> negators;
  std::size_t window = 3;

  /// Throws ConfigError when a polarity is not +-1 or a negator is also polar.
  void validate() const;
};

/// `term<TAB>polarity` lines; terms are lemmatized, conflicting duplicates rejected.
std::unordered_map<std::string, int> parse_polarities(std::string_view content,
                                                      const Lemmatizer& lemmatizer);
std::unordered_set<std::string> parse_negators(std::string_view content,
                                               const Lemmatizer& lemmatizer);
SentimentLexicon load_sentiment_lexicon(const std::filesystem::path& polarity_file,
                                        const std::filesystem::path& negator_file,
                                        std::size_t window, const Lemmatizer& lemmatizer);
SentimentLexicon default_sentiment_lexicon(const Lemmatizer& lemmatizer = default_lemmatizer());
std::string_view default_sentiment_lexicon_text();
std::string_view default_negators_text();

/// sign(sum of token polarities, negation-flipped); 0 without lexicon hits.
int sentence_sentiment(std::span<const std::string> tokens, const SentimentLexicon& lexicon);
inline int sentence_sentiment(const Sentence& sentence, const SentimentLexicon& lexicon) {
  return sentence_sentiment(sentence.tokens, lexicon);
}

class SentimentModel {
 public:
  virtual ~SentimentModel() = default;
  virtual int polarity(const Sentence& sentence) const = 0;
};

class LexiconSentimentModel final : public SentimentModel {
 public:
  explicit LexiconSentimentModel(SentimentLexicon lexicon);
  int polarity(const Sentence& sentence) const override {
    return sentence_sentiment(sentence, lexicon_);
  }
  const SentimentLexicon& lexicon() const { return lexicon_; }

 private:
  SentimentLexicon lexicon_;
};

struct ScoredEntity {
  std::string lemma;
  std::optional<std::string> aspect;  // nullopt: not a seed of any aspect
  std::string review_id;
  std::size_t sentence_index = 0;
  int polarity = 0;       // the sentence polarity
  double rescaled = 0.0;  // alpha'

  bool operator==(const ScoredEntity&) const = default;
};

struct ScoringOptions {
  /// Divide by the sum of entity polarities instead of the
  /// entity count; loses the sign of negative sentences.
  bool literal_rescaling = false;
  /// Sum review scores per listing instead of averaging over K_c.
  bool sum_listing = false;
  unsigned threads = 1;
};

/// Every mention takes the polarity of its sentence.
std::vector<ScoredEntity> assign_polarities(const ProcessedReview& review,
                                            std::span<const EntityMention> mentions,
                                            const SentimentModel& sentiment,
                                            const AspectModel& model);

/// alpha' for the entities of one sentence: polarity / J_i (default) or
/// polarity / sum_j polarity (literal). Neutral entities get 0.
std::vector<ScoredEntity> rescale_sentence(std::span<const ScoredEntity> entities,
                                           bool literal = false);
/// Applies rescale_sentence per sentence; input grouped or not, order kept.
std::vector<ScoredEntity> rescale_review(std::span<const ScoredEntity> entities,
                                         bool literal = false);

struct ReviewScore {
  std::map<std::string, double> aspects;
  std::size_t unassigned = 0;
};

/// Sums rescaled polarities per aspect. Aspects without mentions get no entry.
ReviewScore review_score(std::span<const ScoredEntity> rescaled);

/// Mean (or sum) over the K_c = review_scores.size() reviews; absent aspects
/// count as 0. Throws NoReviews when empty.
std::map<std::string, double> listing_score(
    std::span<const std::map<std::string, double>> review_scores, bool sum = false);

/// Sum of member-aspect scores; a dimension appears when any member is present.
std::map<std::string, double> dimension_score(const std::map<std::string, double>& listing_scores,
                                              const DimensionModel& dims);

struct ReviewScoreRow {
  std::string listing_id;
  std::string review_id;
  std::map<std::string, double> aspects;
  std::size_t unassigned = 0;
};

struct ListingScore {
  std::size_t review_count = 0;
  std::map<std::string, double> aspects;
  std::map<std::string, double> dimensions;
};

struct ScoreTable {
  std::vector<ReviewScoreRow> reviews;  // corpus order
  std::map<std::string, ListingScore> listings;
  std::size_t mentions = 0;
  std::size_t unassigned_mentions = 0;
};

ScoreTable score_corpus(std::span<const ProcessedReview> reviews, const EntityRecognizer& recognizer,
                        const SentimentModel& sentiment, const AspectModel& model,
                        const DimensionModel& dims, const ScoringOptions& options = {});

/// {listing_id: {aspects, dimensions, review_count}}
std::string score_table_json(const ScoreTable& table);
/// listing_id,level,label,score
std::string score_table_csv(const ScoreTable& table);
/// listing_id,review_id,aspect,score
std::string review_scores_csv(const ScoreTable& table);

}  // namespace msq

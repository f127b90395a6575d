#include "msq/scoring.hpp"

#include <algorithm>

#include <json.hpp>

#include "msq/error.hpp"
#include "msq/util.hpp"

namespace msq {

void SentimentLexicon::validate() const {
  for (const auto& [lemma, p] : polarities) {
    if (p != 1 && p != -1) {
      throw Error(ErrorCode::ConfigError, "polarity of '" + lemma + "' must be +1 or -1");
    }
  }
  for (const auto& n : negators) {
    if (polarities.contains(n)) {
      throw Error(ErrorCode::ConfigError, "'" + n + "' is both a negator and a polar term");
    }
  }
}

namespace {

std::string single_lemma(std::string_view term, const Lemmatizer& lemmatizer, std::size_t line) {
  const auto lemmas = normalize_term(term, lemmatizer);
  if (lemmas.size() != 1) {
    throw Error(ErrorCode::MalformedRecord,
                "term '" + std::string(term) + "' does not normalize to one lemma", line);
  }
  return lemmas.front();
}

}  // namespace

std::unordered_map<std::string, int> parse_polarities(std::string_view content,
                                                      const Lemmatizer& lemmatizer) {
  std::unordered_map<std::string, int> out;
  for (const auto& line : content_lines(content)) {
    auto fields = split(line.text, '\t');
    if (fields.size() != 2) {
      // Tolerate a single space separator.
      fields = split(trim(line.text), ' ');
    }
    if (fields.size() != 2) {
      throw Error(ErrorCode::MalformedRecord, "expected term<TAB>polarity", line.number);
    }
    const auto value = trim(fields[1]);
    int polarity = 0;
    if (value == "1" || value == "+1") {
      polarity = 1;
    } else if (value == "-1") {
      polarity = -1;
    } else {
      throw Error(ErrorCode::MalformedRecord, "polarity must be +1 or -1", line.number);
    }
    const auto lemma = single_lemma(trim(fields[0]), lemmatizer, line.number);
    const auto [it, inserted] = out.emplace(lemma, polarity);
    if (!inserted && it->second != polarity) {
      throw Error(ErrorCode::MalformedRecord, "conflicting polarity for lemma '" + lemma + "'",
                  line.number);
    }
  }
  return out;
}

std::unordered_set<std::string> parse_negators(std::string_view content,
                                               const Lemmatizer& lemmatizer) {
  std::unordered_set<std::string> out;
  for (const auto& line : content_lines(content)) {
    out.insert(single_lemma(trim(line.text), lemmatizer, line.number));
  }
  return out;
}

SentimentLexicon load_sentiment_lexicon(const std::filesystem::path& polarity_file,
                                        const std::filesystem::path& negator_file,
                                        std::size_t window, const Lemmatizer& lemmatizer) {
  SentimentLexicon lex;
  lex.polarities = parse_polarities(
      polarity_file.empty() ? std::string(default_sentiment_lexicon_text()) : read_file(polarity_file),
      lemmatizer);
  lex.negators = parse_negators(
      negator_file.empty() ? std::string(default_negators_text()) : read_file(negator_file),
      lemmatizer);
  lex.window = window;
  lex.validate();
  return lex;
}

SentimentLexicon default_sentiment_lexicon(const Lemmatizer& lemmatizer) {
  return load_sentiment_lexicon({}, {}, 3, lemmatizer);
}

int sentence_sentiment(std::span<const std::string> tokens, const SentimentLexicon& lexicon) {
  int score = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto it = lexicon.polarities.find(tokens[i]);
    if (it == lexicon.polarities.end()) continue;
    int p = it->second;
    const std::size_t from = i >= lexicon.window ? i - lexicon.window : 0;
    for (std::size_t j = from; j < i; ++j) {
      if (lexicon.negators.contains(tokens[j])) {
        p = -p;
        break;
      }
    }
    score += p;
  }
  return (score > 0) - (score < 0);
}

LexiconSentimentModel::LexiconSentimentModel(SentimentLexicon lexicon)
    : lexicon_(std::move(lexicon)) {
  lexicon_.validate();
}

std::vector<ScoredEntity> assign_polarities(const ProcessedReview& review,
                                            std::span<const EntityMention> mentions,
                                            const SentimentModel& sentiment,
                                            const AspectModel& model) {
  std::vector<ScoredEntity> out;
  out.reserve(mentions.size());
  std::vector<std::optional<int>> cache(review.sentences.size());
  for (const auto& m : mentions) {
    if (m.sentence_index >= review.sentences.size()) {
      throw Error(ErrorCode::InvariantViolation,
                  "mention sentence index out of range in review " + review.review_id);
    }
    auto& polarity = cache[m.sentence_index];
    if (!polarity) polarity = sentiment.polarity(review.sentences[m.sentence_index]);
    ScoredEntity e;
    e.lemma = m.lemma;
    e.aspect = model.aspect_of(m.lemma);
    e.review_id = review.review_id;
    e.sentence_index = m.sentence_index;
    e.polarity = *polarity;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ScoredEntity> rescale_sentence(std::span<const ScoredEntity> entities, bool literal) {
  std::vector<ScoredEntity> out(entities.begin(), entities.end());
  if (out.empty()) return out;
  const auto sentence = out.front().sentence_index;
  const auto& review = out.front().review_id;
  int polarity_sum = 0;
  for (const auto& e : out) {
    if (e.sentence_index != sentence || e.review_id != review) {
      throw Error(ErrorCode::InvariantViolation, "rescale_sentence needs entities of one sentence");
    }
    polarity_sum += e.polarity;
  }
  const auto count = static_cast<double>(out.size());
  for (auto& e : out) {
    if (e.polarity == 0) {
      e.rescaled = 0.0;
    } else if (literal) {
      e.rescaled = polarity_sum == 0 ? 0.0 : e.polarity / static_cast<double>(polarity_sum);
    } else {
      e.rescaled = e.polarity / count;
    }
  }
  return out;
}

std::vector<ScoredEntity> rescale_review(std::span<const ScoredEntity> entities, bool literal) {
  std::map<std::size_t, std::vector<std::size_t>> by_sentence;
  for (std::size_t i = 0; i < entities.size(); ++i) {
    by_sentence[entities[i].sentence_index].push_back(i);
  }
  std::vector<ScoredEntity> out(entities.begin(), entities.end());
  std::vector<ScoredEntity> group;
  for (const auto& [sentence, indices] : by_sentence) {
    group.clear();
    for (const auto i : indices) group.push_back(entities[i]);
    const auto scaled = rescale_sentence(group, literal);
    for (std::size_t k = 0; k < indices.size(); ++k) out[indices[k]] = scaled[k];
  }
  return out;
}

ReviewScore review_score(std::span<const ScoredEntity> rescaled) {
  std::map<std::string, CompensatedSum> sums;
  ReviewScore out;
  for (const auto& e : rescaled) {
    if (!e.aspect) {
      ++out.unassigned;
      continue;
    }
    sums[*e.aspect].add(e.rescaled);
  }
  for (const auto& [aspect, sum] : sums) out.aspects.emplace(aspect, sum.value());
  return out;
}

std::map<std::string, double> listing_score(
    std::span<const std::map<std::string, double>> review_scores, bool sum) {
  if (review_scores.empty()) throw Error(ErrorCode::NoReviews, "listing has no reviews");
  std::map<std::string, CompensatedSum> sums;
  for (const auto& scores : review_scores) {
    for (const auto& [aspect, value] : scores) sums[aspect].add(value);
  }
  const double k = static_cast<double>(review_scores.size());
  std::map<std::string, double> out;
  for (const auto& [aspect, s] : sums) out.emplace(aspect, sum ? s.value() : s.value() / k);
  return out;
}

std::map<std::string, double> dimension_score(const std::map<std::string, double>& listing_scores,
                                              const DimensionModel& dims) {
  std::map<std::string, double> out;
  for (const auto& [label, dim] : dims.dimensions) {
    CompensatedSum sum;
    bool present = false;
    for (const auto& aspect : dim.aspects) {
      const auto it = listing_scores.find(aspect);
      if (it == listing_scores.end()) continue;
      present = true;
      sum.add(it->second);
    }
    if (present) out.emplace(label, sum.value());
  }
  return out;
}

ScoreTable score_corpus(std::span<const ProcessedReview> reviews, const EntityRecognizer& recognizer,
                        const SentimentModel& sentiment, const AspectModel& model,
                        const DimensionModel& dims, const ScoringOptions& options) {
  struct PerReview {
    ReviewScore score;
    std::size_t mentions = 0;
  };
  auto per_review = parallel_map<PerReview>(reviews.size(), options.threads, [&](std::size_t i) {
    const auto mentions = recognizer.extract(reviews[i]);
    const auto entities = assign_polarities(reviews[i], mentions, sentiment, model);
    return PerReview{review_score(rescale_review(entities, options.literal_rescaling)),
                     mentions.size()};
  });

  ScoreTable table;
  std::map<std::string, std::vector<std::size_t>> by_listing;
  table.reviews.reserve(reviews.size());
  for (std::size_t i = 0; i < reviews.size(); ++i) {
    auto& pr = per_review[i];
    table.mentions += pr.mentions;
    table.unassigned_mentions += pr.score.unassigned;
    table.reviews.push_back({reviews[i].listing_id, reviews[i].review_id,
                             std::move(pr.score.aspects), pr.score.unassigned});
    by_listing[reviews[i].listing_id].push_back(i);
  }
  for (const auto& [listing, indices] : by_listing) {
    std::vector<std::map<std::string, double>> scores;
    scores.reserve(indices.size());
    for (const auto i : indices) scores.push_back(table.reviews[i].aspects);
    ListingScore ls;
    ls.review_count = indices.size();
    ls.aspects = listing_score(scores, options.sum_listing);
    ls.dimensions = dimension_score(ls.aspects, dims);
    table.listings.emplace(listing, std::move(ls));
  }
  return table;
}

namespace {

nlohmann::json number(double v) { return v == 0.0 ? 0.0 : v; }

}  // namespace

std::string score_table_json(const ScoreTable& table) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [listing, ls] : table.listings) {
    nlohmann::json aspects = nlohmann::json::object();
    for (const auto& [a, v] : ls.aspects) aspects[a] = number(v);
    nlohmann::json dimensions = nlohmann::json::object();
    for (const auto& [d, v] : ls.dimensions) dimensions[d] = number(v);
    doc[listing] = {{"aspects", aspects}, {"dimensions", dimensions},
                    {"review_count", ls.review_count}};
  }
  return doc.dump(2) + "\n";
}

std::string score_table_csv(const ScoreTable& table) {
  std::string out = "listing_id,level,label,score\n";
  for (const auto& [listing, ls] : table.listings) {
    for (const auto& [a, v] : ls.aspects) {
      out += csv_field(listing) + ",aspect," + csv_field(a) + ',' + format_double(v) + '\n';
    }
    for (const auto& [d, v] : ls.dimensions) {
      out += csv_field(listing) + ",dimension," + csv_field(d) + ',' + format_double(v) + '\n';
    }
  }
  return out;
}

std::string review_scores_csv(const ScoreTable& table) {
  std::string out = "listing_id,review_id,aspect,score\n";
  for (const auto& row : table.reviews) {
    for (const auto& [a, v] : row.aspects) {
      out += csv_field(row.listing_id) + ',' + csv_field(row.review_id) + ',' + csv_field(a) + ',' +
             format_double(v) + '\n';
    }
  }
  return out;
}

}  // namespace msq

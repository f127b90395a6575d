#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "msq/error.hpp"
#include "msq/scoring.hpp"
#include "msq/util.hpp"
#include "support/oracles.hpp"

using namespace msq;

namespace {

SentimentLexicon lexicon(std::unordered_map<std::string, int> polarities,
                         std::unordered_set<std::string> negators = {}, std::size_t window = 3) {
  SentimentLexicon lex;
  lex.polarities = std::move(polarities);
  lex.negators = std::move(negators);
  lex.window = window;
  return lex;
}

ScoredEntity entity(std::string lemma, std::optional<std::string> aspect, std::size_t sentence,
                    int polarity) {
  ScoredEntity e;
  e.lemma = std::move(lemma);
  e.aspect = std::move(aspect);
  e.review_id = "r";
  e.sentence_index = sentence;
  e.polarity = polarity;
  return e;
}

ProcessedReview processed(std::string listing, std::string id,
                          std::vector<std::vector<std::string>> sentences) {
  ProcessedReview r{std::move(listing), std::move(id), {}};
  for (auto& s : sentences) r.sentences.push_back({std::move(s), 0, 0});
  return r;
}

struct Fixture {
  AspectModel model{oracle::synthetic_aspects()};
  DimensionModel dims = map_dimensions(
      model, parse_dimension_mapping(
                 R"({"Inside": {"aspects": ["Host", "Facility", "Sleeping"]}, "Outside": {"aspects": ["Transportation"]}})"));
  LexiconSentimentModel sentiment{default_sentiment_lexicon()};
  VocabularyRecognizer recognizer{[] {
    EntityVocabulary v;
    for (const auto& e : oracle::synthetic_entities()) v.entries[e] = 1;
    return v;
  }()};

  std::vector<ProcessedReview> processed_corpus(const oracle::SyntheticCorpus& c) const {
    std::vector<ProcessedReview> out;
    for (std::size_t i = 0; i < c.reviews.size(); ++i) {
      out.push_back(processed(c.reviews[i].listing_id, c.reviews[i].review_id, c.tokens[i]));
    }
    return out;
  }
};

}  // namespace

TEST_CASE("sentence_sentiment examples") {
  CHECK(sentence_sentiment(std::vector<std::string>{"host", "great"}, lexicon({{"great", 1}})) == 1);
  CHECK(sentence_sentiment(std::vector<std::string>{"terrible", "noise"}, lexicon({{"terrible", -1}})) == -1);
  CHECK(sentence_sentiment(std::vector<std::string>{"not", "clean"}, lexicon({{"clean", 1}}, {"not"}, 2)) == -1);
  CHECK(sentence_sentiment(std::vector<std::string>{"room"}, lexicon({{"clean", 1}})) == 0);
  CHECK(sentence_sentiment(std::vector<std::string>{"good", "bad"}, lexicon({{"good", 1}, {"bad", -1}})) == 0);
}

TEST_CASE("negation window is counted in tokens before the polar word") {
  const auto lex = lexicon({{"clean", 1}}, {"not"}, 2);
  CHECK(sentence_sentiment(std::vector<std::string>{"not", "x", "clean"}, lex) == -1);
  CHECK(sentence_sentiment(std::vector<std::string>{"not", "x", "y", "clean"}, lex) == 1);
  // a negator after the word does nothing
  CHECK(sentence_sentiment(std::vector<std::string>{"clean", "not"}, lex) == 1);
  // two negators still flip once
  CHECK(sentence_sentiment(std::vector<std::string>{"not", "not", "clean"}, lex) == -1);
}

TEST_CASE("lexicon validation and parsing") {
  CHECK_THROWS_AS(lexicon({{"x", 2}}).validate(), Error);
  CHECK_THROWS_AS(lexicon({{"not", -1}}, {"not"}).validate(), Error);
  const auto p = parse_polarities("# c\ngreat\t1\nawful\t-1\nrooms +1\n", default_lemmatizer());
  CHECK(p.at("great") == 1);
  CHECK(p.at("awful") == -1);
  CHECK(p.at("room") == 1);
  CHECK_THROWS_AS(parse_polarities("great\t1\ngreat\t-1\n", default_lemmatizer()), Error);
  CHECK_THROWS_AS(parse_polarities("great\t0\n", default_lemmatizer()), Error);
}

TEST_CASE("assign_polarities gives every mention its sentence polarity") {
  const AspectModel model({{"Host", {"host"}}, {"Sleeping", {"noise"}}});
  const LexiconSentimentModel sentiment(lexicon({{"great", 1}, {"terrible", -1}}));
  const auto review = processed("L", "r", {{"great", "host", "room"}, {"terrible", "noise"}, {"door"}});
  const std::vector<EntityMention> mentions{
      {"host", "r", 0, 1}, {"room", "r", 0, 2}, {"noise", "r", 1, 1}, {"door", "r", 2, 0}};
  const auto e = assign_polarities(review, mentions, sentiment, model);
  REQUIRE(e.size() == 4);
  CHECK(e[0].polarity == 1);
  CHECK(e[1].polarity == 1);
  CHECK(e[2].polarity == -1);
  CHECK(e[3].polarity == 0);
  CHECK(e[0].aspect == "Host");
  CHECK_FALSE(e[1].aspect.has_value());
  CHECK(e[2].aspect == "Sleeping");

  const std::vector<EntityMention> bad{{"host", "r", 7, 0}};
  CHECK_THROWS_AS(assign_polarities(review, bad, sentiment, model), Error);
}

TEST_CASE("rescale_sentence") {
  CHECK(rescale_sentence(std::vector<ScoredEntity>{}).empty());
  CHECK(rescale_sentence(std::vector{entity("a", "A", 0, 1)})[0].rescaled == 1.0);

  const std::vector two_pos{entity("a", "A", 0, 1), entity("b", "B", 0, 1)};
  for (const auto& e : rescale_sentence(two_pos)) CHECK(e.rescaled == 0.5);

  const std::vector two_neg{entity("a", "A", 0, -1), entity("b", "B", 0, -1)};
  for (const auto& e : rescale_sentence(two_neg)) CHECK(e.rescaled == -0.5);
  // the literal variant divides by the polarity sum, which loses the sign
  for (const auto& e : rescale_sentence(two_neg, true)) CHECK(e.rescaled == 0.5);

  const std::vector neutral{entity("a", "A", 0, 0), entity("b", "B", 0, 0)};
  for (const auto& e : rescale_sentence(neutral)) CHECK(e.rescaled == 0.0);
  for (const auto& e : rescale_sentence(neutral, true)) CHECK(e.rescaled == 0.0);

  const std::vector mixed{entity("a", "A", 0, 1), entity("b", "B", 1, 1)};
  CHECK_THROWS_AS(rescale_sentence(mixed), Error);
}

TEST_CASE("review_score example") {
  const std::vector<ScoredEntity> e{entity("host", "Host", 0, 1), entity("wifi", "Facility", 0, 1),
                                    entity("noise", "Sleeping", 1, -1)};
  const auto s = review_score(rescale_review(e));
  CHECK(s.aspects == std::map<std::string, double>{{"Facility", 0.5}, {"Host", 0.5}, {"Sleeping", -1.0}});
  CHECK(s.unassigned == 0);

  CHECK(review_score(std::vector<ScoredEntity>{}).aspects.empty());
  const auto u = review_score(rescale_review(std::vector{entity("x", std::nullopt, 0, 1),
                                                         entity("y", std::nullopt, 0, -1)}));
  CHECK(u.aspects.empty());
  CHECK(u.unassigned == 2);
}

TEST_CASE("rescale_review keeps order across interleaved sentences") {
  const std::vector<ScoredEntity> e{entity("a", "A", 1, -1), entity("b", "B", 0, 1),
                                    entity("c", "A", 1, -1)};
  const auto r = rescale_review(e);
  CHECK(r[0].rescaled == -0.5);
  CHECK(r[1].rescaled == 1.0);
  CHECK(r[2].rescaled == -0.5);
}

TEST_CASE("listing_score") {
  using Scores = std::vector<std::map<std::string, double>>;
  CHECK(listing_score(Scores{{{"Host", 0.5}}, {{"Host", 1.5}}}).at("Host") == 1.0);
  CHECK(listing_score(Scores{{{"Host", 0.25}, {"Value", -1.0}}}) ==
        std::map<std::string, double>{{"Host", 0.25}, {"Value", -1.0}});
  CHECK(listing_score(Scores{{{"Host", 1.0}}, {}}).at("Host") == 0.5);
  CHECK(listing_score(Scores{{{"Host", 1.0}}, {{"Host", 2.0}}}, true).at("Host") == 3.0);
  CHECK_THROWS_AS(listing_score(Scores{}), Error);
  try {
    listing_score(Scores{});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoReviews);
  }
}

TEST_CASE("dimension_score") {
  const auto model = load_default_model();
  const auto dims = load_default_dimensions(model);
  CHECK(dimension_score({{"Host", 1.0}}, dims) == std::map<std::string, double>{{"High adjustability", 1.0}});
  CHECK(dimension_score({{"Host", 0.0}, {"Cleanness", 0.0}}, dims).at("High adjustability") == 0.0);
  CHECK(dimension_score({{"Host", 0.5}, {"Communication", 0.25}}, dims).at("High adjustability") == 0.75);
  const auto all = dimension_score({{"Host", 0.5}, {"Value", -1.0}, {"Climate", 2.0}}, dims);
  CHECK(all.at("Medium adjustability") == -1.0);
  CHECK(all.at("Low adjustability") == 2.0);
  CHECK(dimension_score({{"Host", 1.0}}, DimensionModel{}).empty());
}

TEST_CASE("property: pipeline matches the straight-line oracle in both modes") {
  Fixture f;
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto corpus = oracle::synthetic_corpus(rng);
    const auto reviews = f.processed_corpus(corpus);
    for (const bool compat : {false, true}) {
      ScoringOptions opts;
      opts.literal_rescaling = compat;
      opts.sum_listing = compat;
      const auto table = score_corpus(reviews, f.recognizer, f.sentiment, f.model, f.dims, opts);
      const auto expect = oracle::score(corpus.labeled, compat, compat);
      REQUIRE(table.reviews.size() == expect.reviews.size());
      for (std::size_t i = 0; i < expect.reviews.size(); ++i) {
        REQUIRE(table.reviews[i].aspects.size() == expect.reviews[i].size());
        for (const auto& [a, v] : expect.reviews[i]) {
          CHECK(std::abs(table.reviews[i].aspects.at(a) - v) <= 1e-9);
        }
      }
      REQUIRE(table.listings.size() == expect.listings.size());
      for (const auto& [listing, aspects] : expect.listings) {
        const auto& got = table.listings.at(listing);
        CHECK(got.review_count == expect.review_counts.at(listing));
        REQUIRE(got.aspects.size() == aspects.size());
        for (const auto& [a, v] : aspects) CHECK(std::abs(got.aspects.at(a) - v) <= 1e-9);
      }
    }
  }
}

TEST_CASE("property: sentence sums, conservation and bounds") {
  Fixture f;
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const auto corpus = oracle::synthetic_corpus(rng);
    const auto reviews = f.processed_corpus(corpus);
    std::size_t max_sentences = 0;
    for (std::size_t i = 0; i < reviews.size(); ++i) {
      const auto& review = reviews[i];
      max_sentences = std::max(max_sentences, review.sentences.size());
      const auto mentions = f.recognizer.extract(review);
      const auto rescaled = rescale_review(assign_polarities(review, mentions, f.sentiment, f.model));
      std::map<std::size_t, CompensatedSum> per_sentence;
      for (const auto& e : rescaled) {
        CHECK(std::abs(e.rescaled) <= 1.0);
        per_sentence[e.sentence_index].add(e.rescaled);
      }
      // all mentions count here, assigned or not
      double expected_total = 0.0;
      for (const auto& [s, sum] : per_sentence) {
        const int polarity = corpus.labeled[i].sentences[s].polarity;
        CHECK(sum.value() == static_cast<double>(polarity));
        expected_total += polarity;
      }
      CompensatedSum total;
      for (const auto& e : rescaled) total.add(e.rescaled);
      CHECK(std::abs(total.value() - expected_total) <= 1e-12);

      for (const auto& [a, v] : review_score(rescaled).aspects) {
        CHECK(std::abs(v) <= static_cast<double>(review.sentences.size()) + 1e-12);
      }
    }
    const auto table = score_corpus(reviews, f.recognizer, f.sentiment, f.model, f.dims);
    for (const auto& [listing, ls] : table.listings) {
      for (const auto& [a, v] : ls.aspects) {
        CHECK(std::abs(v) <= static_cast<double>(max_sentences) + 1e-12);
      }
    }
  }
}

TEST_CASE("property: conservation when every mention is assigned") {
  const AspectModel model({{"A", {"a"}}, {"B", {"b", "c"}}});
  const LexiconSentimentModel sentiment(lexicon({{"good", 1}, {"bad", -1}}));
  EntityVocabulary v;
  v.entries = {{"a", 1}, {"b", 1}, {"c", 1}};
  const VocabularyRecognizer recognizer(v);
  std::mt19937_64 rng(13);
  const std::vector<std::string> words{"a", "b", "c", "good", "bad", "x"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::vector<std::string>> sentences(1 + rng() % 6);
    for (auto& s : sentences) {
      for (std::size_t t = rng() % 7; t > 0; --t) s.push_back(words[rng() % words.size()]);
    }
    const auto review = processed("L", "r", sentences);
    double expected = 0.0;
    for (const auto& s : review.sentences) {
      const bool has_mention = std::any_of(s.tokens.begin(), s.tokens.end(),
                                           [&](const std::string& t) { return v.contains(t); });
      if (has_mention) expected += sentence_sentiment(s.tokens, sentiment.lexicon());
    }
    const auto scores =
        review_score(rescale_review(assign_polarities(review, recognizer.extract(review), sentiment, model)));
    double total = 0.0;
    for (const auto& [a, x] : scores.aspects) total += x;
    CHECK(std::abs(total - expected) <= 1e-9);
  }
}

TEST_CASE("property: flipping a sentence from negative to positive never lowers an aspect") {
  const AspectModel model({{"A", {"a"}}, {"B", {"b"}}});
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<ScoredEntity> entities;
    const std::size_t sentences = 1 + rng() % 5;
    std::vector<int> polarity(sentences);
    for (auto& p : polarity) p = static_cast<int>(rng() % 3) - 1;
    for (std::size_t s = 0; s < sentences; ++s) {
      for (std::size_t m = rng() % 4; m > 0; --m) {
        const std::string lemma = rng() % 2 ? "a" : "b";
        entities.push_back(entity(lemma, model.aspect_of(lemma), s, polarity[s]));
      }
    }
    const auto negatives = std::count(polarity.begin(), polarity.end(), -1);
    if (negatives == 0) continue;
    std::size_t flip = 0;
    while (polarity[flip] != -1) ++flip;
    auto flipped = entities;
    for (auto& e : flipped) {
      if (e.sentence_index == flip) e.polarity = 1;
    }
    const auto before = review_score(rescale_review(entities)).aspects;
    const auto after = review_score(rescale_review(flipped)).aspects;
    for (const auto& [a, v] : before) CHECK(after.at(a) >= v);
  }
}

TEST_CASE("property: score_corpus is identical across thread counts") {
  Fixture f;
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const auto corpus = oracle::synthetic_corpus(rng, 200);
    const auto reviews = f.processed_corpus(corpus);
    ScoringOptions one;
    const auto base = score_corpus(reviews, f.recognizer, f.sentiment, f.model, f.dims, one);
    for (const unsigned threads : {2u, 3u, 8u}) {
      ScoringOptions many;
      many.threads = threads;
      const auto t = score_corpus(reviews, f.recognizer, f.sentiment, f.model, f.dims, many);
      CHECK(score_table_json(t) == score_table_json(base));
      CHECK(review_scores_csv(t) == review_scores_csv(base));
    }
  }
}

TEST_CASE("dimensions appear only when a member aspect is present") {
  Fixture f;
  const std::vector reviews{processed("L", "r1", {{"great", "host"}}), processed("M", "r2", {{"room"}})};
  const auto t = score_corpus(reviews, f.recognizer, f.sentiment, f.model, f.dims);
  CHECK(t.listings.at("L").dimensions == std::map<std::string, double>{{"Inside", 1.0}});
  CHECK(t.listings.at("M").aspects.empty());
  CHECK(t.listings.at("M").dimensions.empty());
  CHECK(t.mentions == 2);
  CHECK(t.unassigned_mentions == 1);
}

TEST_CASE("score exports") {
  Fixture f;
  const std::vector reviews{processed("L,1", "r1", {{"great", "host", "wifi"}}),
                            processed("L,1", "r2", {{"bad", "noise"}})};
  const auto t = score_corpus(reviews, f.recognizer, f.sentiment, f.model, f.dims);
  CHECK(score_table_csv(t) ==
        "listing_id,level,label,score\n"
        "\"L,1\",aspect,Facility,0.25\n"
        "\"L,1\",aspect,Host,0.25\n"
        "\"L,1\",aspect,Sleeping,-0.5\n"
        "\"L,1\",dimension,Inside,0\n");
  CHECK(review_scores_csv(t) ==
        "listing_id,review_id,aspect,score\n"
        "\"L,1\",r1,Facility,0.5\n"
        "\"L,1\",r1,Host,0.5\n"
        "\"L,1\",r2,Sleeping,-1\n");
  const auto doc = nlohmann::json::parse(score_table_json(t));
  CHECK(doc["L,1"]["review_count"] == 2);
  CHECK(doc["L,1"]["aspects"]["Sleeping"] == -0.5);
}

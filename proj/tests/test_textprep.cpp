#include <doctest.h>

#include <random>

#include "msq/error.hpp"
#include "msq/textprep.hpp"

using namespace msq;

using Tokens = std::vector<std::string>;

namespace {

// Random lowercase word with a bias toward inflectional endings.
std::string random_word(std::mt19937_64& rng) {
  static const std::vector<std::string> stems{"room", "host", "clean", "stay", "bus", "tidy",
                                              "wash", "box",  "try",   "plan", "a",   "is",
                                              "sleep", "ca",  "x",     "pass", "fly", "studi"};
  static const std::vector<std::string> endings{"",   "s",  "es",  "ies", "ed", "ing", "ied",
                                                "ss", "ying", "ded", "ting", "sses", "us", "ings"};
  std::string w = stems[rng() % stems.size()];
  const auto n = rng() % 3;
  for (std::size_t i = 0; i < n; ++i) w += endings[rng() % endings.size()];
  return w;
}

Tokens random_tokens(std::mt19937_64& rng) {
  Tokens out;
  for (auto n = rng() % 10; n > 0; --n) out.push_back(random_word(rng));
  if (rng() % 4 == 0) {
    out.push_back("wi");
    out.push_back("fi");
  }
  return out;
}

bool is_subsequence(const Tokens& sub, const Tokens& full) {
  std::size_t i = 0;
  for (const auto& t : full) {
    if (i < sub.size() && sub[i] == t) ++i;
  }
  return i == sub.size();
}

}  // namespace

TEST_CASE("split_sentences") {
  CHECK(split_sentences("Great host. Clean room!") == Tokens{"Great host.", "Clean room!"});
  CHECK(split_sentences("no punctuation at all") == Tokens{"no punctuation at all"});
  // terminal run "!!" stays together; split only before whitespace or end
  CHECK(split_sentences("Wow!! Really? Yes.") == Tokens{"Wow!!", "Really?", "Yes."});
  CHECK(split_sentences("").empty());
  CHECK(split_sentences("   ").empty());
  CHECK(split_sentences("v1.5 is fine") == Tokens{"v1.5 is fine"});
}

TEST_CASE("sentence spans point into the original text") {
  const std::string text = "  Great host.\nClean room!  ";
  const auto spans = sentence_spans(text);
  REQUIRE(spans.size() == 2);
  CHECK(text.substr(spans[0].offset, spans[0].length) == "Great host.");
  CHECK(text.substr(spans[1].offset, spans[1].length) == "Clean room!");
}

TEST_CASE("tokenize") {
  CHECK(tokenize("The host, was GREAT!") == Tokens{"the", "host", "was", "great"});
  CHECK(tokenize("wi-fi") == Tokens{"wi", "fi"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("Café ÉTÉ") == Tokens{"café", "été"});
  CHECK(tokenize("didn't") == Tokens{"didn", "t"});
}

TEST_CASE("remove_stopwords") {
  const Tokens tokens{"the", "host", "was", "great"};
  CHECK(remove_stopwords(tokens, {"the", "was"}) == Tokens{"host", "great"});
  CHECK(remove_stopwords(tokens, {"the", "host", "was", "great"}).empty());
  CHECK(remove_stopwords(tokens, {}) == tokens);
}

TEST_CASE("lemmatize with the default rules") {
  const auto& lem = default_lemmatizer();
  CHECK(lem.lemma("rooms") == "room");
  CHECK(lem.lemma("was") == "was");  // stem too short for s-stripping
  CHECK(lem.lemma("host") == "host");
  CHECK(lem.lemma("stories") == "story");
  CHECK(lem.lemma("boxes") == "box");
  CHECK(lem.lemma("glasses") == "glass");
  CHECK(lem.lemma("bus") == "bus");
  CHECK(lem.lemma("stayed") == "stay");
  CHECK(lem.lemma("stopped") == "stop");
  CHECK(lem.lemma("tidying") == "tidy");
  CHECK(lem.lemma("booking") == "booking");
  CHECK(lem.lemma("children") == "child");
  CHECK(lemmatize(Tokens{"wi", "fi", "rooms"}, lem) == Tokens{"wifi", "room"});
}

TEST_CASE("custom rule tables") {
  const auto rules = Lemmatizer::parse_rules("# suffix\treplacement\tmin_stem\ns\t\t3\n");
  REQUIRE(rules.size() == 1);
  CHECK(rules[0].min_stem == 3);
  const Lemmatizer lem(rules, Lemmatizer::parse_exceptions("mice\tmouse\n"));
  CHECK(lem.lemma("rooms") == "room");
  CHECK(lem.lemma("was") == "was");
  CHECK(lem.lemma("mice") == "mouse");
  CHECK_THROWS_AS(Lemmatizer::parse_rules("s\t\tx\n"), Error);
  CHECK_THROWS_AS(Lemmatizer::parse_exceptions("lonely\n"), Error);
}

TEST_CASE("property: lemmatize is idempotent and never adds tokens") {
  std::mt19937_64 rng(5);
  const auto& lem = default_lemmatizer();
  for (int trial = 0; trial < 2000; ++trial) {
    const auto tokens = random_tokens(rng);
    const auto once = lemmatize(tokens, lem);
    CHECK(lemmatize(once, lem) == once);
    CHECK(once.size() <= tokens.size());
    for (const auto& t : once) CHECK_FALSE(t.empty());
  }
}

TEST_CASE("property: stopword removal is an order-preserving filter") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 500; ++trial) {
    const auto tokens = random_tokens(rng);
    Stoplist stop;
    for (const auto& t : tokens) {
      if (rng() % 2) stop.insert(t);
    }
    const auto kept = remove_stopwords(tokens, stop);
    CHECK(kept.size() <= tokens.size());
    CHECK(is_subsequence(kept, tokens));
    for (const auto& t : kept) CHECK_FALSE(stop.contains(t));
    CHECK(remove_stopwords(tokens, {}) == tokens);
  }
}

TEST_CASE("preprocess") {
  const TextConfig config;
  const auto p = preprocess({"L", "r", "The host was great. !!!", std::nullopt}, config);
  std::size_t non_empty = 0;
  for (const auto& s : p.sentences) non_empty += !s.tokens.empty();
  CHECK(non_empty == 1);
  CHECK(p.sentences[0].tokens == Tokens{"host", "great"});

  CHECK(preprocess({"L", "r", "", std::nullopt}, config).sentences.empty());

  const auto twice = preprocess({"L", "r", "Clean rooms. Clean rooms.", std::nullopt}, config);
  REQUIRE(twice.sentences.size() == 2);
  CHECK(twice.sentences[0].tokens == Tokens{"clean", "room"});
  CHECK(twice.sentences[1].tokens == Tokens{"clean", "room"});
  CHECK(twice.sentences[1].offset == 13);
}

TEST_CASE("stopword/lemma order flag") {
  // "was" is a stopword; lemmatizing first cannot produce it from "wa"+"s" here,
  // but "ones" -> "one" shows a stopword appearing only after lemmatization.
  TextConfig config;
  config.stoplist = {"one"};
  CHECK(normalize_sentence("ones", config) == Tokens{"one"});
  config.lemmatize_first = true;
  CHECK(normalize_sentence("ones", config).empty());
}

TEST_CASE("property: preprocessing is deterministic across thread counts") {
  std::mt19937_64 rng(13);
  std::vector<Review> reviews;
  for (int i = 0; i < 60; ++i) {
    std::string text;
    for (int s = 0; s < 3; ++s) {
      const auto t = random_tokens(rng);
      for (const auto& w : t) text += w + " ";
      text += ". ";
    }
    reviews.push_back({"L" + std::to_string(i % 5), std::to_string(i), text, std::nullopt});
  }
  const ReviewCorpus corpus(reviews);
  const TextConfig config;
  const auto one = preprocess_corpus(corpus, config, 1);
  CHECK(preprocess_corpus(corpus, config, 3) == one);
  CHECK(preprocess_corpus(corpus, config, 8) == one);
  for (const auto& r : one) {
    for (const auto& s : r.sentences) {
      for (const auto& t : s.tokens) {
        CHECK_FALSE(t.empty());
        CHECK(t.find(' ') == std::string::npos);
      }
    }
  }
}

TEST_CASE("stoplist parsing and defaults") {
  const auto stop = parse_stoplist("# comment\nthe\n  A \n");
  CHECK(stop.contains("the"));
  CHECK(stop.contains("a"));
  CHECK(default_stoplist().size() >= 100);
  for (const auto* neg : {"not", "no", "never", "nor"}) CHECK_FALSE(default_stoplist().contains(neg));
}

#include "msq/entities.hpp"

#include <algorithm>

#include "msq/error.hpp"
#include "msq/util.hpp"

namespace msq {

VocabularySource parse_vocabulary_source(std::string_view name) {
  if (name == "lexicon") return VocabularySource::Lexicon;
  if (name == "frequency") return VocabularySource::Frequency;
  if (name == "hybrid") return VocabularySource::Hybrid;
  throw Error(ErrorCode::ConfigError, "unknown vocabulary mode '" + std::string(name) + "'");
}

std::string_view to_string(VocabularySource source) {
  switch (source) {
    case VocabularySource::Lexicon: return "lexicon";
    case VocabularySource::Frequency: return "frequency";
    case VocabularySource::Hybrid: return "hybrid";
  }
  return "frequency";
}

std::map<std::string, std::uint64_t> lemma_frequencies(std::span<const ProcessedReview> reviews) {
  std::map<std::string, std::uint64_t> freq;
  for (const auto& r : reviews) {
    for (const auto& s : r.sentences) {
      for (const auto& t : s.tokens) ++freq[t];
    }
  }
  return freq;
}

EntityVocabulary build_vocabulary(const std::map<std::string, std::uint64_t>& frequencies,
                                  const VocabularyOptions& options) {
  if (options.min_count < 1) throw Error(ErrorCode::ConfigError, "min_count must be >= 1");
  const bool wants_lexicon = options.mode != VocabularySource::Frequency;
  if (wants_lexicon && !options.lexicon) {
    throw Error(ErrorCode::ConfigError,
                std::string(to_string(options.mode)) + " vocabulary mode requires an entity lexicon");
  }

  EntityVocabulary vocab;
  vocab.source = options.mode;

  if (options.mode != VocabularySource::Lexicon) {
    std::vector<std::pair<std::string, std::uint64_t>> survivors;
    for (const auto& [lemma, count] : frequencies) {
      if (count >= options.min_count) survivors.emplace_back(lemma, count);
    }
    // Descending frequency, lexicographic tie-break.
    std::stable_sort(survivors.begin(), survivors.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    if (options.max_vocab > 0 && survivors.size() > options.max_vocab) {
      survivors.resize(options.max_vocab);
    }
    for (auto& [lemma, count] : survivors) vocab.entries.emplace(std::move(lemma), count);
  }
  if (wants_lexicon) {
    for (const auto& lemma : *options.lexicon) {
      const auto it = frequencies.find(lemma);
      if (it != frequencies.end() && it->second >= options.min_count) {
        vocab.entries.emplace(lemma, it->second);
      }
    }
  }
  if (vocab.entries.empty()) {
    throw Error(ErrorCode::EmptyVocabulary,
                "no entity candidate survived (mode " + std::string(to_string(options.mode)) +
                    ", min_count " + std::to_string(options.min_count) + ")");
  }
  return vocab;
}

EntityVocabulary build_vocabulary(std::span<const ProcessedReview> reviews,
                                  const VocabularyOptions& options) {
  return build_vocabulary(lemma_frequencies(reviews), options);
}

std::vector<EntityMention> extract_mentions(const ProcessedReview& review,
                                            const EntityVocabulary& vocab) {
  std::vector<EntityMention> out;
  for (std::size_t s = 0; s < review.sentences.size(); ++s) {
    const auto& tokens = review.sentences[s].tokens;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (vocab.entries.contains(tokens[t])) {
        out.push_back({tokens[t], review.review_id, s, t});
      }
    }
  }
  return out;
}

std::set<std::string> parse_entity_lexicon(std::string_view content, const Lemmatizer& lemmatizer) {
  std::set<std::string> out;
  for (const auto& line : content_lines(content)) {
    const auto lemmas = normalize_term(trim(line.text), lemmatizer);
    if (lemmas.size() != 1) {
      throw Error(ErrorCode::MalformedRecord,
                  "entity '" + std::string(trim(line.text)) + "' does not normalize to one lemma",
                  line.number);
    }
    out.insert(lemmas.front());
  }
  return out;
}

std::set<std::string> load_entity_lexicon(const std::filesystem::path& path,
                                          const Lemmatizer& lemmatizer) {
  return parse_entity_lexicon(read_file(path), lemmatizer);
}

}  // namespace msq

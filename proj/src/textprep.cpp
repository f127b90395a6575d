#include "msq/textprep.hpp"

#include <algorithm>
#include <utility>

#include "msq/error.hpp"
#include "msq/utf8.hpp"
#include "msq/util.hpp"

namespace msq {

namespace {

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

std::size_t code_point_count(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t pos = 0; pos < s.size(); pos += utf8::decode(s, pos).length) ++n;
  return n;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

constexpr int kMaxLemmaRounds = 16;

}  // namespace

std::vector<SentenceSpan> sentence_spans(std::string_view text) {
  std::vector<SentenceSpan> spans;
  auto emit = [&](std::size_t begin, std::size_t end) {
    // Trim whitespace (including Unicode spaces) at both ends.
    while (begin < end) {
      const auto d = utf8::decode(text, begin);
      if (!utf8::is_space(d.code_point)) break;
      begin += d.length;
    }
    while (end > begin) {
      std::size_t back = end - 1;
      while (back > begin && (static_cast<unsigned char>(text[back]) & 0xC0) == 0x80) --back;
      if (!utf8::is_space(utf8::decode(text, back).code_point)) break;
      end = back;
    }
    if (end > begin) spans.push_back({begin, end - begin});
  };

  std::size_t start = 0;
  for (std::size_t pos = 0; pos < text.size();) {
    const auto d = utf8::decode(text, pos);
    const std::size_t next = pos + d.length;
    if (d.length == 1 && is_terminal(text[pos])) {
      const bool at_end = next >= text.size();
      if (at_end || utf8::is_space(utf8::decode(text, next).code_point)) {
        emit(start, next);
        start = next;
      }
    }
    pos = next;
  }
  emit(start, text.size());
  return spans;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& s : sentence_spans(text)) out.emplace_back(text.substr(s.offset, s.length));
  return out;
}

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> tokens;
  std::string current;
  for (std::size_t pos = 0; pos < sentence.size();) {
    const auto d = utf8::decode(sentence, pos);
    pos += d.length;
    if (utf8::is_alnum(d.code_point)) {
      utf8::append(current, utf8::to_lower(d.code_point));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> remove_stopwords(std::span<const std::string> tokens,
                                          const Stoplist& stoplist) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!stoplist.contains(t)) out.push_back(t);
  }
  return out;
}

// --------------------------------------------------------------- lemmatizer

Lemmatizer::Lemmatizer(std::vector<SuffixRule> rules,
                       std::map<std::string, std::string> exceptions)
    : rules_(std::move(rules)) {
  for (auto& [form, lemma] : exceptions) {
    if (form.find(' ') != std::string::npos) {
      std::vector<std::string> parts;
      for (auto p : split(form, ' ')) {
        if (!p.empty()) parts.emplace_back(p);
      }
      phrases_.emplace_back(std::move(parts), lemma);
    } else {
      exceptions_.emplace(form, lemma);
    }
  }
  // Phrase parts are compared against lemmatized tokens.
  for (auto& [parts, lemma] : phrases_) {
    for (auto& p : parts) p = this->lemma(p);
  }
  std::stable_sort(phrases_.begin(), phrases_.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  // Keep multi-token forms visible through exceptions() for serialization.
  for (auto& [form, lemma] : exceptions) {
    if (form.find(' ') != std::string::npos) exceptions_.emplace(form, lemma);
  }
}

std::string Lemmatizer::lemma(std::string_view token) const {
  std::string cur(token);
  for (int round = 0; round < kMaxLemmaRounds; ++round) {
    if (const auto it = exceptions_.find(cur); it != exceptions_.end()) {
      if (it->second == cur) return cur;
      cur = it->second;
      continue;
    }
    const SuffixRule* match = nullptr;
    for (const auto& rule : rules_) {
      if (!ends_with(cur, rule.suffix)) continue;
      const auto stem = std::string_view(cur).substr(0, cur.size() - rule.suffix.size());
      if (code_point_count(stem) < rule.min_stem) continue;
      if (stem.empty() && rule.replacement.empty()) continue;
      match = &rule;
      break;
    }
    if (match == nullptr) return cur;
    std::string next = cur.substr(0, cur.size() - match->suffix.size()) + match->replacement;
    if (next == cur) return cur;
    cur = std::move(next);
  }
  return cur;
}

std::vector<std::string> Lemmatizer::lemmatize(std::span<const std::string> tokens) const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(lemma(t));
  if (phrases_.empty()) return out;

  // Merge multi-token forms until nothing changes; every merge shortens the
  // sequence, so this terminates.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::string> merged;
    merged.reserve(out.size());
    for (std::size_t i = 0; i < out.size();) {
      bool hit = false;
      for (const auto& [parts, lemma_value] : phrases_) {
        if (i + parts.size() > out.size()) continue;
        if (!std::equal(parts.begin(), parts.end(), out.begin() + static_cast<std::ptrdiff_t>(i))) {
          continue;
        }
        merged.push_back(lemma(lemma_value));
        i += parts.size();
        hit = true;
        changed = true;
        break;
      }
      if (!hit) merged.push_back(std::move(out[i++]));
    }
    out = std::move(merged);
  }
  return out;
}

std::vector<std::string> lemmatize(std::span<const std::string> tokens, const Lemmatizer& rules) {
  return rules.lemmatize(tokens);
}

std::vector<SuffixRule> Lemmatizer::parse_rules(std::string_view content) {
  std::vector<SuffixRule> rules;
  for (const auto& line : content_lines(content)) {
    const auto fields = split(line.text, '\t');
    if (fields.size() != 3 || fields[0].empty()) {
      throw Error(ErrorCode::MalformedRecord, "expected suffix<TAB>replacement<TAB>min_stem_len",
                  line.number);
    }
    SuffixRule rule;
    rule.suffix = std::string(fields[0]);
    rule.replacement = std::string(fields[1]);
    try {
      rule.min_stem = std::stoul(std::string(trim(fields[2])));
    } catch (const std::exception&) {
      throw Error(ErrorCode::MalformedRecord, "min_stem_len is not an integer", line.number);
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::map<std::string, std::string> Lemmatizer::parse_exceptions(std::string_view content) {
  std::map<std::string, std::string> out;
  for (const auto& line : content_lines(content)) {
    const auto fields = split(line.text, '\t');
    if (fields.size() != 2 || trim(fields[0]).empty() || trim(fields[1]).empty()) {
      throw Error(ErrorCode::MalformedRecord, "expected form<TAB>lemma", line.number);
    }
    out[std::string(trim(fields[0]))] = std::string(trim(fields[1]));
  }
  return out;
}

Lemmatizer Lemmatizer::load(const std::filesystem::path& rules_file,
                            const std::filesystem::path& exceptions_file) {
  auto rules = rules_file.empty() ? parse_rules(default_lemma_rules_text())
                                  : parse_rules(read_file(rules_file));
  auto exceptions = exceptions_file.empty() ? parse_exceptions(default_lemma_exceptions_text())
                                            : parse_exceptions(read_file(exceptions_file));
  return Lemmatizer(std::move(rules), std::move(exceptions));
}

Stoplist parse_stoplist(std::string_view content) {
  Stoplist out;
  for (const auto& line : content_lines(content)) {
    const auto word = trim(line.text);
    std::string lower;
    for (std::size_t pos = 0; pos < word.size();) {
      const auto d = utf8::decode(word, pos);
      utf8::append(lower, utf8::to_lower(d.code_point));
      pos += d.length;
    }
    out.insert(std::move(lower));
  }
  return out;
}

Stoplist load_stoplist(const std::filesystem::path& path) {
  return parse_stoplist(read_file(path));
}

const Stoplist& default_stoplist() {
  static const Stoplist instance = parse_stoplist(default_stoplist_text());
  return instance;
}

const Lemmatizer& default_lemmatizer() {
  static const Lemmatizer instance(Lemmatizer::parse_rules(default_lemma_rules_text()),
                                   Lemmatizer::parse_exceptions(default_lemma_exceptions_text()));
  return instance;
}

// ------------------------------------------------------------------ pipeline

std::vector<std::string> normalize_sentence(std::string_view sentence, const TextConfig& config) {
  const auto tokens = tokenize(sentence);
  if (config.lemmatize_first) {
    return remove_stopwords(config.lemmatizer.lemmatize(tokens), config.stoplist);
  }
  return config.lemmatizer.lemmatize(remove_stopwords(tokens, config.stoplist));
}

std::vector<std::string> normalize_term(std::string_view term, const Lemmatizer& lemmatizer) {
  return lemmatizer.lemmatize(tokenize(term));
}

ProcessedReview preprocess(const Review& review, const TextConfig& config) {
  ProcessedReview out;
  out.listing_id = review.listing_id;
  out.review_id = review.review_id;
  for (const auto& span : sentence_spans(review.text)) {
    Sentence s;
    s.tokens = normalize_sentence(std::string_view(review.text).substr(span.offset, span.length),
                                  config);
    s.offset = span.offset;
    s.length = span.length;
    out.sentences.push_back(std::move(s));
  }
  return out;
}

std::vector<ProcessedReview> preprocess_corpus(const ReviewCorpus& corpus,
                                               const TextConfig& config, unsigned threads) {
  const auto& reviews = corpus.reviews();
  return parallel_map<ProcessedReview>(reviews.size(), threads,
                                       [&](std::size_t i) { return preprocess(reviews[i], config); });
}

}  // namespace msq

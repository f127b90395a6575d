#include "msq/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

#include <json.hpp>

#include "msq/error.hpp"
#include "msq/utf8.hpp"
#include "msq/util.hpp"

namespace msq {

using json = nlohmann::json;

ReviewCorpus::ReviewCorpus(std::vector<Review> reviews) : reviews_(std::move(reviews)) {
  std::set<std::pair<std::string_view, std::string_view>> seen;
  for (std::size_t i = 0; i < reviews_.size(); ++i) {
    auto& r = reviews_[i];
    if (r.listing_id.empty()) throw Error(ErrorCode::MissingField, "empty listing_id");
    if (r.review_id.empty()) throw Error(ErrorCode::MissingField, "empty review_id");
    if (r.language && r.language->empty()) r.language.reset();
    if (!seen.emplace(r.listing_id, r.review_id).second) {
      throw Error(ErrorCode::DuplicateReviewId,
                  "duplicate review " + r.listing_id + "/" + r.review_id);
    }
    listing_index_[r.listing_id].push_back(i);
  }
}

std::size_t ReviewCorpus::review_count(std::string_view listing_id) const {
  const auto it = listing_index_.find(std::string(listing_id));
  return it == listing_index_.end() ? 0 : it->second.size();
}

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::Jsonl;
  if (name == "csv") return CorpusFormat::Csv;
  throw Error(ErrorCode::ConfigError, "unknown corpus format '" + std::string(name) + "'");
}

std::optional<CorpusFormat> format_from_extension(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".jsonl" || ext == ".ndjson") return CorpusFormat::Jsonl;
  if (ext == ".csv") return CorpusFormat::Csv;
  return std::nullopt;
}

namespace {

// A parsed record and the physical line it started on; indices into `reviews`
// line up with `lines`.
struct ParsedRecords {
  std::vector<Review> reviews;
  std::vector<std::size_t> lines;
};

ReviewCorpus finish(ParsedRecords parsed) {
  // Re-run uniqueness here so a duplicate can be reported with its line.
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < parsed.reviews.size(); ++i) {
    const auto& r = parsed.reviews[i];
    if (!seen.emplace(r.listing_id, r.review_id).second) {
      throw Error(ErrorCode::DuplicateReviewId,
                  "duplicate review " + r.listing_id + "/" + r.review_id, parsed.lines[i]);
    }
  }
  return ReviewCorpus(std::move(parsed.reviews));
}

std::string required_string(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    throw Error(ErrorCode::MissingField, std::string("missing field '") + key + "'", line);
  }
  if (!it->is_string()) {
    throw Error(ErrorCode::MalformedRecord, std::string("field '") + key + "' must be a string",
                line);
  }
  auto value = it->get<std::string>();
  if (value.empty() && std::string_view(key) != "text") {
    throw Error(ErrorCode::MissingField, std::string("empty field '") + key + "'", line);
  }
  return value;
}

ParsedRecords parse_jsonl(std::string_view content) {
  ParsedRecords out;
  for (const auto& line : content_lines(content)) {
    json obj;
    try {
      obj = json::parse(line.text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::MalformedRecord, e.what(), line.number);
    }
    if (!obj.is_object()) {
      throw Error(ErrorCode::MalformedRecord, "expected a JSON object", line.number);
    }
    Review r;
    r.listing_id = required_string(obj, "listing_id", line.number);
    r.review_id = required_string(obj, "review_id", line.number);
    r.text = required_string(obj, "text", line.number);
    if (const auto it = obj.find("language"); it != obj.end() && !it->is_null()) {
      if (!it->is_string()) {
        throw Error(ErrorCode::MalformedRecord, "field 'language' must be a string", line.number);
      }
      r.language = it->get<std::string>();
    }
    out.reviews.push_back(std::move(r));
    out.lines.push_back(line.number);
  }
  return out;
}

// RFC 4180 record reader. Records end at an unquoted LF (CRLF tolerated).
struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line;
};

std::vector<CsvRecord> read_csv(std::string_view content) {
  std::vector<CsvRecord> records;
  std::size_t line = 1;
  std::size_t pos = 0;
  while (pos < content.size()) {
    CsvRecord rec{{}, line};
    std::string field;
    bool in_quotes = false;
    bool was_quoted = false;
    bool done = false;
    while (!done) {
      if (pos >= content.size()) {
        if (in_quotes) throw Error(ErrorCode::MalformedRecord, "unterminated quoted field", rec.line);
        rec.fields.push_back(std::move(field));
        break;
      }
      const char c = content[pos];
      if (in_quotes) {
        if (c == '"') {
          if (pos + 1 < content.size() && content[pos + 1] == '"') {
            field.push_back('"');
            pos += 2;
          } else {
            in_quotes = false;
            ++pos;
          }
        } else {
          if (c == '\n') ++line;
          field.push_back(c);
          ++pos;
        }
        continue;
      }
      switch (c) {
        case '"':
          if (!field.empty() || was_quoted) {
            throw Error(ErrorCode::MalformedRecord, "stray quote inside unquoted field", line);
          }
          in_quotes = true;
          was_quoted = true;
          ++pos;
          break;
        case ',':
          rec.fields.push_back(std::move(field));
          field.clear();
          was_quoted = false;
          ++pos;
          break;
        case '\r':
          if (pos + 1 < content.size() && content[pos + 1] == '\n') {
            ++pos;
          } else {
            field.push_back(c);
            ++pos;
          }
          break;
        case '\n':
          rec.fields.push_back(std::move(field));
          ++line;
          ++pos;
          done = true;
          break;
        default:
          if (was_quoted) {
            throw Error(ErrorCode::MalformedRecord, "text after closing quote", line);
          }
          field.push_back(c);
          ++pos;
      }
    }
    // Blank lines between records are ignored.
    if (rec.fields.size() == 1 && rec.fields[0].empty()) continue;
    records.push_back(std::move(rec));
  }
  return records;
}

ParsedRecords parse_csv(std::string_view content) {
  ParsedRecords out;
  auto records = read_csv(content);
  if (records.empty()) return out;

  const auto& header = records.front().fields;
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return i;
    }
    return std::nullopt;
  };
  const auto listing_col = column("listing_id");
  const auto review_col = column("review_id");
  const auto text_col = column("text");
  const auto language_col = column("language");
  for (const auto& [name, col] : {std::pair{"listing_id", listing_col},
                                  std::pair{"review_id", review_col}, std::pair{"text", text_col}}) {
    if (!col) {
      throw Error(ErrorCode::MissingField, std::string("header lacks column '") + name + "'",
                  records.front().line);
    }
  }

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.size()) {
      throw Error(ErrorCode::MalformedRecord,
                  "expected " + std::to_string(header.size()) + " fields, got " +
                      std::to_string(rec.fields.size()),
                  rec.line);
    }
    Review review;
    review.listing_id = rec.fields[*listing_col];
    review.review_id = rec.fields[*review_col];
    review.text = rec.fields[*text_col];
    if (review.listing_id.empty()) throw Error(ErrorCode::MissingField, "empty listing_id", rec.line);
    if (review.review_id.empty()) throw Error(ErrorCode::MissingField, "empty review_id", rec.line);
    if (language_col && !rec.fields[*language_col].empty()) {
      review.language = rec.fields[*language_col];
    }
    out.reviews.push_back(std::move(review));
    out.lines.push_back(rec.line);
  }
  return out;
}

}  // namespace

ReviewCorpus parse_corpus(std::string_view content, CorpusFormat format) {
  return finish(format == CorpusFormat::Jsonl ? parse_jsonl(content) : parse_csv(content));
}

ReviewCorpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  return parse_corpus(read_file(path), format);
}

std::string serialize_corpus(const ReviewCorpus& corpus, CorpusFormat format) {
  std::string out;
  if (format == CorpusFormat::Jsonl) {
    for (const auto& r : corpus.reviews()) {
      nlohmann::ordered_json obj;
      obj["listing_id"] = r.listing_id;
      obj["review_id"] = r.review_id;
      obj["text"] = r.text;
      if (r.language) obj["language"] = *r.language;
      out += obj.dump(-1, ' ', false, json::error_handler_t::replace);
      out += '\n';
    }
    return out;
  }
  out = "listing_id,review_id,text,language\n";
  for (const auto& r : corpus.reviews()) {
    out += csv_field(r.listing_id) + ',' + csv_field(r.review_id) + ',' + csv_field(r.text) +
           ',' + csv_field(r.language.value_or("")) + '\n';
  }
  return out;
}

void write_corpus(const ReviewCorpus& corpus, const std::filesystem::path& path,
                  CorpusFormat format) {
  write_file_atomic(path, serialize_corpus(corpus, format));
}

CleanResult clean_reviews(const ReviewCorpus& corpus, const CleanOptions& options) {
  std::vector<Review> kept;
  CleanResult result;
  for (const auto& r : corpus.reviews()) {
    if (utf8::count_alnum(r.text) >= std::max<std::size_t>(options.min_alnum, 1)) {
      kept.push_back(r);
    } else {
      result.removed_review_ids.push_back(r.review_id);
    }
  }
  result.corpus = ReviewCorpus(std::move(kept));
  return result;
}

// ---------------------------------------------------------------------------

DictionaryTranslator::DictionaryTranslator(std::map<std::string, std::string> entries)
    : entries_(std::move(entries)) {
  for (const auto& [k, v] : entries_) {
    if (k.empty()) throw Error(ErrorCode::ConfigError, "empty dictionary key");
    longest_key_ = std::max(longest_key_, k.size());
  }
}

DictionaryTranslator DictionaryTranslator::from_file(const std::filesystem::path& path) {
  std::map<std::string, std::string> entries;
  for (const auto& line : content_lines(read_file(path))) {
    const auto fields = split(line.text, '\t');
    if (fields.size() != 2) {
      throw Error(ErrorCode::MalformedRecord, "expected source<TAB>translation", line.number);
    }
    entries[std::string(fields[0])] = std::string(fields[1]);
  }
  return DictionaryTranslator(std::move(entries));
}

std::string DictionaryTranslator::translate(std::string_view text,
                                            const std::optional<std::string>&,
                                            std::string_view) const {
  std::string out;
  std::size_t hits = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    bool matched = false;
    for (std::size_t len = std::min(longest_key_, text.size() - pos); len > 0; --len) {
      const auto it = entries_.find(std::string(text.substr(pos, len)));
      if (it == entries_.end()) continue;
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
      out += it->second;
      out.push_back(' ');
      pos += len;
      ++hits;
      matched = true;
      break;
    }
    if (!matched) {
      const auto d = utf8::decode(text, pos);
      out.append(text.substr(pos, d.length));
      pos += d.length;
    }
  }
  if (hits == 0) {
    throw Error(ErrorCode::TranslationFailure, "no dictionary entry matches the text");
  }
  // Collapse whitespace runs introduced around substitutions.
  std::string collapsed;
  for (char c : out) {
    if (c == ' ' && (collapsed.empty() || collapsed.back() == ' ')) continue;
    collapsed.push_back(c);
  }
  if (!collapsed.empty() && collapsed.back() == ' ') collapsed.pop_back();
  return collapsed;
}

namespace {

std::string primary_subtag(std::string_view tag) {
  std::string out;
  for (char c : tag) {
    if (c == '-' || c == '_') break;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

bool needs_translation(const Review& review, const Translator& translator,
                       const StandardizeOptions& options) {
  const auto target = primary_subtag(options.target);
  if (review.language) return primary_subtag(*review.language) != target;
  if (const auto detected = translator.detect(review.text)) {
    return primary_subtag(*detected) != target;
  }
  const bool looks_english = utf8::ascii_ratio(review.text) >= options.ascii_ratio_threshold;
  return (looks_english ? "en" : "und") != target;
}

StandardizeResult standardize_language(const ReviewCorpus& corpus, const Translator& translator,
                                       const StandardizeOptions& options) {
  StandardizeResult result;
  std::vector<Review> out;
  out.reserve(corpus.size());
  for (const auto& r : corpus.reviews()) {
    if (!needs_translation(r, translator, options)) {
      out.push_back(r);
      continue;
    }
    try {
      Review translated = r;
      translated.text = translator.translate(r.text, r.language, options.target);
      out.push_back(std::move(translated));
      ++result.translated;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TranslationFailure) throw;
      if (!options.skip_failures) {
        throw Error(ErrorCode::TranslationFailure,
                    "review " + r.review_id + ": " + std::string(e.what()));
      }
      result.skipped_review_ids.push_back(r.review_id);
    }
  }
  result.corpus = ReviewCorpus(std::move(out));
  return result;
}

}  // namespace msq

#include "msq/pipeline.hpp"

#include <iostream>
#include <map>
#include <sstream>

#include "msq/aspects.hpp"
#include "msq/embeddings.hpp"
#include "msq/error.hpp"
#include "msq/scoring.hpp"
#include "msq/textprep.hpp"
#include "msq/util.hpp"

namespace msq {

using json = nlohmann::json;
namespace fs = std::filesystem;

// -------------------------------------------------------------------- config

void PipelineConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); };
  if (!(threshold >= 0.0 && threshold <= 1.0)) fail("threshold must lie in [0, 1]");
  if (min_count < 1) fail("min_count must be >= 1");
  if (min_cluster_size < 1) fail("min_cluster_size must be >= 1");
  if (!(min_gain >= 0.0)) fail("min_gain must be >= 0");
  if (!(ascii_ratio >= 0.0 && ascii_ratio <= 1.0)) fail("ascii_ratio must lie in [0, 1]");
  if (translator != "identity" && translator != "dictionary") {
    fail("translator must be 'identity' or 'dictionary'");
  }
  if (translator == "dictionary" && translation_dictionary.empty()) {
    fail("translator 'dictionary' needs translation_dictionary");
  }
  if (target_language.empty()) fail("target_language must not be empty");
  if (threads < 1) fail("threads must be >= 1");
  for (const auto id : drop_ids) {
    if (id < 0) fail("drop_ids must be non-negative");
  }
}

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "corpus", "corpus_format", "vectors", "vector_limit", "stoplist", "lemma_rules",
      "lemma_exceptions", "entity_lexicon", "sentiment_lexicon", "negators",
      "translation_dictionary", "aspect_model", "dimension_model", "output_dir", "min_alnum",
      "ascii_ratio", "target_language", "translator", "translate_first",
      "skip_translation_failures", "lemmatize_first", "threshold", "vocab_mode", "min_count",
      "max_vocab", "min_cluster_size", "drop_ids", "min_gain", "seed", "shuffle", "restarts", "refine",
      "compat_literal_eq1", "compat_sum_eq3", "negation_window", "stages", "threads", "quiet"};
  return keys;
}

template <typename T>
T get_as(const json& doc, const std::string& key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::ConfigError, "config key '" + key + "' has the wrong type");
  }
}

std::uint64_t get_unsigned(const json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw Error(ErrorCode::ConfigError, "config key '" + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

fs::path resolve(const fs::path& base, const std::string& value) {
  if (value.empty()) return {};
  fs::path p(value);
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

std::string resolve_model(const fs::path& base, const std::string& value) {
  if (value.empty() || value == "default") return value;
  return resolve(base, value).string();
}

}  // namespace

PipelineConfig config_from_json(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) throw Error(ErrorCode::ConfigError, "config must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (!known_keys().contains(key)) {
      throw Error(ErrorCode::ConfigError, "unknown config key '" + key + "'");
    }
  }
  PipelineConfig c;
  auto path_of = [&](const char* key, fs::path& out) {
    if (doc.contains(key)) out = resolve(base_dir, get_as<std::string>(doc, key));
  };
  path_of("corpus", c.corpus);
  path_of("vectors", c.vectors);
  path_of("stoplist", c.stoplist);
  path_of("lemma_rules", c.lemma_rules);
  path_of("lemma_exceptions", c.lemma_exceptions);
  path_of("entity_lexicon", c.entity_lexicon);
  path_of("sentiment_lexicon", c.sentiment_lexicon);
  path_of("negators", c.negators);
  path_of("translation_dictionary", c.translation_dictionary);
  c.output_dir = resolve(base_dir, doc.value("output_dir", std::string("msq-out")));
  if (doc.contains("corpus_format")) {
    c.corpus_format = parse_corpus_format(get_as<std::string>(doc, "corpus_format"));
  }
  if (doc.contains("vector_limit")) c.vector_limit = get_unsigned(doc, "vector_limit");
  if (doc.contains("aspect_model")) {
    c.aspect_model = resolve_model(base_dir, get_as<std::string>(doc, "aspect_model"));
  }
  if (doc.contains("dimension_model")) {
    c.dimension_model = resolve_model(base_dir, get_as<std::string>(doc, "dimension_model"));
  }

  if (doc.contains("min_alnum")) c.min_alnum = get_unsigned(doc, "min_alnum");
  if (doc.contains("ascii_ratio")) c.ascii_ratio = get_as<double>(doc, "ascii_ratio");
  if (doc.contains("target_language")) c.target_language = get_as<std::string>(doc, "target_language");
  if (doc.contains("translator")) c.translator = get_as<std::string>(doc, "translator");
  if (doc.contains("translate_first")) c.translate_first = get_as<bool>(doc, "translate_first");
  if (doc.contains("skip_translation_failures")) {
    c.skip_translation_failures = get_as<bool>(doc, "skip_translation_failures");
  }
  if (doc.contains("lemmatize_first")) c.lemmatize_first = get_as<bool>(doc, "lemmatize_first");
  if (doc.contains("threshold")) c.threshold = get_as<double>(doc, "threshold");
  if (doc.contains("vocab_mode")) {
    c.vocab_mode = parse_vocabulary_source(get_as<std::string>(doc, "vocab_mode"));
  }
  if (doc.contains("min_count")) c.min_count = get_unsigned(doc, "min_count");
  if (doc.contains("max_vocab")) c.max_vocab = get_unsigned(doc, "max_vocab");
  if (doc.contains("min_cluster_size")) c.min_cluster_size = get_unsigned(doc, "min_cluster_size");
  if (doc.contains("drop_ids")) {
    for (const auto id : get_as<std::vector<std::int64_t>>(doc, "drop_ids")) {
      c.drop_ids.insert(static_cast<CommunityId>(id));
    }
  }
  if (doc.contains("min_gain")) c.min_gain = get_as<double>(doc, "min_gain");
  if (doc.contains("seed")) c.seed = get_unsigned(doc, "seed");
  if (doc.contains("shuffle")) c.shuffle = get_as<bool>(doc, "shuffle");
  if (doc.contains("restarts")) c.restarts = get_unsigned(doc, "restarts");
  if (doc.contains("refine")) c.refine = get_as<bool>(doc, "refine");
  if (doc.contains("compat_literal_eq1")) c.compat_literal_eq1 = get_as<bool>(doc, "compat_literal_eq1");
  if (doc.contains("compat_sum_eq3")) c.compat_sum_eq3 = get_as<bool>(doc, "compat_sum_eq3");
  if (doc.contains("negation_window")) c.negation_window = get_unsigned(doc, "negation_window");
  if (doc.contains("stages")) {
    const auto stages = get_as<std::vector<std::string>>(doc, "stages");
    c.run_ingest = c.run_cluster = c.run_score = false;
    for (const auto& s : stages) {
      if (s == "ingest") c.run_ingest = true;
      else if (s == "cluster") c.run_cluster = true;
      else if (s == "score") c.run_score = true;
      else throw Error(ErrorCode::ConfigError, "unknown stage '" + s + "'");
    }
  }
  if (doc.contains("threads")) c.threads = static_cast<unsigned>(get_unsigned(doc, "threads"));
  if (doc.contains("quiet")) c.quiet = get_as<bool>(doc, "quiet");
  c.validate();
  return c;
}

json parse_key_value_config(std::string_view content) {
  json doc = json::object();
  for (const auto& line : content_lines(content)) {
    const auto text = trim(line.text);
    if (text.front() == '[') continue;  // section header
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(line.number) +
                                              ": expected key = value");
    }
    const std::string key(trim(text.substr(0, eq)));
    const auto raw = trim(text.substr(eq + 1));
    json value;
    try {
      value = json::parse(raw);
    } catch (const json::parse_error&) {
      value = std::string(raw);  // bare word
    }
    doc[key] = value;
  }
  return doc;
}

PipelineConfig load_config(const fs::path& path) {
  std::string content;
  try {
    content = read_file(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
  const auto body = trim(content);
  json doc;
  if (!body.empty() && body.front() == '{') {
    try {
      doc = json::parse(body);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ConfigError, std::string("config: ") + e.what());
    }
  } else {
    doc = parse_key_value_config(content);
  }
  const auto base = fs::absolute(path).parent_path();
  return config_from_json(doc, base);
}

// ------------------------------------------------------------------ reporter

void Reporter::info(const std::string& message) {
  if (!quiet_) std::cerr << "[msq] " << message << '\n';
}

void Reporter::warn(const std::string& message) {
  warnings_.push_back(message);
  if (!quiet_) std::cerr << "[msq] warning: " << message << '\n';
}

// -------------------------------------------------------------------- stages

namespace {

constexpr std::string_view kManifest = "manifest.json";

json resource_hash(const fs::path& path, std::string_view builtin) {
  if (path.empty()) return "builtin:" + sha256_hex(builtin);
  return sha256_file(path);
}

json model_hash(const std::string& value, std::string_view builtin) {
  if (value.empty()) return nullptr;
  if (value == "default") return "builtin:" + sha256_hex(builtin);
  return sha256_file(value);
}

fs::path ingest_dir(const PipelineConfig& c) { return c.output_dir / "ingest"; }
fs::path cluster_dir(const PipelineConfig& c) { return c.output_dir / "cluster"; }
fs::path score_dir(const PipelineConfig& c) { return c.output_dir / "score"; }
fs::path ingested_corpus(const PipelineConfig& c) { return ingest_dir(c) / "corpus.jsonl"; }

std::string ingested_corpus_hash(const PipelineConfig& c) {
  const auto path = ingested_corpus(c);
  if (!fs::exists(path)) {
    throw Error(ErrorCode::IoError, "no ingested corpus at " + path.string() + "; run `msq ingest` first");
  }
  return sha256_file(path);
}

struct StageFile {
  std::string name;
  std::string content;
};

// Key material: everything that can change a stage's outputs.
struct Material {
  std::string stage;
  json params;
  json inputs;
  json upstream = json::object();

  json to_json() const {
    return {{"stage", stage}, {"version", kVersion}, {"params", params},
            {"inputs", inputs}, {"upstream", upstream}};
  }
  std::string key() const { return sha256_hex(to_json().dump()); }
};

bool up_to_date(const fs::path& dir, const std::string& key) {
  const auto manifest_path = dir / kManifest;
  if (!fs::exists(manifest_path)) return false;
  try {
    const auto manifest = json::parse(read_file(manifest_path));
    if (manifest.value("key", "") != key) return false;
    for (const auto& [name, hash] : manifest.at("outputs").items()) {
      const auto p = dir / name;
      if (!fs::exists(p) || sha256_file(p) != hash.get<std::string>()) return false;
    }
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

void publish(const fs::path& dir, const Material& material, std::uint64_t seed,
             const std::vector<StageFile>& files) {
  json outputs = json::object();
  for (const auto& f : files) {
    write_file_atomic(dir / f.name, f.content);
    outputs[f.name] = sha256_hex(f.content);
  }
  json manifest = material.to_json();
  manifest["key"] = material.key();
  manifest["config_hash"] = sha256_hex(material.params.dump());
  manifest["seed"] = seed;
  manifest["outputs"] = outputs;
  write_file_atomic(dir / kManifest, manifest.dump(2) + "\n");
}

TextConfig text_config(const PipelineConfig& c) {
  TextConfig t;
  t.stoplist = c.stoplist.empty() ? default_stoplist() : load_stoplist(c.stoplist);
  t.lemmatizer = Lemmatizer::load(c.lemma_rules, c.lemma_exceptions);
  t.lemmatize_first = c.lemmatize_first;
  return t;
}

json text_inputs(const PipelineConfig& c) {
  return {{"stoplist", resource_hash(c.stoplist, default_stoplist_text())},
          {"lemma_rules", resource_hash(c.lemma_rules, default_lemma_rules_text())},
          {"lemma_exceptions", resource_hash(c.lemma_exceptions, default_lemma_exceptions_text())}};
}

// ---- ingest

Material ingest_material(const PipelineConfig& c) {
  if (c.corpus.empty()) throw Error(ErrorCode::ConfigError, "config lacks 'corpus'");
  Material m;
  m.stage = "ingest";
  m.params = {{"corpus_format", c.corpus_format ? (*c.corpus_format == CorpusFormat::Csv ? "csv" : "jsonl")
                                                : "auto"},
              {"min_alnum", c.min_alnum},
              {"ascii_ratio", c.ascii_ratio},
              {"target_language", c.target_language},
              {"translator", c.translator},
              {"translate_first", c.translate_first},
              {"skip_translation_failures", c.skip_translation_failures}};
  if (!fs::exists(c.corpus)) {
    throw Error(ErrorCode::IoError, "corpus not readable: " + c.corpus.string());
  }
  m.inputs = {{"corpus", sha256_file(c.corpus)},
              {"translation_dictionary",
               c.translation_dictionary.empty() ? json(nullptr)
                                                : json(sha256_file(c.translation_dictionary))}};
  return m;
}

StageResult run_ingest(const PipelineConfig& c, Reporter& reporter, bool resume) {
  const auto material = ingest_material(c);
  StageResult result;
  result.key = material.key();
  if (resume && up_to_date(ingest_dir(c), result.key)) {
    reporter.info("ingest: up to date, skipped");
    result.skipped = true;
    return result;
  }

  const auto format = c.corpus_format ? *c.corpus_format
                                      : format_from_extension(c.corpus).value_or(CorpusFormat::Jsonl);
  reporter.info("ingest: loading " + c.corpus.string());
  const auto raw = load_corpus(c.corpus, format);

  std::unique_ptr<Translator> translator;
  if (c.translator == "dictionary") {
    translator = std::make_unique<DictionaryTranslator>(
        DictionaryTranslator::from_file(c.translation_dictionary));
  } else {
    translator = std::make_unique<IdentityTranslator>();
  }
  StandardizeOptions std_opts{c.target_language, c.ascii_ratio, c.skip_translation_failures};
  CleanOptions clean_opts{c.min_alnum};

  ReviewCorpus corpus;
  std::vector<std::string> removed;
  StandardizeResult translated;
  if (c.translate_first) {
    translated = standardize_language(raw, *translator, std_opts);
    auto cleaned = clean_reviews(translated.corpus, clean_opts);
    removed = std::move(cleaned.removed_review_ids);
    corpus = std::move(cleaned.corpus);
  } else {
    auto cleaned = clean_reviews(raw, clean_opts);
    removed = std::move(cleaned.removed_review_ids);
    translated = standardize_language(cleaned.corpus, *translator, std_opts);
    corpus = translated.corpus;
  }

  if (raw.empty()) reporter.warn("ingest: corpus is empty");
  for (const auto& id : translated.skipped_review_ids) {
    reporter.warn("ingest: translation failed for review " + id + "; dropped");
  }

  json histogram = json::object();
  std::map<std::size_t, std::size_t> counts;
  for (const auto& [listing, positions] : corpus.listing_index()) ++counts[positions.size()];
  for (const auto& [k, n] : counts) histogram[std::to_string(k)] = n;

  json stats = {{"input_reviews", raw.size()},
                {"kept", corpus.size()},
                {"removed", removed.size()},
                {"removed_review_ids", removed},
                {"translated", translated.translated},
                {"translation_skipped", translated.skipped_review_ids},
                {"listings", corpus.listing_index().size()},
                {"review_count_histogram", histogram},
                {"warnings", reporter.warnings()}};
  publish(ingest_dir(c), material, c.seed,
          {{"corpus.jsonl", serialize_corpus(corpus, CorpusFormat::Jsonl)},
           {"stats.json", stats.dump(2) + "\n"}});
  reporter.info("ingest: kept " + std::to_string(corpus.size()) + ", removed " +
                std::to_string(removed.size()) + ", translated " +
                std::to_string(translated.translated));
  result.report = stats;
  return result;
}

// ---- cluster

Material cluster_material(const PipelineConfig& c) {
  if (c.vectors.empty()) throw Error(ErrorCode::ConfigError, "config lacks 'vectors'");
  if (!fs::exists(c.vectors)) throw Error(ErrorCode::IoError, "vectors not readable: " + c.vectors.string());
  Material m;
  m.stage = "cluster";
  m.params = {{"lemmatize_first", c.lemmatize_first},
              {"threshold", c.threshold},
              {"vocab_mode", to_string(c.vocab_mode)},
              {"min_count", c.min_count},
              {"max_vocab", c.max_vocab},
              {"min_cluster_size", c.min_cluster_size},
              {"drop_ids", c.drop_ids},
              {"min_gain", c.min_gain},
              {"seed", c.seed},
              {"shuffle", c.shuffle},
              {"restarts", c.restarts},
              {"refine", c.refine},
              {"vector_limit", c.vector_limit ? json(*c.vector_limit) : json(nullptr)}};
  m.inputs = text_inputs(c);
  m.inputs["corpus"] = ingested_corpus_hash(c);
  m.inputs["vectors"] = sha256_file(c.vectors);
  m.inputs["entity_lexicon"] =
      c.entity_lexicon.empty() ? json(nullptr) : json(sha256_file(c.entity_lexicon));
  return m;
}

json community_list(const Partition& p, const std::vector<std::string>& names) {
  json out = json::array();
  for (std::size_t id = 0; id < p.community_count(); ++id) {
    json members = json::array();
    for (const auto node : p.communities()[id]) members.push_back(names[node]);
    out.push_back({{"id", id}, {"size", p.communities()[id].size()}, {"members", members}});
  }
  return out;
}

StageResult run_cluster(const PipelineConfig& c, Reporter& reporter, bool resume) {
  const auto material = cluster_material(c);
  StageResult result;
  result.key = material.key();
  if (resume && up_to_date(cluster_dir(c), result.key)) {
    reporter.info("cluster: up to date, skipped");
    result.skipped = true;
    return result;
  }
  const std::size_t warnings_before = reporter.warnings().size();

  const auto corpus = load_corpus(ingested_corpus(c), CorpusFormat::Jsonl);
  const auto text = text_config(c);
  reporter.info("cluster: preprocessing " + std::to_string(corpus.size()) + " reviews");
  const auto processed = preprocess_corpus(corpus, text, c.threads);

  VocabularyOptions vopts;
  vopts.mode = c.vocab_mode;
  vopts.min_count = c.min_count;
  vopts.max_vocab = c.max_vocab;
  if (!c.entity_lexicon.empty()) vopts.lexicon = load_entity_lexicon(c.entity_lexicon, text.lemmatizer);
  const auto vocab = build_vocabulary(processed, vopts);
  reporter.info("cluster: vocabulary of " + std::to_string(vocab.size()) + " entities");

  const auto store = load_vectors(c.vectors, c.vector_limit);
  const auto sims = similarity_matrix(vocab, store, c.threads);
  if (!sims.out_of_vocabulary.empty()) {
    reporter.warn("cluster: " + std::to_string(sims.out_of_vocabulary.size()) +
                  " entities have no vector and were excluded");
  }
  const auto graph = build_graph(sims.pairs, c.threshold, sims.tokens);
  const std::size_t n = graph.node_count();
  if (n >= 3 && graph.edge_count() == n * (n - 1) / 2) {
    reporter.warn("cluster: the similarity graph is fully connected at threshold " +
                  format_double(c.threshold) +
                  "; community detection cannot separate groups, raise the threshold");
  }

  LouvainOptions lopts{c.seed, c.shuffle, c.min_gain, c.restarts, c.refine};
  const auto found = louvain(graph, lopts);
  reporter.info("cluster: " + std::to_string(found.partition.community_count()) +
                " communities, Q = " + format_double(found.modularity));

  // Isolated nodes become unassigned along with undersized and dropped groups.
  std::set<CommunityId> drop = c.drop_ids;
  for (std::size_t i = 0; i < n; ++i) {
    if (graph.is_isolated(i)) drop.insert(found.partition.community_of(i));
  }
  for (const auto id : c.drop_ids) {
    if (static_cast<std::size_t>(id) >= found.partition.community_count()) {
      throw Error(ErrorCode::UnknownCommunityId, "drop_ids: no community " + std::to_string(id));
    }
  }
  const auto kept = prune_clusters(found.partition, c.min_cluster_size, drop);
  if (kept.community_count() == 0) reporter.warn("cluster: no community survived pruning");

  std::ostringstream edges;
  write_edge_list(edges, graph);

  json partition_json = json::object();
  json unassigned = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const auto id = kept.community_of(i);
    if (id == kUnassigned) {
      partition_json[graph.nodes()[i]] = nullptr;
      unassigned.push_back(graph.nodes()[i]);
    } else {
      partition_json[graph.nodes()[i]] = id;
    }
  }

  std::string table = "id,size,members\n";
  json draft = json::object();
  const std::size_t width = std::to_string(kept.community_count()).size();
  for (std::size_t id = 0; id < kept.community_count(); ++id) {
    std::string members;
    json seeds = json::array();
    for (const auto node : kept.communities()[id]) {
      if (!members.empty()) members.push_back(' ');
      members += graph.nodes()[node];
      seeds.push_back(graph.nodes()[node]);
    }
    table += std::to_string(id) + ',' + std::to_string(kept.communities()[id].size()) + ',' +
             csv_field(members) + '\n';
    auto label = std::to_string(id);
    label.insert(0, width - label.size(), '0');
    draft["cluster_" + label] = seeds;
  }

  json levels = json::array();
  for (const auto& l : found.levels) {
    levels.push_back({{"nodes", l.node_count}, {"communities", l.community_count},
                      {"moves", l.moves}, {"modularity", l.modularity}});
  }
  json warnings(std::vector<std::string>(reporter.warnings().begin() + static_cast<std::ptrdiff_t>(warnings_before),
                                         reporter.warnings().end()));
  json report = {{"seed", c.seed},
                 {"threshold", c.threshold},
                 {"vocabulary_size", vocab.size()},
                 {"out_of_vocabulary", sims.out_of_vocabulary},
                 {"zero_norm", sims.zero_norm},
                 {"nodes", n},
                 {"edges", graph.edge_count()},
                 {"total_weight", graph.total_weight()},
                 {"modularity", found.modularity},
                 {"levels", levels},
                 {"louvain_communities", community_list(found.partition, graph.nodes())},
                 {"kept_communities", community_list(kept, graph.nodes())},
                 {"unassigned", unassigned},
                 {"warnings", warnings}};

  publish(cluster_dir(c), material, c.seed,
          {{"edges.txt", edges.str()},
           {"partition.json", partition_json.dump(2) + "\n"},
           {"clusters.csv", table},
           {"report.json", report.dump(2) + "\n"},
           {"aspect_model.draft.json", draft.dump(2) + "\n"}});
  reporter.info("cluster: draft aspect model written to " +
                (cluster_dir(c) / "aspect_model.draft.json").string());
  result.report = report;
  return result;
}

// ---- score

Material score_material(const PipelineConfig& c, const json& upstream) {
  if (c.aspect_model.empty()) {
    throw Error(ErrorCode::ConfigError,
                "no aspect model configured: label the clusters in " +
                    (cluster_dir(c) / "aspect_model.draft.json").string() +
                    " and set 'aspect_model' to that file (or to \"default\")");
  }
  if (c.aspect_model != "default" && !fs::exists(c.aspect_model)) {
    throw Error(ErrorCode::ConfigError, "aspect model not found: " + c.aspect_model);
  }
  if (!c.dimension_model.empty() && c.dimension_model != "default" && !fs::exists(c.dimension_model)) {
    throw Error(ErrorCode::ConfigError, "dimension model not found: " + c.dimension_model);
  }
  Material m;
  m.stage = "score";
  m.params = {{"lemmatize_first", c.lemmatize_first},
              {"compat_literal_eq1", c.compat_literal_eq1},
              {"compat_sum_eq3", c.compat_sum_eq3},
              {"negation_window", c.negation_window}};
  m.inputs = text_inputs(c);
  m.inputs["corpus"] = ingested_corpus_hash(c);
  m.inputs["sentiment_lexicon"] = resource_hash(c.sentiment_lexicon, default_sentiment_lexicon_text());
  m.inputs["negators"] = resource_hash(c.negators, default_negators_text());
  m.inputs["aspect_model"] = model_hash(c.aspect_model, default_aspect_model_json());
  m.inputs["dimension_model"] = model_hash(c.dimension_model, default_dimension_model_json());
  m.upstream = upstream;
  return m;
}

StageResult run_score(const PipelineConfig& c, Reporter& reporter, bool resume, const json& upstream) {
  const auto material = score_material(c, upstream);
  StageResult result;
  result.key = material.key();
  if (resume && up_to_date(score_dir(c), result.key)) {
    reporter.info("score: up to date, skipped");
    result.skipped = true;
    return result;
  }

  const auto corpus = load_corpus(ingested_corpus(c), CorpusFormat::Jsonl);
  const auto text = text_config(c);
  const auto model = c.aspect_model == "default" ? load_default_model(text.lemmatizer)
                                                 : load_aspect_model(c.aspect_model, text.lemmatizer);
  DimensionModel dims;
  if (c.dimension_model == "default") {
    dims = load_default_dimensions(model);
  } else if (!c.dimension_model.empty()) {
    dims = map_dimensions(model, parse_dimension_mapping(read_file(c.dimension_model)));
  }
  const auto lexicon = load_sentiment_lexicon(c.sentiment_lexicon, c.negators, c.negation_window,
                                              text.lemmatizer);

  reporter.info("score: preprocessing " + std::to_string(corpus.size()) + " reviews");
  const auto processed = preprocess_corpus(corpus, text, c.threads);

  // Mentions are occurrences of aspect seed words.
  EntityVocabulary vocab;
  vocab.source = VocabularySource::Lexicon;
  const auto freq = lemma_frequencies(processed);
  for (const auto& seed : model.seeds()) {
    if (const auto it = freq.find(seed); it != freq.end()) vocab.entries.emplace(seed, it->second);
  }
  const VocabularyRecognizer recognizer(std::move(vocab));
  const LexiconSentimentModel sentiment(lexicon);
  ScoringOptions opts{c.compat_literal_eq1, c.compat_sum_eq3, c.threads};
  const auto table = score_corpus(processed, recognizer, sentiment, model, dims, opts);
  if (table.mentions == 0) reporter.warn("score: no aspect seed word occurs in the corpus");

  publish(score_dir(c), material, c.seed,
          {{"scores.json", score_table_json(table)},
           {"scores.csv", score_table_csv(table)},
           {"review_scores.csv", review_scores_csv(table)}});
  result.report = {{"listings", table.listings.size()},
                   {"reviews", table.reviews.size()},
                   {"mentions", table.mentions},
                   {"unassigned_mentions", table.unassigned_mentions}};
  reporter.info("score: " + std::to_string(table.listings.size()) + " listings scored from " +
                std::to_string(table.mentions) + " mentions");
  return result;
}

}  // namespace

StageResult cmd_ingest(const PipelineConfig& config, Reporter& reporter) {
  config.validate();
  return run_ingest(config, reporter, false);
}

StageResult cmd_cluster(const PipelineConfig& config, Reporter& reporter) {
  config.validate();
  return run_cluster(config, reporter, false);
}

StageResult cmd_score(const PipelineConfig& config, Reporter& reporter) {
  config.validate();
  return run_score(config, reporter, false, json::object());
}

RunResult cmd_run(const PipelineConfig& config, Reporter& reporter) {
  config.validate();
  RunResult run;
  if (config.run_ingest) run.stages.emplace_back("ingest", run_ingest(config, reporter, true));
  json upstream = json::object();
  if (config.run_cluster) {
    auto r = run_cluster(config, reporter, true);
    upstream["cluster"] = r.key;
    run.stages.emplace_back("cluster", std::move(r));
  }
  if (config.run_score) {
    if (config.aspect_model.empty()) {
      reporter.info("run: paused for labeling; edit " +
                    (cluster_dir(config) / "aspect_model.draft.json").string() +
                    ", set 'aspect_model' in the config and re-run");
      run.paused_for_labeling = true;
      return run;
    }
    run.stages.emplace_back("score", run_score(config, reporter, true, upstream));
  }
  return run;
}

void write_default_resources(const fs::path& dir) {
  write_file_atomic(dir / "stoplist.txt", default_stoplist_text());
  write_file_atomic(dir / "lemma_rules.tsv", default_lemma_rules_text());
  write_file_atomic(dir / "lemma_exceptions.tsv", default_lemma_exceptions_text());
  write_file_atomic(dir / "sentiment_lexicon.tsv", default_sentiment_lexicon_text());
  write_file_atomic(dir / "negators.txt", default_negators_text());
  write_file_atomic(dir / "aspect_model.json", default_aspect_model_json());
  write_file_atomic(dir / "dimension_model.json", default_dimension_model_json());
}

}  // namespace msq

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "msq/corpus.hpp"
#include "msq/entities.hpp"
#include "msq/lexnet.hpp"

namespace msq {

inline constexpr std::string_view kVersion = "msq 1.0.0";

/// Every knob of the three pipelines. Paths are absolute after loading
/// (relative entries resolve against the config file's directory); an empty
/// resource path selects the shipped default.
struct PipelineConfig {
  std::filesystem::path corpus;
  std::optional<CorpusFormat> corpus_format;  // inferred from extension when unset
  std::filesystem::path vectors;
  std::optional<std::size_t> vector_limit;
  std::filesystem::path stoplist;
  std::filesystem::path lemma_rules;
  std::filesystem::path lemma_exceptions;
  std::filesystem::path entity_lexicon;
  std::filesystem::path sentiment_lexicon;
  std::filesystem::path negators;
  std::filesystem::path translation_dictionary;
  /// "" (none), "default" (built-in tables) or a file path.
  std::string aspect_model;
  std::string dimension_model;
  std::filesystem::path output_dir = "msq-out";

  // ingest
  std::size_t min_alnum = 1;
  double ascii_ratio = 0.9;
  std::string target_language = "en";
  std::string translator = "identity";  // identity | dictionary
  bool translate_first = false;
  bool skip_translation_failures = false;

  // text
  bool lemmatize_first = false;

  // cluster
  double threshold = kDefaultSimilarityThreshold;
  VocabularySource vocab_mode = VocabularySource::Frequency;
  std::uint64_t min_count = 5;
  std::size_t max_vocab = 0;
  std::size_t min_cluster_size = 2;
  std::set<CommunityId> drop_ids;
  double min_gain = 1e-7;
  std::uint64_t seed = 0;
  bool shuffle = false;
  std::size_t restarts = 0;
  bool refine = true;

  // score
  bool compat_literal_eq1 = false;
  bool compat_sum_eq3 = false;
  std::size_t negation_window = 3;

  // stage toggles for `run`
  bool run_ingest = true;
  bool run_cluster = true;
  bool run_score = true;

  // runtime only; never part of any hash
  unsigned threads = 1;
  bool quiet = false;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// Config file: a JSON object, or `key = value` lines ('#' comments,
/// `[section]` headers ignored). Unknown keys are rejected.
PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);
nlohmann::json parse_key_value_config(std::string_view content);

/// Progress and warning sink; warnings are kept for callers and tests.
class Reporter {
 public:
  explicit Reporter(bool quiet = false) : quiet_(quiet) {}
  void info(const std::string& message);
  void warn(const std::string& message);
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  bool quiet_;
  std::vector<std::string> warnings_;
};

struct StageResult {
  bool skipped = false;
  std::string key;
  nlohmann::json report;
};

StageResult cmd_ingest(const PipelineConfig& config, Reporter& reporter);
StageResult cmd_cluster(const PipelineConfig& config, Reporter& reporter);
StageResult cmd_score(const PipelineConfig& config, Reporter& reporter);

struct RunResult {
  std::vector<std::pair<std::string, StageResult>> stages;
  /// Stopped after clustering because no aspect model is configured.
  bool paused_for_labeling = false;
};

/// ingest -> cluster -> score, skipping stages whose manifest key and output
/// hashes are unchanged.
RunResult cmd_run(const PipelineConfig& config, Reporter& reporter);

/// Writes every shipped default resource into `dir`.
void write_default_resources(const std::filesystem::path& dir);

}  // namespace msq

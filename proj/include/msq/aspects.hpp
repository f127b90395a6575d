#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "msq/lexnet.hpp"
#include "msq/textprep.hpp"

namespace msq {

/// Aspect label -> seed lemmas, with the inverse lookup. Seed sets are
/// non-empty and pairwise disjoint.
class AspectModel {
 public:
  AspectModel() = default;
  /// Throws OverlappingAspects / ConfigError on a disjointness or emptiness violation.
  explicit AspectModel(std::map<std::string, std::set<std::string>> aspects);

  const std::map<std::string, std::set<std::string>>& aspects() const { return aspects_; }
  const std::map<std::string, std::string>& lemma_to_aspect() const { return lemma_to_aspect_; }
  std::optional<std::string> aspect_of(std::string_view lemma) const;
  bool has_aspect(std::string_view label) const { return aspects_.contains(std::string(label)); }
  std::size_t size() const { return aspects_.size(); }
  bool empty() const { return aspects_.empty(); }
  /// Every seed lemma, sorted.
  std::set<std::string> seeds() const;

 private:
  std::map<std::string, std::set<std::string>> aspects_;
  std::map<std::string, std::string> lemma_to_aspect_;
};

struct LabelResult {
  AspectModel model;
  std::vector<std::string> warnings;
};

/// Turns labeled communities into aspects. `node_names[i]` is the lemma of
/// partition node i. Unlabeled communities are dropped with a warning.
LabelResult label_clusters(const Partition& partition, std::span<const std::string> node_names,
                           const std::map<CommunityId, std::string>& labels);

/// JSON {aspect_label: [seed terms]}; seeds are normalized by `lemmatizer`.
AspectModel parse_aspect_model(std::string_view json_text, const Lemmatizer& lemmatizer);
AspectModel load_aspect_model(const std::filesystem::path& path, const Lemmatizer& lemmatizer);
std::string serialize_aspect_model(const AspectModel& model);

/// The shipped 18-aspect model.
AspectModel load_default_model(const Lemmatizer& lemmatizer = default_lemmatizer());
std::string_view default_aspect_model_json();

struct Dimension {
  std::string description;
  std::set<std::string> aspects;

  bool operator==(const Dimension&) const = default;
};

/// Dimension label -> member aspects.
struct DimensionModel {
  std::map<std::string, Dimension> dimensions;

  std::size_t size() const { return dimensions.size(); }
  bool empty() const { return dimensions.empty(); }
};

/// JSON {dimension_label: {description, aspects: [...]}}.
DimensionModel parse_dimension_mapping(std::string_view json_text);
std::string serialize_dimension_model(const DimensionModel& dims);

/// Validates the mapping against `model`; throws UnknownAspect / OverlappingDimensions.
DimensionModel map_dimensions(const AspectModel& model, const DimensionModel& mapping);
DimensionModel load_default_dimensions(const AspectModel& model);
std::string_view default_dimension_model_json();

}  // namespace msq

#include "msq/aspects.hpp"

#include <json.hpp>

#include "msq/error.hpp"
#include "msq/util.hpp"

namespace msq {

using json = nlohmann::json;

AspectModel::AspectModel(std::map<std::string, std::set<std::string>> aspects)
    : aspects_(std::move(aspects)) {
  for (const auto& [label, seeds] : aspects_) {
    if (label.empty()) throw Error(ErrorCode::ConfigError, "empty aspect label");
    if (seeds.empty()) throw Error(ErrorCode::ConfigError, "aspect '" + label + "' has no seeds");
    for (const auto& seed : seeds) {
      const auto [it, inserted] = lemma_to_aspect_.emplace(seed, label);
      if (!inserted) {
        throw Error(ErrorCode::OverlappingAspects,
                    "seed '" + seed + "' belongs to both '" + it->second + "' and '" + label + "'");
      }
    }
  }
}

std::optional<std::string> AspectModel::aspect_of(std::string_view lemma) const {
  const auto it = lemma_to_aspect_.find(std::string(lemma));
  if (it == lemma_to_aspect_.end()) return std::nullopt;
  return it->second;
}

std::set<std::string> AspectModel::seeds() const {
  std::set<std::string> out;
  for (const auto& [lemma, label] : lemma_to_aspect_) out.insert(lemma);
  return out;
}

LabelResult label_clusters(const Partition& partition, std::span<const std::string> node_names,
                           const std::map<CommunityId, std::string>& labels) {
  if (node_names.size() != partition.node_count()) {
    throw Error(ErrorCode::PartitionMismatch, "node name count differs from partition size");
  }
  std::set<std::string> used;
  for (const auto& [id, label] : labels) {
    if (id < 0 || static_cast<std::size_t>(id) >= partition.community_count()) {
      throw Error(ErrorCode::UnknownCommunityId, "no community with id " + std::to_string(id));
    }
    if (!used.insert(label).second) {
      throw Error(ErrorCode::DuplicateLabel, "label '" + label + "' used more than once");
    }
  }

  LabelResult result;
  std::map<std::string, std::set<std::string>> aspects;
  for (std::size_t c = 0; c < partition.community_count(); ++c) {
    const auto it = labels.find(static_cast<CommunityId>(c));
    if (it == labels.end()) {
      result.warnings.push_back("community " + std::to_string(c) + " has no label; dropped");
      continue;
    }
    auto& seeds = aspects[it->second];
    for (const auto node : partition.communities()[c]) seeds.insert(node_names[node]);
  }
  result.model = AspectModel(std::move(aspects));
  return result;
}

AspectModel parse_aspect_model(std::string_view json_text, const Lemmatizer& lemmatizer) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, std::string("aspect model: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ConfigError, "aspect model must be a JSON object");
  std::map<std::string, std::set<std::string>> aspects;
  for (const auto& [label, seeds] : doc.items()) {
    if (!seeds.is_array()) {
      throw Error(ErrorCode::ConfigError, "aspect '" + label + "' must map to an array of seeds");
    }
    auto& out = aspects[label];
    for (const auto& seed : seeds) {
      if (!seed.is_string()) throw Error(ErrorCode::ConfigError, "seed must be a string");
      const auto lemmas = normalize_term(seed.get<std::string>(), lemmatizer);
      if (lemmas.size() != 1) {
        throw Error(ErrorCode::ConfigError, "seed '" + seed.get<std::string>() + "' of '" + label +
                                                "' does not normalize to a single lemma");
      }
      out.insert(lemmas.front());
    }
  }
  return AspectModel(std::move(aspects));
}

AspectModel load_aspect_model(const std::filesystem::path& path, const Lemmatizer& lemmatizer) {
  return parse_aspect_model(read_file(path), lemmatizer);
}

std::string serialize_aspect_model(const AspectModel& model) {
  json doc = json::object();
  for (const auto& [label, seeds] : model.aspects()) doc[label] = seeds;
  return doc.dump(2) + "\n";
}

AspectModel load_default_model(const Lemmatizer& lemmatizer) {
  return parse_aspect_model(default_aspect_model_json(), lemmatizer);
}

DimensionModel parse_dimension_mapping(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, std::string("dimension model: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ConfigError, "dimension model must be a JSON object");
  DimensionModel dims;
  for (const auto& [label, body] : doc.items()) {
    Dimension d;
    json aspects;
    if (body.is_array()) {
      aspects = body;
    } else if (body.is_object()) {
      d.description = body.value("description", "");
      aspects = body.value("aspects", json::array());
    } else {
      throw Error(ErrorCode::ConfigError, "dimension '" + label + "' must be an object");
    }
    for (const auto& a : aspects) {
      if (!a.is_string()) throw Error(ErrorCode::ConfigError, "aspect label must be a string");
      d.aspects.insert(a.get<std::string>());
    }
    dims.dimensions.emplace(label, std::move(d));
  }
  return dims;
}

std::string serialize_dimension_model(const DimensionModel& dims) {
  json doc = json::object();
  for (const auto& [label, d] : dims.dimensions) {
    doc[label] = {{"description", d.description}, {"aspects", d.aspects}};
  }
  return doc.dump(2) + "\n";
}

DimensionModel map_dimensions(const AspectModel& model, const DimensionModel& mapping) {
  std::map<std::string, std::string> owner;
  for (const auto& [label, d] : mapping.dimensions) {
    for (const auto& aspect : d.aspects) {
      if (!model.has_aspect(aspect)) {
        throw Error(ErrorCode::UnknownAspect,
                    "dimension '" + label + "' references unknown aspect '" + aspect + "'");
      }
      const auto [it, inserted] = owner.emplace(aspect, label);
      if (!inserted) {
        throw Error(ErrorCode::OverlappingDimensions, "aspect '" + aspect + "' is in both '" +
                                                          it->second + "' and '" + label + "'");
      }
    }
  }
  return mapping;
}

DimensionModel load_default_dimensions(const AspectModel& model) {
  return map_dimensions(model, parse_dimension_mapping(default_dimension_model_json()));
}

}  // namespace msq

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "assetval/features/features.hpp"
#include "assetval/tabular/models.hpp"

namespace assetval::tabular {

using TabularModel = std::variant<MeanBaseline, GbtModel, RfModel, AdaModel>;

std::string model_type_name(const TabularModel& model);

// Versioned JSON envelope with a model_type discriminator and the feature
// schema embedded for shape validation at predict time.
struct ModelFile {
  TabularModel model;
  std::optional<features::FeatureSchema> schema;
  std::string model_id;
  std::uint64_t seed = 0;

  nlohmann::ordered_json to_json() const;
  static ModelFile from_json(const nlohmann::json& j);

  void save(const std::filesystem::path& path) const;
  static ModelFile load(const std::filesystem::path& path);

  std::vector<double> predict_prices(const Matrix& X) const;
};

}  // namespace assetval::tabular

#include "assetval/tabular/serialize.hpp"

#include <fstream>

#include "assetval/common/error.hpp"

namespace assetval::tabular {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json tree_to_json(const RegressionTree& tree) {
  ordered_json nodes = ordered_json::array();
  for (const auto& n : tree.nodes)
    nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value});
  return nodes;
}

RegressionTree tree_from_json(const json& j) {
  RegressionTree tree;
  for (const auto& row : j) {
    TreeNode n;
    n.feature = row.at(0).get<std::int32_t>();
    n.threshold = row.at(1).get<double>();
    n.left = row.at(2).get<std::int32_t>();
    n.right = row.at(3).get<std::int32_t>();
    n.value = row.at(4).get<double>();
    tree.nodes.push_back(n);
  }
  return tree;
}

}  // namespace

std::string model_type_name(const TabularModel& model) {
  if (std::holds_alternative<MeanBaseline>(model)) return "mean";
  if (std::holds_alternative<GbtModel>(model)) return "gbt";
  if (std::holds_alternative<RfModel>(model)) return "random_forest";
  return "adaboost_r2";
}

ordered_json ModelFile::to_json() const {
  ordered_json j;
  j["schema_version"] = 1;
  j["model_type"] = model_type_name(model);
  j["model_id"] = model_id;
  j["seed"] = seed;
  j["feature_schema"] = schema.has_value() ? schema->to_json() : ordered_json(nullptr);

  ordered_json payload;
  if (const auto* mean = std::get_if<MeanBaseline>(&model)) {
    payload["log_price_mean"] = mean->log_price_mean;
  } else if (const auto* gbt = std::get_if<GbtModel>(&model)) {
    payload["learning_rate"] = gbt->learning_rate;
    payload["base_score"] = gbt->base_score;
    payload["n_features"] = gbt->n_features;
    payload["stage_losses"] = gbt->stage_losses;
    ordered_json trees = ordered_json::array();
    for (const auto& t : gbt->trees) trees.push_back(tree_to_json(t));
    payload["trees"] = std::move(trees);
  } else if (const auto* rf = std::get_if<RfModel>(&model)) {
    payload["n_features"] = rf->n_features;
    ordered_json trees = ordered_json::array();
    for (const auto& t : rf->trees) trees.push_back(tree_to_json(t));
    payload["trees"] = std::move(trees);
  } else {
    const auto& ada = std::get<AdaModel>(model);
    payload["n_features"] = ada.n_features;
    ordered_json stages = ordered_json::array();
    for (const auto& s : ada.stages) {
      ordered_json stage;
      stage["log_inv_beta"] = s.log_inv_beta;
      stage["tree"] = tree_to_json(s.tree);
      stages.push_back(std::move(stage));
    }
    payload["stages"] = std::move(stages);
  }
  j["payload"] = std::move(payload);
  return j;
}

ModelFile ModelFile::from_json(const json& j) {
  ModelFile file;
  file.model_id = j.value("model_id", "");
  file.seed = j.value("seed", 0ULL);
  if (j.contains("feature_schema") && !j["feature_schema"].is_null())
    file.schema = features::FeatureSchema::from_json(j["feature_schema"]);

  const std::string type = j.at("model_type").get<std::string>();
  const json& payload = j.at("payload");
  if (type == "mean") {
    file.model = MeanBaseline{payload.at("log_price_mean").get<double>()};
  } else if (type == "gbt") {
    GbtModel gbt;
    gbt.learning_rate = payload.at("learning_rate").get<double>();
    gbt.base_score = payload.at("base_score").get<double>();
    gbt.n_features = payload.at("n_features").get<std::size_t>();
    gbt.stage_losses = payload.value("stage_losses", std::vector<double>{});
    for (const auto& t : payload.at("trees")) gbt.trees.push_back(tree_from_json(t));
    file.model = std::move(gbt);
  } else if (type == "random_forest") {
    RfModel rf;
    rf.n_features = payload.at("n_features").get<std::size_t>();
    for (const auto& t : payload.at("trees")) rf.trees.push_back(tree_from_json(t));
    file.model = std::move(rf);
  } else if (type == "adaboost_r2") {
    AdaModel ada;
    ada.n_features = payload.at("n_features").get<std::size_t>();
    for (const auto& s : payload.at("stages"))
      ada.stages.push_back({tree_from_json(s.at("tree")), s.at("log_inv_beta").get<double>()});
    file.model = std::move(ada);
  } else {
    raise(Errc::InvalidValue, "unknown model_type: " + type);
  }
  return file;
}

void ModelFile::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) raise(Errc::IoFailure, "cannot open " + path.string());
  out << to_json().dump(1) << '\n';
}

ModelFile ModelFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::IoFailure, "cannot open " + path.string());
  json j;
  in >> j;
  return from_json(j);
}

std::vector<double> ModelFile::predict_prices(const Matrix& X) const {
  return std::visit(
      [&](const auto& m) -> std::vector<double> {
        using M = std::decay_t<decltype(m)>;
        if constexpr (!std::is_same_v<M, MeanBaseline>) {
          check_feature_count(m.n_features, X.cols);
        }
        return tabular::predict_prices(m, X);
      },
      model);
}

}  // namespace assetval::tabular

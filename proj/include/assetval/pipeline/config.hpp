#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "assetval/dataset/transaction.hpp"
#include "assetval/features/features.hpp"
#include "assetval/knowledge/knowledge.hpp"
#include "assetval/neural/model.hpp"
#include "assetval/neural/train.hpp"
#include "assetval/tabular/models.hpp"

namespace assetval::pipeline {

// Everything a pipeline run needs, loadable from a JSON config file; CLI
// flags override individual fields after load.
struct PipelineConfig {
  std::filesystem::path transactions;
  std::filesystem::path rates;
  knowledge::KnowledgePaths knowledge;
  std::filesystem::path out_dir = ".";
  std::optional<dataset::AssetClass> asset_class;

  double dev_frac = 0.05;
  double test_frac = 0.05;

  features::FamilySet enabled_families = features::all_families();

  std::string model_family = "gbt";  // mean | gbt | random_forest | adaboost_r2 | transformer
  std::string model_id;              // defaults to the family name
  tabular::GbtConfig gbt;
  tabular::RfConfig rf;
  tabular::AdaConfig ada;
  std::size_t recency_t = 0;  // newest-T upweighting for tabular training
  double recency_factor = 2.0;

  neural::ModelConfig transformer;
  neural::FineTuneSchedule schedule;
  bool mlm_pretrain = false;
  neural::MlmConfig mlm;

  std::uint64_t seed = 0;

  static PipelineConfig load(const std::filesystem::path& path);
  void apply_json(const nlohmann::json& j);

  std::filesystem::path in_out(const std::string& name) const { return out_dir / name; }
};

}  // namespace assetval::pipeline

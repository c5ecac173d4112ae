#include "assetval/pipeline/config.hpp"

#include <fstream>

#include "assetval/common/error.hpp"

namespace assetval::pipeline {

namespace {

using nlohmann::json;

void read_path(const json& j, const char* key, std::filesystem::path& out) {
  if (j.contains(key) && !j[key].is_null()) out = j[key].get<std::string>();
}

void read_optional_path(const json& j, const char* key,
                        std::optional<std::filesystem::path>& out) {
  if (j.contains(key) && !j[key].is_null()) out = std::filesystem::path(j[key].get<std::string>());
}

template <typename T>
void read_value(const json& j, const char* key, T& out) {
  if (j.contains(key) && !j[key].is_null()) out = j[key].get<T>();
}

}  // namespace

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::IoFailure, "cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    raise(Errc::MalformedLine, path.string() + ": " + e.what());
  }
  PipelineConfig config;
  config.apply_json(j);
  return config;
}

void PipelineConfig::apply_json(const nlohmann::json& j) {
  if (j.contains("paths")) {
    const auto& p = j["paths"];
    read_path(p, "transactions", transactions);
    read_path(p, "rates", rates);
    read_path(p, "out_dir", out_dir);
    read_optional_path(p, "words", knowledge.words);
    read_optional_path(p, "adult_words", knowledge.adult_words);
    read_optional_path(p, "trademarks", knowledge.trademarks);
    read_optional_path(p, "tld_counts", knowledge.tld_counts);
    read_optional_path(p, "segment_lexicon", knowledge.segment_lexicon);
  }
  if (j.contains("asset_class") && !j["asset_class"].is_null())
    asset_class = dataset::asset_class_from_name(j["asset_class"].get<std::string>());
  if (j.contains("split")) {
    read_value(j["split"], "dev_frac", dev_frac);
    read_value(j["split"], "test_frac", test_frac);
  }
  if (j.contains("features") && j["features"].contains("disabled")) {
    for (const auto& name : j["features"]["disabled"])
      enabled_families.erase(features::family_from_name(name.get<std::string>()));
  }
  if (j.contains("model")) {
    const auto& m = j["model"];
    read_value(m, "family", model_family);
    read_value(m, "model_id", model_id);
    read_value(m, "n_trees", gbt.n_trees);
    read_value(m, "learning_rate", gbt.learning_rate);
    read_value(m, "max_depth", gbt.max_depth);
    read_value(m, "min_leaf", gbt.min_leaf);
    read_value(m, "rf_n_trees", rf.n_trees);
    read_value(m, "rf_max_depth", rf.max_depth);
    read_value(m, "rf_bootstrap", rf.bootstrap);
    read_value(m, "rf_threads", rf.n_threads);
    read_value(m, "ada_n_stages", ada.n_stages);
    read_value(m, "ada_tree_depth", ada.tree_depth);
    read_value(m, "recency_t", recency_t);
    read_value(m, "recency_factor", recency_factor);
  }
  if (j.contains("transformer")) {
    const auto& t = j["transformer"];
    read_value(t, "d_model", transformer.d_model);
    read_value(t, "n_layers", transformer.n_layers);
    read_value(t, "n_heads", transformer.n_heads);
    read_value(t, "ff_dim", transformer.ff_dim);
    read_value(t, "max_len", transformer.max_len);
    read_value(t, "dropout", transformer.dropout);
    if (t.contains("variant"))
      transformer.variant = neural::variant_from_name(t["variant"].get<std::string>());
    read_value(t, "stage1_epochs", schedule.stage1_epochs);
    read_value(t, "stage2_epochs", schedule.stage2_epochs);
    read_value(t, "T", schedule.recent_t);
    read_value(t, "learning_rate", schedule.learning_rate);
    read_value(t, "batch_size", schedule.batch_size);
    read_value(t, "mlm_pretrain", mlm_pretrain);
    read_value(t, "mlm_epochs", mlm.epochs);
    read_value(t, "mlm_mask_prob", mlm.mask_prob);
  }
  read_value(j, "seed", seed);
}

}  // namespace assetval::pipeline

#include "assetval/neural/checkpoint.hpp"

#include <fstream>

#include "assetval/common/error.hpp"

namespace assetval::neural {

void save_checkpoint(const std::filesystem::path& path, const TransformerRegressor& model,
                     const std::string& model_id, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["model_type"] = "transformer";
  j["model_id"] = model_id;
  j["seed"] = seed;
  j["config"] = model.config().to_json();
  j["vocab"] = model.vocab().to_json();
  nlohmann::ordered_json tensors = nlohmann::ordered_json::array();
  for (const auto& t : model.tensors())
    tensors.push_back({{"name", t.name}, {"rows", t.rows}, {"cols", t.cols}});
  j["tensors"] = std::move(tensors);
  j["params"] = model.params();

  std::ofstream out(path);
  if (!out) raise(Errc::IoFailure, "cannot open " + path.string());
  out << j.dump() << '\n';
}

LoadedCheckpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::IoFailure, "cannot open " + path.string());
  nlohmann::json j;
  in >> j;
  if (j.value("model_type", "") != "transformer")
    raise(Errc::InvalidValue, path.string() + " is not a transformer checkpoint");

  auto vocab = TokenizerVocab::from_json(j.at("vocab"));
  auto config = ModelConfig::from_json(j.at("config"));
  LoadedCheckpoint loaded{TransformerRegressor(std::move(vocab), config, 0),
                          j.value("model_id", ""), j.value("seed", 0ULL)};
  const auto params = j.at("params").get<std::vector<double>>();
  if (params.size() != loaded.model.params().size())
    raise(Errc::ShapeMismatch, "checkpoint parameter count mismatch");
  loaded.model.params() = params;
  return loaded;
}

}  // namespace assetval::neural

#pragma once

#include <filesystem>
#include <string>

#include "assetval/neural/model.hpp"

namespace assetval::neural {

// Versioned JSON tensor container: vocab, config, registry, and a flat
// parameter array.
void save_checkpoint(const std::filesystem::path& path, const TransformerRegressor& model,
                     const std::string& model_id, std::uint64_t seed);

struct LoadedCheckpoint {
  TransformerRegressor model;
  std::string model_id;
  std::uint64_t seed = 0;
};

LoadedCheckpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace assetval::neural

#pragma once

#include <cstdint>
#include <filesystem>

#include "assetval/dataset/transaction.hpp"

namespace assetval::pipeline {

// Deterministic synthetic-corpus generator for tests and demos. Log prices
// are linear in the observable identifier features plus gaussian noise, so
// trained models have real signal to find. The corpus includes the dirt the
// ingest stage exists to remove: bundles, zero prices, unqualified auctions,
// hashed names, foreign currencies, wash cycles, and rapid resales.
struct SynthOptions {
  std::size_t n = 2000;
  dataset::AssetClass asset_class = dataset::AssetClass::DomainName;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
  double noise_sigma = 0.4;
};

struct SynthOutputs {
  std::filesystem::path transactions;
  std::filesystem::path rates;
  std::filesystem::path words;
  std::filesystem::path adult_words;
  std::filesystem::path trademarks;
  std::filesystem::path tld_counts;
};

SynthOutputs generate_synthetic_corpus(const SynthOptions& options);

}  // namespace assetval::pipeline

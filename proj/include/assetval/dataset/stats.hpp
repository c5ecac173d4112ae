#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "assetval/dataset/transaction.hpp"

namespace assetval::dataset {

struct MonthlyPoint {
  int year = 0;
  unsigned month = 0;
  std::size_t volume = 0;
  std::optional<double> median_price;  // absent for empty months
};

struct DatasetStats {
  std::size_t transaction_count = 0;
  double per_asset_mean = 0.0;
  std::size_t per_asset_max = 0;
  double price_min = 0.0;
  double price_median = 0.0;
  double price_max = 0.0;
  double price_stddev = 0.0;
  std::size_t name_length_min = 0;
  std::size_t name_length_median = 0;
  std::size_t name_length_max = 0;
  std::int64_t first_timestamp = 0;
  std::int64_t last_timestamp = 0;
  std::size_t suffix_count = 0;
  std::map<std::string, double> platform_share;
  std::vector<MonthlyPoint> monthly;  // covers every calendar month in range
};

// Medians use the lower middle element for even counts; the standard
// deviation uses the population formula.
DatasetStats compute_statistics(std::span<const Transaction> txns);

}  // namespace assetval::dataset

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "assetval/dataset/transaction.hpp"

namespace assetval::dataset {

// Daily rate-to-target quotes keyed by (currency ticker, UTC day). The target
// currency is fixed per asset class: USD for domain names, CNY for email
// addresses, ETH for NFT identifiers.
struct ExchangeRateTable {
  std::map<std::string, std::map<std::int64_t, double>> entries;

  static std::string target_currency(AssetClass asset_class);

  // CSV with header `currency,date,rate_to_target`, dates as YYYY-MM-DD.
  static ExchangeRateTable load_csv(const std::filesystem::path& path);

  void add(const std::string& currency, std::int64_t day, double rate);

  // Exact day, else nearest earlier day within seven days.
  double rate_on(const std::string& currency, std::int64_t day) const;
};

// Converts price into the class target currency using the rate dated at the
// transaction's UTC date. A transaction already in the target currency passes
// through unchanged.
Transaction normalize_currency(const Transaction& txn, const ExchangeRateTable& rates);

}  // namespace assetval::dataset

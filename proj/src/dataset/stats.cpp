#include "assetval/dataset/stats.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "assetval/common/error.hpp"
#include "assetval/common/text.hpp"
#include "assetval/common/time.hpp"

namespace assetval::dataset {

namespace {

template <typename T>
T lower_median(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];
}

}  // namespace

DatasetStats compute_statistics(std::span<const Transaction> txns) {
  if (txns.empty()) raise(Errc::EmptyInput, "compute_statistics");
  DatasetStats stats;
  stats.transaction_count = txns.size();

  std::map<std::string, std::size_t> per_asset;
  std::vector<double> prices;
  std::vector<std::size_t> name_lengths;
  std::set<std::string> suffixes;
  std::map<std::string, std::size_t> platform_counts;
  std::map<std::int64_t, std::vector<double>> by_month;

  prices.reserve(txns.size());
  name_lengths.reserve(txns.size());
  std::int64_t ts_min = txns.front().timestamp, ts_max = txns.front().timestamp;
  for (const auto& t : txns) {
    per_asset[t.asset_id] += 1;
    prices.push_back(t.price);
    const auto parsed = parse_identifier(t.asset_id, t.asset_class);
    name_lengths.push_back(codepoint_count(parsed.name));
    suffixes.insert(parsed.suffix);
    platform_counts[t.platform] += 1;
    ts_min = std::min(ts_min, t.timestamp);
    ts_max = std::max(ts_max, t.timestamp);
    by_month[month_index_of_day(day_of_instant(t.timestamp))].push_back(t.price);
  }

  std::size_t max_per_asset = 0;
  for (const auto& [_, c] : per_asset) max_per_asset = std::max(max_per_asset, c);
  stats.per_asset_mean =
      static_cast<double>(txns.size()) / static_cast<double>(per_asset.size());
  stats.per_asset_max = max_per_asset;

  stats.price_min = *std::min_element(prices.begin(), prices.end());
  stats.price_max = *std::max_element(prices.begin(), prices.end());
  stats.price_median = lower_median(prices);
  double mean = 0.0;
  for (double p : prices) mean += p;
  mean /= static_cast<double>(prices.size());
  double var = 0.0;
  for (double p : prices) var += (p - mean) * (p - mean);
  stats.price_stddev = std::sqrt(var / static_cast<double>(prices.size()));

  stats.name_length_min = *std::min_element(name_lengths.begin(), name_lengths.end());
  stats.name_length_max = *std::max_element(name_lengths.begin(), name_lengths.end());
  stats.name_length_median = lower_median(name_lengths);

  stats.first_timestamp = ts_min;
  stats.last_timestamp = ts_max;
  stats.suffix_count = suffixes.size();

  for (const auto& [platform, count] : platform_counts) {
    stats.platform_share[platform] =
        static_cast<double>(count) / static_cast<double>(txns.size());
  }

  const std::int64_t first_month = month_index_of_day(day_of_instant(ts_min));
  const std::int64_t last_month = month_index_of_day(day_of_instant(ts_max));
  for (std::int64_t m = first_month; m <= last_month; ++m) {
    MonthlyPoint point;
    month_from_index(m, point.year, point.month);
    auto it = by_month.find(m);
    if (it != by_month.end()) {
      point.volume = it->second.size();
      point.median_price = lower_median(it->second);
    }
    stats.monthly.push_back(point);
  }
  return stats;
}

}  // namespace assetval::dataset

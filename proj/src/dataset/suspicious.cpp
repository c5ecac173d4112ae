#include "assetval/dataset/suspicious.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "assetval/common/error.hpp"
#include "assetval/common/time.hpp"

namespace assetval::dataset {

std::set<std::string> detect_suspicious_nft(std::span<const Transaction> txns) {
  // Involvement counts per (asset, party); a transaction counts once for each
  // distinct party it involves.
  std::map<std::string, std::map<std::string, std::size_t>> involvement;
  for (const auto& t : txns) {
    if (!t.buyer.has_value() || !t.seller.has_value())
      raise(Errc::MissingParty, "transaction " + t.record_id + " lacks buyer or seller");
    auto& counts = involvement[t.asset_id];
    counts[*t.seller] += 1;
    if (*t.buyer != *t.seller) counts[*t.buyer] += 1;
  }
  std::set<std::string> flagged;
  for (const auto& t : txns) {
    const auto& counts = involvement[t.asset_id];
    const std::size_t others_seller = counts.at(*t.seller) - 1;
    const std::size_t others_buyer = counts.at(*t.buyer) - 1;
    if (others_seller >= 2 && others_buyer >= 2) flagged.insert(t.record_id);
  }
  return flagged;
}

std::set<std::string> detect_suspicious_email(std::span<const Transaction> txns) {
  constexpr std::int64_t kWindow = 7 * kSecondsPerDay;
  std::map<std::string, std::vector<std::int64_t>> times;
  for (const auto& t : txns) times[t.asset_id].push_back(t.timestamp);
  for (auto& [_, v] : times) std::sort(v.begin(), v.end());
  std::set<std::string> flagged;
  for (const auto& t : txns) {
    const auto& v = times[t.asset_id];
    // Any later transaction in (t, t + 7d]?
    auto it = std::upper_bound(v.begin(), v.end(), t.timestamp);
    if (it != v.end() && *it <= t.timestamp + kWindow) flagged.insert(t.record_id);
  }
  return flagged;
}

}  // namespace assetval::dataset

#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "assetval/common/rng.hpp"
#include "assetval/common/time.hpp"
#include "assetval/dataset/rates.hpp"
#include "assetval/dataset/transaction.hpp"

namespace testutil {

using assetval::dataset::AssetClass;
using assetval::dataset::SaleKind;
using assetval::dataset::Transaction;

inline Transaction make_txn(std::string record_id, std::string asset_id, double price,
                            std::int64_t timestamp,
                            AssetClass cls = AssetClass::DomainName) {
  Transaction t;
  t.record_id = std::move(record_id);
  t.asset_id = std::move(asset_id);
  t.asset_class = cls;
  t.price = price;
  t.currency = assetval::dataset::ExchangeRateTable::target_currency(cls);
  t.timestamp = timestamp;
  t.platform = "test";
  t.sale_kind = SaleKind::BuyItNow;
  return t;
}

// Quadratic restatement of the wash-trade rule: t (asset x, a -> b) is
// flagged when, among the other transactions of x, a is involved in at least
// two and b is involved in at least two.
inline std::set<std::string> brute_force_suspicious_nft(std::span<const Transaction> txns) {
  std::set<std::string> flagged;
  for (const auto& t : txns) {
    std::size_t seller_hits = 0, buyer_hits = 0;
    for (const auto& o : txns) {
      if (o.record_id == t.record_id || o.asset_id != t.asset_id) continue;
      const bool involves_seller = *o.buyer == *t.seller || *o.seller == *t.seller;
      const bool involves_buyer = *o.buyer == *t.buyer || *o.seller == *t.buyer;
      if (involves_seller) ++seller_hits;
      if (involves_buyer) ++buyer_hits;
    }
    if (seller_hits >= 2 && buyer_hits >= 2) flagged.insert(t.record_id);
  }
  return flagged;
}

// Quadratic restatement of the rapid-resale rule: t is flagged when another
// transaction of the same asset happens after t within seven days.
inline std::set<std::string> brute_force_suspicious_email(std::span<const Transaction> txns) {
  std::set<std::string> flagged;
  for (const auto& t : txns) {
    for (const auto& o : txns) {
      if (o.record_id == t.record_id || o.asset_id != t.asset_id) continue;
      const std::int64_t gap = o.timestamp - t.timestamp;
      if (gap > 0 && gap <= 7 * assetval::kSecondsPerDay) {
        flagged.insert(t.record_id);
        break;
      }
    }
  }
  return flagged;
}

}  // namespace testutil

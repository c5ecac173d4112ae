#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "assetval/dataset/transaction.hpp"

namespace assetval::dataset {

enum class RejectReason { BundleSale, ZeroPrice, AuctionUnqualified, HashedNameUnknown };

std::string_view reject_reason_name(RejectReason r);

struct FilterResult {
  std::vector<Transaction> kept;
  std::vector<std::pair<Transaction, RejectReason>> rejected;
};

// Drops bundles, zero-price sales, auctions without a met/no-reserve status
// and at least one bid, and records whose unhashed name is unknown. Input
// order is preserved on both sides.
FilterResult filter_transactions(std::vector<Transaction> txns);

}  // namespace assetval::dataset

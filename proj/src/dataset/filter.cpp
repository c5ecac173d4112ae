#include "assetval/dataset/filter.hpp"

#include <optional>

namespace assetval::dataset {

std::string_view reject_reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::BundleSale: return "bundle_sale";
    case RejectReason::ZeroPrice: return "zero_price";
    case RejectReason::AuctionUnqualified: return "auction_unqualified";
    case RejectReason::HashedNameUnknown: return "hashed_name_unknown";
  }
  return "";
}

namespace {

std::optional<RejectReason> classify(const Transaction& t) {
  if (t.is_bundle) return RejectReason::BundleSale;
  if (t.price == 0.0) return RejectReason::ZeroPrice;
  if (t.sale_kind == SaleKind::Auction) {
    const bool qualified_reserve =
        t.reserve_status.has_value() && *t.reserve_status != ReserveStatus::ReserveNotMet;
    const bool has_bid = t.bid_count.has_value() && *t.bid_count >= 1;
    if (!qualified_reserve || !has_bid) return RejectReason::AuctionUnqualified;
  }
  if (!t.name_known) return RejectReason::HashedNameUnknown;
  return std::nullopt;
}

}  // namespace

FilterResult filter_transactions(std::vector<Transaction> txns) {
  FilterResult result;
  result.kept.reserve(txns.size());
  for (auto& t : txns) {
    if (auto reason = classify(t)) {
      result.rejected.emplace_back(std::move(t), *reason);
    } else {
      result.kept.push_back(std::move(t));
    }
  }
  return result;
}

}  // namespace assetval::dataset

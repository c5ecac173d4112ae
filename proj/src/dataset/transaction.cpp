#include "assetval/dataset/transaction.hpp"

#include "assetval/common/error.hpp"
#include "assetval/common/text.hpp"

namespace assetval::dataset {

char class_delimiter(AssetClass asset_class) {
  return asset_class == AssetClass::EmailAddress ? '@' : '.';
}

std::string_view asset_class_name(AssetClass c) {
  switch (c) {
    case AssetClass::DomainName: return "domain_name";
    case AssetClass::EmailAddress: return "email_address";
    case AssetClass::NftIdentifier: return "nft_identifier";
  }
  return "";
}

std::string_view sale_kind_name(SaleKind k) {
  switch (k) {
    case SaleKind::Auction: return "auction";
    case SaleKind::BuyItNow: return "buy_it_now";
    case SaleKind::Negotiated: return "negotiated";
    case SaleKind::ChainSale: return "chain_sale";
  }
  return "";
}

std::string_view reserve_status_name(ReserveStatus r) {
  switch (r) {
    case ReserveStatus::ReserveMet: return "reserve_met";
    case ReserveStatus::NoReserve: return "no_reserve";
    case ReserveStatus::ReserveNotMet: return "reserve_not_met";
  }
  return "";
}

AssetClass asset_class_from_name(std::string_view s) {
  if (s == "domain_name") return AssetClass::DomainName;
  if (s == "email_address") return AssetClass::EmailAddress;
  if (s == "nft_identifier") return AssetClass::NftIdentifier;
  raise(Errc::InvalidValue, "unknown asset_class: " + std::string(s));
}

SaleKind sale_kind_from_name(std::string_view s) {
  if (s == "auction") return SaleKind::Auction;
  if (s == "buy_it_now") return SaleKind::BuyItNow;
  if (s == "negotiated") return SaleKind::Negotiated;
  if (s == "chain_sale") return SaleKind::ChainSale;
  raise(Errc::InvalidValue, "unknown sale_kind: " + std::string(s));
}

ReserveStatus reserve_status_from_name(std::string_view s) {
  if (s == "reserve_met") return ReserveStatus::ReserveMet;
  if (s == "no_reserve") return ReserveStatus::NoReserve;
  if (s == "reserve_not_met") return ReserveStatus::ReserveNotMet;
  raise(Errc::InvalidValue, "unknown reserve_status: " + std::string(s));
}

ParsedIdentifier parse_identifier(std::string_view asset_id, AssetClass asset_class) {
  if (asset_id.empty()) raise(Errc::EmptyName, "empty identifier");
  const std::string lowered = ascii_lower(asset_id);
  const char delim = class_delimiter(asset_class);
  const std::size_t pos = lowered.find(delim);
  if (pos == std::string::npos)
    raise(Errc::NoDelimiter, "no '" + std::string(1, delim) + "' in " + lowered);
  if (pos == 0) raise(Errc::EmptyName, "empty name in " + lowered);
  if (pos + 1 == lowered.size()) raise(Errc::EmptySuffix, "empty suffix in " + lowered);
  return ParsedIdentifier{lowered.substr(0, pos), lowered.substr(pos + 1), asset_class};
}

}  // namespace assetval::dataset

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace assetval::dataset {

enum class AssetClass { DomainName, EmailAddress, NftIdentifier };
enum class SaleKind { Auction, BuyItNow, Negotiated, ChainSale };
enum class ReserveStatus { ReserveMet, NoReserve, ReserveNotMet };

// One sale record. price is denominated in `currency`; timestamp is a UTC
// instant at second resolution.
struct Transaction {
  std::string record_id;
  std::string asset_id;
  AssetClass asset_class = AssetClass::DomainName;
  std::optional<std::string> collection;
  double price = 0.0;
  std::string currency;
  std::int64_t timestamp = 0;
  std::string platform;
  std::optional<std::string> buyer;
  std::optional<std::string> seller;
  SaleKind sale_kind = SaleKind::BuyItNow;
  std::optional<ReserveStatus> reserve_status;
  std::optional<std::uint32_t> bid_count;
  bool is_bundle = false;
  bool name_known = true;
};

// '@' splits email addresses; '.' splits domain names and NFT identifiers.
char class_delimiter(AssetClass asset_class);

std::string_view asset_class_name(AssetClass c);
std::string_view sale_kind_name(SaleKind k);
std::string_view reserve_status_name(ReserveStatus r);

AssetClass asset_class_from_name(std::string_view s);
SaleKind sale_kind_from_name(std::string_view s);
ReserveStatus reserve_status_from_name(std::string_view s);

// The identifier lowercased and split at the first class delimiter.
struct ParsedIdentifier {
  std::string name;
  std::string suffix;
  AssetClass asset_class = AssetClass::DomainName;
};

ParsedIdentifier parse_identifier(std::string_view asset_id, AssetClass asset_class);

}  // namespace assetval::dataset

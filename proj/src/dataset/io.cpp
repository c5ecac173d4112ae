#include "assetval/dataset/io.hpp"

#include <cmath>
#include <fstream>

#include "assetval/common/error.hpp"
#include "assetval/common/time.hpp"

namespace assetval::dataset {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <typename T>
void put_optional(ordered_json& j, const char* key, const std::optional<T>& v) {
  if (v.has_value()) j[key] = *v;
  else j[key] = nullptr;
}

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) raise(Errc::MissingField, std::string("missing field: ") + key);
  return *it;
}

}  // namespace

ordered_json transaction_to_json(const Transaction& t) {
  ordered_json j;
  j["record_id"] = t.record_id;
  j["asset_id"] = t.asset_id;
  j["asset_class"] = asset_class_name(t.asset_class);
  put_optional(j, "collection", t.collection);
  j["price"] = t.price;
  j["currency"] = t.currency;
  j["timestamp"] = format_iso_instant(t.timestamp);
  j["platform"] = t.platform;
  put_optional(j, "buyer", t.buyer);
  put_optional(j, "seller", t.seller);
  j["sale_kind"] = sale_kind_name(t.sale_kind);
  if (t.reserve_status.has_value()) j["reserve_status"] = reserve_status_name(*t.reserve_status);
  else j["reserve_status"] = nullptr;
  put_optional(j, "bid_count", t.bid_count);
  j["is_bundle"] = t.is_bundle;
  j["name_known"] = t.name_known;
  return j;
}

Transaction transaction_from_json(const json& j) {
  Transaction t;
  t.record_id = require(j, "record_id").get<std::string>();
  t.asset_id = require(j, "asset_id").get<std::string>();
  t.asset_class = asset_class_from_name(require(j, "asset_class").get<std::string>());
  if (j.contains("collection") && !j["collection"].is_null())
    t.collection = j["collection"].get<std::string>();
  t.price = require(j, "price").get<double>();
  t.currency = require(j, "currency").get<std::string>();
  t.timestamp = parse_iso_instant(require(j, "timestamp").get<std::string>());
  t.platform = require(j, "platform").get<std::string>();
  if (j.contains("buyer") && !j["buyer"].is_null()) t.buyer = j["buyer"].get<std::string>();
  if (j.contains("seller") && !j["seller"].is_null()) t.seller = j["seller"].get<std::string>();
  t.sale_kind = sale_kind_from_name(require(j, "sale_kind").get<std::string>());
  if (j.contains("reserve_status") && !j["reserve_status"].is_null())
    t.reserve_status = reserve_status_from_name(j["reserve_status"].get<std::string>());
  if (j.contains("bid_count") && !j["bid_count"].is_null())
    t.bid_count = j["bid_count"].get<std::uint32_t>();
  t.is_bundle = require(j, "is_bundle").get<bool>();
  t.name_known = require(j, "name_known").get<bool>();
  return t;
}

void validate_transaction(const Transaction& t) {
  if (t.record_id.empty()) raise(Errc::InvalidValue, "empty record_id");
  if (t.asset_id.empty()) raise(Errc::InvalidValue, "empty asset_id in " + t.record_id);
  if (!(t.price >= 0.0) || !std::isfinite(t.price))
    raise(Errc::InvalidValue, "price must be finite and >= 0 in " + t.record_id);
  if (t.timestamp < 0 || t.timestamp > now_epoch_seconds() + kSecondsPerDay)
    raise(Errc::InvalidValue, "timestamp out of range in " + t.record_id);
}

std::vector<Transaction> read_jsonl(const std::filesystem::path& path, bool validate) {
  std::ifstream in(path);
  if (!in) raise(Errc::IoFailure, "cannot open " + path.string());
  std::vector<Transaction> txns;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      raise(Errc::MalformedLine, path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    Transaction t = transaction_from_json(j);
    if (validate) validate_transaction(t);
    txns.push_back(std::move(t));
  }
  return txns;
}

void write_jsonl(const std::filesystem::path& path, std::span<const Transaction> txns) {
  std::ofstream out(path);
  if (!out) raise(Errc::IoFailure, "cannot open " + path.string());
  for (const auto& t : txns) out << transaction_to_json(t).dump() << '\n';
}

ordered_json stats_to_json(const DatasetStats& s) {
  ordered_json j;
  j["transaction_count"] = s.transaction_count;
  j["per_asset_mean"] = s.per_asset_mean;
  j["per_asset_max"] = s.per_asset_max;
  j["price_min"] = s.price_min;
  j["price_median"] = s.price_median;
  j["price_max"] = s.price_max;
  j["price_stddev"] = s.price_stddev;
  j["name_length_min"] = s.name_length_min;
  j["name_length_median"] = s.name_length_median;
  j["name_length_max"] = s.name_length_max;
  j["first_timestamp"] = format_iso_instant(s.first_timestamp);
  j["last_timestamp"] = format_iso_instant(s.last_timestamp);
  j["suffix_count"] = s.suffix_count;
  j["platform_share"] = s.platform_share;
  ordered_json months = ordered_json::array();
  for (const auto& m : s.monthly) {
    ordered_json row;
    row["year"] = m.year;
    row["month"] = m.month;
    row["volume"] = m.volume;
    if (m.median_price.has_value()) row["median_price"] = *m.median_price;
    else row["median_price"] = nullptr;
    months.push_back(std::move(row));
  }
  j["monthly"] = std::move(months);
  return j;
}

}  // namespace assetval::dataset

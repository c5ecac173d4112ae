#include "assetval/dataset/rates.hpp"

#include <fstream>

#include "assetval/common/csv.hpp"
#include "assetval/common/error.hpp"
#include "assetval/common/text.hpp"
#include "assetval/common/time.hpp"

namespace assetval::dataset {

std::string ExchangeRateTable::target_currency(AssetClass asset_class) {
  switch (asset_class) {
    case AssetClass::DomainName: return "USD";
    case AssetClass::EmailAddress: return "CNY";
    case AssetClass::NftIdentifier: return "ETH";
  }
  return "USD";
}

ExchangeRateTable ExchangeRateTable::load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::IoFailure, "cannot open " + path.string());
  ExchangeRateTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    auto fields = split_csv_line(stripped);
    if (lineno == 1 && fields.size() == 3 && fields[0] == "currency") continue;
    if (fields.size() != 3)
      raise(Errc::MalformedLine, path.string() + ":" + std::to_string(lineno));
    double rate = 0.0;
    try {
      rate = std::stod(fields[2]);
    } catch (const std::exception&) {
      raise(Errc::MalformedLine, path.string() + ":" + std::to_string(lineno));
    }
    if (!(rate > 0.0))
      raise(Errc::MalformedLine,
            path.string() + ":" + std::to_string(lineno) + ": rate must be > 0");
    table.add(fields[0], parse_iso_date(fields[1]), rate);
  }
  return table;
}

void ExchangeRateTable::add(const std::string& currency, std::int64_t day, double rate) {
  if (!(rate > 0.0)) raise(Errc::InvalidValue, "rate must be > 0");
  entries[currency][day] = rate;
}

double ExchangeRateTable::rate_on(const std::string& currency, std::int64_t day) const {
  auto cit = entries.find(currency);
  if (cit != entries.end()) {
    const auto& by_day = cit->second;
    for (std::int64_t back = 0; back <= 7; ++back) {
      auto dit = by_day.find(day - back);
      if (dit != by_day.end()) return dit->second;
    }
  }
  raise(Errc::MissingRate,
        "no " + currency + " rate on or within 7 days before " + format_iso_date(day));
}

Transaction normalize_currency(const Transaction& txn, const ExchangeRateTable& rates) {
  const std::string target = ExchangeRateTable::target_currency(txn.asset_class);
  Transaction out = txn;
  if (txn.currency == target) return out;
  const double rate = rates.rate_on(txn.currency, day_of_instant(txn.timestamp));
  out.price = txn.price * rate;
  out.currency = target;
  return out;
}

}  // namespace assetval::dataset

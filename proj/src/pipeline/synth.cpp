#include "assetval/pipeline/synth.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <vector>

#include "assetval/common/error.hpp"
#include "assetval/common/rng.hpp"
#include "assetval/common/time.hpp"
#include "assetval/dataset/io.hpp"
#include "assetval/dataset/rates.hpp"

namespace assetval::pipeline {

using dataset::AssetClass;
using dataset::ReserveStatus;
using dataset::SaleKind;
using dataset::Transaction;

namespace {

const std::vector<std::string> kWords = {
    "car",   "bank",  "shop",   "game",   "cloud", "data",  "coin",  "crypto", "insurance",
    "home",  "travel", "music",  "video",  "food",  "pizza", "hotel", "store",  "market",
    "tech",  "media",  "green",  "smart",  "fast",  "best",  "top",   "pro",    "gold",
    "star",  "city",   "world",  "life",   "live",  "play",  "win",   "token",  "meta",
    "swap",  "chain",  "pay",    "cash",   "loan",  "auto",  "care",  "health", "law",
    "news",  "book",   "art",    "wine",   "club"};

const std::vector<std::string> kAdultWords = {"adultsite", "nsfw"};
const std::vector<std::string> kTrademarks = {"cloud", "coin", "swap", "meta", "gold"};

struct SuffixWeight {
  const char* suffix;
  double weight;
  double effect;  // additive ln-price effect
};

std::vector<SuffixWeight> suffixes_for(AssetClass cls) {
  switch (cls) {
    case AssetClass::DomainName:
      return {{"com", 0.50, 1.2}, {"net", 0.14, 0.3}, {"org", 0.12, 0.2},
              {"io", 0.10, 0.6},  {"co", 0.06, 0.1},  {"xyz", 0.05, -0.4},
              {"app", 0.03, 0.0}};
    case AssetClass::EmailAddress:
      return {{"163.com", 0.40, 0.4}, {"126.com", 0.25, 0.2}, {"qq.com", 0.25, 0.6},
              {"vip.com", 0.10, -0.2}};
    case AssetClass::NftIdentifier:
      return {{"eth", 0.80, 0.5}, {"crypto", 0.12, -0.1}, {"nft", 0.08, -0.3}};
  }
  return {};
}

std::string pick_suffix(const std::vector<SuffixWeight>& table, RandomSource& rng,
                        double* effect) {
  double u = rng.next_double();
  for (const auto& row : table) {
    if (u < row.weight) {
      *effect = row.effect;
      return row.suffix;
    }
    u -= row.weight;
  }
  *effect = table.back().effect;
  return table.back().suffix;
}

std::string random_letters(RandomSource& rng, std::size_t len) {
  std::string out;
  for (std::size_t i = 0; i < len; ++i)
    out += static_cast<char>('a' + rng.next_index(26));
  return out;
}

std::string random_digits(RandomSource& rng, std::size_t len) {
  std::string out;
  for (std::size_t i = 0; i < len; ++i)
    out += static_cast<char>('0' + rng.next_index(10));
  return out;
}

std::string make_name(RandomSource& rng) {
  const double u = rng.next_double();
  if (u < 0.30) return kWords[rng.next_index(kWords.size())];
  if (u < 0.50)
    return kWords[rng.next_index(kWords.size())] + kWords[rng.next_index(kWords.size())];
  if (u < 0.62) return kWords[rng.next_index(kWords.size())] + random_digits(rng, 1 + rng.next_index(3));
  if (u < 0.77) return random_letters(rng, 2 + rng.next_index(8));
  if (u < 0.87) return random_digits(rng, 2 + rng.next_index(5));
  if (u < 0.95)
    return kWords[rng.next_index(kWords.size())] + "-" + kWords[rng.next_index(kWords.size())];
  return "adultsite" + random_digits(rng, 1);
}

std::string platform_for(AssetClass cls, RandomSource& rng) {
  switch (cls) {
    case AssetClass::DomainName: return rng.next_double() < 0.79 ? "sedo" : "flippa";
    case AssetClass::EmailAddress: return "fglt";
    case AssetClass::NftIdentifier: {
      const double u = rng.next_double();
      if (u < 0.95) return "opensea";
      return u < 0.975 ? "x2y2" : "looksrare";
    }
  }
  return "unknown";
}

std::string hex_address(RandomSource& rng) {
  static const char* digits = "0123456789abcdef";
  std::string out = "0x";
  for (int i = 0; i < 8; ++i) out += digits[rng.next_index(16)];
  return out;
}

double base_log_price(AssetClass cls) {
  switch (cls) {
    case AssetClass::DomainName: return std::log(200.0);
    case AssetClass::EmailAddress: return std::log(11.0);
    case AssetClass::NftIdentifier: return std::log(0.05);
  }
  return 0.0;
}

}  // namespace

SynthOutputs generate_synthetic_corpus(const SynthOptions& options) {
  namespace fs = std::filesystem;
  fs::create_directories(options.out_dir);
  RandomSource rng(options.seed);
  const AssetClass cls = options.asset_class;
  const auto suffix_table = suffixes_for(cls);
  const std::string target = dataset::ExchangeRateTable::target_currency(cls);
  const std::string foreign = cls == AssetClass::DomainName  ? "EUR"
                              : cls == AssetClass::EmailAddress ? "USD"
                                                                : "WETH";
  const double foreign_rate_base = cls == AssetClass::DomainName  ? 1.08
                                   : cls == AssetClass::EmailAddress ? 7.0
                                                                     : 1.0;

  // TLD popularity table over the names the corpus can produce.
  std::map<std::string, std::uint64_t> tld_counts;
  for (const auto& w : kWords)
    tld_counts[w] = static_cast<std::uint64_t>(std::llround(std::exp(3.0 + 2.0 * rng.next_double())));

  const std::int64_t start = parse_iso_instant("2019-01-01T00:00:00Z");
  const std::int64_t end = parse_iso_instant("2022-06-30T00:00:00Z");
  const std::set<std::string> word_set(kWords.begin(), kWords.end());
  const std::set<std::string> trademark_set(kTrademarks.begin(), kTrademarks.end());

  std::vector<Transaction> txns;
  std::size_t counter = 0;
  auto next_record_id = [&]() {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "r%06zu", counter++);
    return std::string(buf);
  };

  auto make_clean = [&](std::int64_t ts) {
    Transaction t;
    t.record_id = next_record_id();
    double suffix_effect = 0.0;
    const std::string name = make_name(rng);
    const std::string suffix = pick_suffix(suffix_table, rng, &suffix_effect);
    t.asset_id = name + std::string(1, dataset::class_delimiter(cls)) + suffix;
    t.asset_class = cls;
    t.timestamp = ts;
    t.platform = platform_for(cls, rng);

    const bool is_word = word_set.contains(name);
    const bool is_trademark = trademark_set.contains(name);
    bool numeric = !name.empty();
    bool hyphen = false;
    for (char c : name) {
      if (c == '-') hyphen = true;
      if (c < '0' || c > '9') numeric = false;
    }
    const auto tld_it = tld_counts.find(name);
    const double tld = tld_it == tld_counts.end() ? 0.0 : static_cast<double>(tld_it->second);

    double log_price = base_log_price(cls);
    log_price -= 0.16 * static_cast<double>(name.size());
    log_price += 1.1 * (is_word ? 1.0 : 0.0);
    log_price += 0.35 * std::log1p(tld);
    log_price += suffix_effect;
    log_price += 0.9 * ((numeric && name.size() <= 4) ? 1.0 : 0.0);
    log_price -= 0.5 * (hyphen ? 1.0 : 0.0);
    log_price += 0.4 * (is_trademark ? 1.0 : 0.0);
    log_price += options.noise_sigma * rng.next_normal();
    t.price = std::exp(log_price);
    t.currency = target;

    const double kind = rng.next_double();
    if (cls == AssetClass::NftIdentifier) {
      t.sale_kind = SaleKind::ChainSale;
      t.seller = hex_address(rng);
      t.buyer = hex_address(rng);
    } else if (kind < 0.45) {
      t.sale_kind = SaleKind::Auction;
      t.reserve_status =
          rng.next_double() < 0.6 ? ReserveStatus::ReserveMet : ReserveStatus::NoReserve;
      t.bid_count = static_cast<std::uint32_t>(1 + rng.next_index(20));
    } else {
      t.sale_kind = kind < 0.85 ? SaleKind::BuyItNow : SaleKind::Negotiated;
    }
    return t;
  };

  const std::size_t n = std::max<std::size_t>(options.n, 10);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t ts =
        start + static_cast<std::int64_t>((static_cast<double>(i) + rng.next_double()) /
                                          static_cast<double>(n) * static_cast<double>(end - start));
    auto t = make_clean(std::min(ts, end));

    const double dirt = rng.next_double();
    if (dirt < 0.03) {
      t.is_bundle = true;
    } else if (dirt < 0.05) {
      t.price = 0.0;
    } else if (dirt < 0.08 && t.sale_kind == SaleKind::Auction) {
      if (rng.next_double() < 0.5) t.reserve_status = ReserveStatus::ReserveNotMet;
      else t.bid_count = 0;
    } else if (dirt < 0.10 && cls == AssetClass::NftIdentifier) {
      t.name_known = false;
    } else if (dirt < 0.16) {
      t.currency = foreign;
      t.price /= foreign_rate_base;
    }
    txns.push_back(std::move(t));
  }

  // Wash cycles (NFT) and rapid resales (email) on dedicated assets.
  if (cls == AssetClass::NftIdentifier) {
    for (int w = 0; w < 3; ++w) {
      const std::string asset = "wash" + std::to_string(w) + ".eth";
      const std::string a = hex_address(rng), b = hex_address(rng);
      std::int64_t ts = start + (w + 1) * 200 * kSecondsPerDay;
      for (int k = 0; k < 4; ++k) {
        Transaction t = make_clean(ts + k * kSecondsPerDay);
        t.asset_id = asset;
        t.seller = k % 2 == 0 ? a : b;
        t.buyer = k % 2 == 0 ? b : a;
        t.currency = target;
        t.is_bundle = false;
        t.name_known = true;
        txns.push_back(std::move(t));
      }
    }
  }
  if (cls == AssetClass::EmailAddress) {
    for (int w = 0; w < 3; ++w) {
      const std::string asset = "flip" + std::to_string(w) + "@163.com";
      const std::int64_t ts = start + (w + 1) * 150 * kSecondsPerDay;
      for (int k = 0; k < 2; ++k) {
        Transaction t = make_clean(ts + k * 3 * kSecondsPerDay);
        t.asset_id = asset;
        t.currency = target;
        t.is_bundle = false;
        t.sale_kind = SaleKind::BuyItNow;
        t.reserve_status.reset();
        t.bid_count.reset();
        txns.push_back(std::move(t));
      }
    }
  }

  SynthOutputs out;
  out.transactions = options.out_dir / "transactions.jsonl";
  dataset::write_jsonl(out.transactions, txns);

  // Daily foreign-currency quotes every third day; the lookback covers gaps.
  out.rates = options.out_dir / "rates.csv";
  {
    std::ofstream file(out.rates);
    file << "currency,date,rate_to_target\n";
    for (std::int64_t day = day_of_instant(start) - 7; day <= day_of_instant(end); day += 3) {
      const double wiggle = 1.0 + 0.05 * std::sin(static_cast<double>(day) / 17.0);
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%s,%s,%.6f\n", foreign.c_str(),
                    format_iso_date(day).c_str(), foreign_rate_base * wiggle);
      file << buf;
    }
  }

  out.words = options.out_dir / "words.txt";
  {
    std::ofstream file(out.words);
    for (const auto& w : kWords) file << w << '\n';
  }
  out.adult_words = options.out_dir / "adult_words.txt";
  {
    std::ofstream file(out.adult_words);
    for (const auto& w : kAdultWords) file << w << '\n';
  }
  out.trademarks = options.out_dir / "trademarks.txt";
  {
    std::ofstream file(out.trademarks);
    for (const auto& w : kTrademarks) file << w << '\n';
  }
  out.tld_counts = options.out_dir / "tlds.csv";
  {
    std::ofstream file(out.tld_counts);
    file << "name,count\n";
    for (const auto& [name, count] : tld_counts) file << name << ',' << count << '\n';
  }
  return out;
}

}  // namespace assetval::pipeline

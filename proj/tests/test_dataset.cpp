#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "assetval/common/error.hpp"
#include "assetval/common/time.hpp"
#include "assetval/dataset/filter.hpp"
#include "assetval/dataset/io.hpp"
#include "assetval/dataset/rates.hpp"
#include "assetval/dataset/split.hpp"
#include "assetval/dataset/stats.hpp"
#include "assetval/dataset/suspicious.hpp"
#include "helpers.hpp"

using namespace assetval;
using namespace assetval::dataset;
using testutil::make_txn;

TEST_SUITE("parse_identifier") {
  TEST_CASE("splits at the first class delimiter") {
    auto p = parse_identifier("example.eth", AssetClass::NftIdentifier);
    CHECK(p.name == "example");
    CHECK(p.suffix == "eth");

    p = parse_identifier("email@example.com", AssetClass::EmailAddress);
    CHECK(p.name == "email");
    CHECK(p.suffix == "example.com");

    p = parse_identifier("a.b.eth", AssetClass::NftIdentifier);
    CHECK(p.name == "a");
    CHECK(p.suffix == "b.eth");
  }

  TEST_CASE("errors") {
    CHECK_THROWS_WITH_AS(parse_identifier("example", AssetClass::DomainName),
                         doctest::Contains("NoDelimiter"), Error);
    CHECK_THROWS_AS(parse_identifier(".com", AssetClass::DomainName), Error);
    CHECK_THROWS_AS(parse_identifier("name.", AssetClass::DomainName), Error);
    CHECK(parse_identifier("a.b@c", AssetClass::EmailAddress).name == "a.b");  // '.' not the delimiter
    CHECK_THROWS_AS(parse_identifier("", AssetClass::DomainName), Error);
  }

  TEST_CASE("lowercases and reassembles") {
    auto p = parse_identifier("MySite.COM", AssetClass::DomainName);
    CHECK(p.name == "mysite");
    CHECK(p.suffix == "com");
  }

  TEST_CASE("round trip: name + delimiter + suffix reassembles the identifier") {
    RandomSource rng(7);
    const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789-";
    for (int iter = 0; iter < 300; ++iter) {
      const auto cls = static_cast<AssetClass>(rng.next_index(3));
      std::string id;
      const std::size_t name_len = 1 + rng.next_index(12);
      for (std::size_t i = 0; i < name_len; ++i) id += alphabet[rng.next_index(alphabet.size())];
      id += class_delimiter(cls);
      const std::size_t suffix_len = 1 + rng.next_index(8);
      for (std::size_t i = 0; i < suffix_len; ++i)
        id += alphabet[rng.next_index(alphabet.size())];
      const auto p = parse_identifier(id, cls);
      CHECK(p.name + std::string(1, class_delimiter(cls)) + p.suffix == id);
      CHECK(p.name.find(class_delimiter(cls)) == std::string::npos);
    }
  }
}

TEST_SUITE("parse_identifier errors by code") {
  TEST_CASE("codes are distinguishable") {
    try {
      parse_identifier("example", AssetClass::DomainName);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NoDelimiter);
    }
    try {
      parse_identifier(".x", AssetClass::DomainName);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::EmptyName);
    }
    try {
      parse_identifier("x.", AssetClass::DomainName);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::EmptySuffix);
    }
  }
}

namespace {

Transaction auction_txn(std::string id, std::optional<ReserveStatus> rs,
                        std::optional<std::uint32_t> bids) {
  auto t = make_txn(std::move(id), "thing.com", 10.0, 1000);
  t.sale_kind = SaleKind::Auction;
  t.reserve_status = rs;
  t.bid_count = bids;
  return t;
}

}  // namespace

TEST_SUITE("filter_transactions") {
  TEST_CASE("qualified auction is kept") {
    auto r = filter_transactions({auction_txn("a", ReserveStatus::ReserveMet, 3)});
    CHECK(r.kept.size() == 1);
    CHECK(r.rejected.empty());
  }

  TEST_CASE("no-reserve auction with a bid is kept") {
    auto r = filter_transactions({auction_txn("a", ReserveStatus::NoReserve, 1)});
    CHECK(r.kept.size() == 1);
  }

  TEST_CASE("rejects zero price") {
    auto t = make_txn("a", "thing.com", 0.0, 1000);
    auto r = filter_transactions({t});
    REQUIRE(r.rejected.size() == 1);
    CHECK(r.rejected[0].second == RejectReason::ZeroPrice);
  }

  TEST_CASE("rejects bundles") {
    auto t = make_txn("a", "thing.com", 5.0, 1000);
    t.is_bundle = true;
    auto r = filter_transactions({t});
    REQUIRE(r.rejected.size() == 1);
    CHECK(r.rejected[0].second == RejectReason::BundleSale);
  }

  TEST_CASE("rejects unqualified auctions") {
    auto not_met = filter_transactions({auction_txn("a", ReserveStatus::ReserveNotMet, 5)});
    REQUIRE(not_met.rejected.size() == 1);
    CHECK(not_met.rejected[0].second == RejectReason::AuctionUnqualified);

    auto no_bids = filter_transactions({auction_txn("b", ReserveStatus::ReserveMet, 0)});
    REQUIRE(no_bids.rejected.size() == 1);
    CHECK(no_bids.rejected[0].second == RejectReason::AuctionUnqualified);

    auto absent_status = filter_transactions({auction_txn("c", std::nullopt, 5)});
    REQUIRE(absent_status.rejected.size() == 1);
    CHECK(absent_status.rejected[0].second == RejectReason::AuctionUnqualified);

    auto absent_bids = filter_transactions({auction_txn("d", ReserveStatus::NoReserve, std::nullopt)});
    REQUIRE(absent_bids.rejected.size() == 1);
    CHECK(absent_bids.rejected[0].second == RejectReason::AuctionUnqualified);
  }

  TEST_CASE("rejects unknown hashed names") {
    auto t = make_txn("a", "abc.eth", 5.0, 1000, AssetClass::NftIdentifier);
    t.name_known = false;
    auto r = filter_transactions({t});
    REQUIRE(r.rejected.size() == 1);
    CHECK(r.rejected[0].second == RejectReason::HashedNameUnknown);
  }

  TEST_CASE("partition preserves order and loses nothing") {
    RandomSource rng(11);
    std::vector<Transaction> txns;
    for (int i = 0; i < 200; ++i) {
      auto t = make_txn("r" + std::to_string(i), "x.com", rng.next_index(4) == 0 ? 0.0 : 5.0,
                        1000 + i);
      t.is_bundle = rng.next_index(5) == 0;
      if (rng.next_index(3) == 0) {
        t.sale_kind = SaleKind::Auction;
        if (rng.next_index(2) == 0) t.reserve_status = ReserveStatus::ReserveMet;
        if (rng.next_index(2) == 0) t.bid_count = static_cast<std::uint32_t>(rng.next_index(3));
      }
      txns.push_back(t);
    }
    auto r = filter_transactions(txns);
    CHECK(r.kept.size() + r.rejected.size() == txns.size());
    // order preserved on both sides: record ids strictly increasing by index
    auto increasing = [](const auto& get, const auto& v) {
      for (std::size_t i = 1; i < v.size(); ++i) {
        if (std::stoi(get(v[i - 1]).substr(1)) >= std::stoi(get(v[i]).substr(1))) return false;
      }
      return true;
    };
    CHECK(increasing([](const Transaction& t) { return t.record_id; }, r.kept));
    CHECK(increasing([](const std::pair<Transaction, RejectReason>& p) { return p.first.record_id; },
                     r.rejected));
  }
}

namespace {

Transaction nft_txn(std::string id, std::string asset, std::string seller, std::string buyer,
                    std::int64_t ts = 1000) {
  auto t = make_txn(std::move(id), std::move(asset), 1.0, ts, AssetClass::NftIdentifier);
  t.seller = std::move(seller);
  t.buyer = std::move(buyer);
  return t;
}

std::vector<Transaction> random_nft_corpus(std::uint64_t seed) {
  RandomSource rng(seed);
  std::vector<Transaction> txns;
  const std::size_t n_assets = 1 + rng.next_index(4);
  int counter = 0;
  for (std::size_t a = 0; a < n_assets; ++a) {
    const std::string asset = "asset" + std::to_string(a) + ".eth";
    const std::size_t n = 1 + rng.next_index(20);
    const std::size_t n_parties = 2 + rng.next_index(5);
    for (std::size_t i = 0; i < n; ++i) {
      std::string seller = "p" + std::to_string(rng.next_index(n_parties));
      std::string buyer = "p" + std::to_string(rng.next_index(n_parties));
      txns.push_back(nft_txn("t" + std::to_string(counter++), asset, seller, buyer,
                             1000 + static_cast<std::int64_t>(rng.next_index(100000))));
    }
  }
  return txns;
}

}  // namespace

TEST_SUITE("detect_suspicious_nft") {
  TEST_CASE("four-cycle wash pattern flags all four") {
    std::vector<Transaction> txns = {
        nft_txn("t1", "x.eth", "a", "b"), nft_txn("t2", "x.eth", "b", "a"),
        nft_txn("t3", "x.eth", "a", "b"), nft_txn("t4", "x.eth", "b", "a")};
    const auto flagged = detect_suspicious_nft(txns);
    CHECK(flagged == std::set<std::string>{"t1", "t2", "t3", "t4"});
  }

  TEST_CASE("single trade is clean") {
    std::vector<Transaction> txns = {nft_txn("t1", "x.eth", "a", "b"),
                                     nft_txn("t2", "y.eth", "c", "d"),
                                     nft_txn("t3", "z.eth", "e", "f")};
    CHECK(detect_suspicious_nft(txns).empty());
  }

  TEST_CASE("parties below the threshold stay clean") {
    std::vector<Transaction> txns = {nft_txn("t1", "x.eth", "a", "b"),
                                     nft_txn("t2", "x.eth", "c", "d"),
                                     nft_txn("t3", "x.eth", "a", "d")};
    CHECK(detect_suspicious_nft(txns).empty());
  }

  TEST_CASE("missing party raises") {
    auto t = make_txn("t1", "x.eth", 1.0, 1000, AssetClass::NftIdentifier);
    t.seller = "a";  // buyer absent
    CHECK_THROWS_AS(detect_suspicious_nft(std::vector<Transaction>{t}), Error);
  }

  TEST_CASE("agrees with the brute-force oracle") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto txns = random_nft_corpus(seed);
      CHECK(detect_suspicious_nft(txns) == testutil::brute_force_suspicious_nft(txns));
    }
  }

  TEST_CASE("result is independent of input order") {
    auto txns = random_nft_corpus(42);
    auto expected = detect_suspicious_nft(txns);
    RandomSource rng(1);
    rng.shuffle(txns);
    CHECK(detect_suspicious_nft(txns) == expected);
  }
}

TEST_SUITE("detect_suspicious_email") {
  TEST_CASE("resale within seven days flags the earlier sale") {
    auto t1 = make_txn("t1", "a@b.com", 1.0, 0, AssetClass::EmailAddress);
    auto t2 = make_txn("t2", "a@b.com", 1.0, 3 * kSecondsPerDay, AssetClass::EmailAddress);
    const auto flagged = detect_suspicious_email(std::vector<Transaction>{t1, t2});
    CHECK(flagged == std::set<std::string>{"t1"});
  }

  TEST_CASE("resale outside the window is clean") {
    auto t1 = make_txn("t1", "a@b.com", 1.0, 0, AssetClass::EmailAddress);
    auto t2 = make_txn("t2", "a@b.com", 1.0, 10 * kSecondsPerDay, AssetClass::EmailAddress);
    CHECK(detect_suspicious_email(std::vector<Transaction>{t1, t2}).empty());
  }

  TEST_CASE("window is inclusive at exactly seven days") {
    auto t1 = make_txn("t1", "a@b.com", 1.0, 0, AssetClass::EmailAddress);
    auto t2 = make_txn("t2", "a@b.com", 1.0, 7 * kSecondsPerDay, AssetClass::EmailAddress);
    CHECK(detect_suspicious_email(std::vector<Transaction>{t1, t2}) ==
          std::set<std::string>{"t1"});
  }

  TEST_CASE("single sale is clean") {
    auto t1 = make_txn("t1", "a@b.com", 1.0, 0, AssetClass::EmailAddress);
    CHECK(detect_suspicious_email(std::vector<Transaction>{t1}).empty());
  }

  TEST_CASE("agrees with the brute-force oracle") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      RandomSource rng(seed + 1000);
      std::vector<Transaction> txns;
      const std::size_t n_assets = 1 + rng.next_index(4);
      int counter = 0;
      for (std::size_t a = 0; a < n_assets; ++a) {
        const std::size_t n = 1 + rng.next_index(20);
        for (std::size_t i = 0; i < n; ++i) {
          txns.push_back(make_txn(
              "t" + std::to_string(counter++), "addr" + std::to_string(a) + "@mail.com", 1.0,
              static_cast<std::int64_t>(rng.next_index(30)) * kSecondsPerDay +
                  static_cast<std::int64_t>(rng.next_index(kSecondsPerDay)),
              AssetClass::EmailAddress));
        }
      }
      CHECK(detect_suspicious_email(txns) == testutil::brute_force_suspicious_email(txns));
    }
  }
}

TEST_SUITE("normalize_currency") {
  TEST_CASE("converts with the rate dated at the transaction") {
    ExchangeRateTable rates;
    rates.add("EUR", parse_iso_date("2020-05-01"), 1.10);
    auto t = make_txn("t1", "x.com", 100.0, parse_iso_instant("2020-05-01T12:00:00Z"));
    t.currency = "EUR";
    const auto converted = normalize_currency(t, rates);
    CHECK(converted.price == doctest::Approx(110.0).epsilon(1e-12));
    CHECK(converted.currency == "USD");
  }

  TEST_CASE("target currency passes through even without a table") {
    ExchangeRateTable rates;
    auto t = make_txn("t1", "x.com", 42.0, parse_iso_instant("2020-05-01T12:00:00Z"));
    const auto converted = normalize_currency(t, rates);
    CHECK(converted.price == 42.0);
    CHECK(converted.currency == "USD");
  }

  TEST_CASE("falls back to the nearest earlier date within seven days") {
    ExchangeRateTable rates;
    rates.add("EUR", parse_iso_date("2020-05-01"), 2.0);
    rates.add("EUR", parse_iso_date("2020-04-28"), 3.0);
    auto t = make_txn("t1", "x.com", 10.0, parse_iso_instant("2020-05-03T00:00:00Z"));
    t.currency = "EUR";
    CHECK(normalize_currency(t, rates).price == doctest::Approx(20.0));
  }

  TEST_CASE("missing rate beyond the lookback raises") {
    ExchangeRateTable rates;
    rates.add("EUR", parse_iso_date("2020-05-01"), 2.0);
    auto t = make_txn("t1", "x.com", 10.0, parse_iso_instant("2020-05-09T00:00:00Z"));
    t.currency = "EUR";
    try {
      normalize_currency(t, rates);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::MissingRate);
    }
    // exactly seven days back still works
    t.timestamp = parse_iso_instant("2020-05-08T00:00:00Z");
    CHECK(normalize_currency(t, rates).price == doctest::Approx(20.0));
  }

  TEST_CASE("unit rates act as the identity on price") {
    ExchangeRateTable rates;
    rates.add("EUR", parse_iso_date("2020-05-01"), 1.0);
    auto t = make_txn("t1", "x.com", 123.456, parse_iso_instant("2020-05-01T00:00:00Z"));
    t.currency = "EUR";
    CHECK(normalize_currency(t, rates).price == 123.456);
  }

  TEST_CASE("rates csv loads and rejects bad rows") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "assetval_rates_test";
    fs::create_directories(dir);
    {
      std::ofstream out(dir / "rates.csv");
      out << "currency,date,rate_to_target\nEUR,2020-05-01,1.25\n";
    }
    auto table = ExchangeRateTable::load_csv(dir / "rates.csv");
    CHECK(table.rate_on("EUR", parse_iso_date("2020-05-01")) == doctest::Approx(1.25));
    {
      std::ofstream out(dir / "bad.csv");
      out << "currency,date,rate_to_target\nEUR,2020-05-01,-2\n";
    }
    CHECK_THROWS_AS(ExchangeRateTable::load_csv(dir / "bad.csv"), Error);
    fs::remove_all(dir);
  }
}

TEST_SUITE("chronological_split") {
  TEST_CASE("90/5/5 sizes on a hundred transactions") {
    std::vector<Transaction> txns;
    for (int i = 0; i < 100; ++i)
      txns.push_back(make_txn("r" + std::to_string(i), "x.com", 5.0, 1000 + i));
    const auto split = chronological_split(txns, 0.05, 0.05);
    CHECK(split.train.size() == 90);
    CHECK(split.dev.size() == 5);
    CHECK(split.test.size() == 5);
  }

  TEST_CASE("singleton input goes to train") {
    const auto split = chronological_split({make_txn("r", "x.com", 5.0, 0)}, 0.05, 0.05);
    CHECK(split.train.size() == 1);
    CHECK(split.dev.empty());
    CHECK(split.test.empty());
  }

  TEST_CASE("equal timestamps break ties by record id") {
    std::vector<Transaction> txns = {make_txn("c", "x.com", 5.0, 7),
                                     make_txn("a", "x.com", 5.0, 7),
                                     make_txn("b", "x.com", 5.0, 7)};
    const auto split = chronological_split(txns, 0.34, 0.34);
    REQUIRE(split.train.size() == 1);
    CHECK(split.train[0].record_id == "a");
    CHECK(split.dev[0].record_id == "b");
    CHECK(split.test[0].record_id == "c");
  }

  TEST_CASE("empty input raises") {
    CHECK_THROWS_AS(chronological_split({}, 0.05, 0.05), Error);
  }

  TEST_CASE("partition property on random corpora") {
    RandomSource rng(3);
    for (int iter = 0; iter < 200; ++iter) {
      const std::size_t n = 1 + rng.next_index(200);
      std::vector<Transaction> txns;
      for (std::size_t i = 0; i < n; ++i) {
        txns.push_back(make_txn("r" + std::to_string(i), "x.com", 5.0,
                                static_cast<std::int64_t>(rng.next_index(1000))));
      }
      const auto split = chronological_split(txns, 0.05, 0.05);
      CHECK(split.train.size() + split.dev.size() + split.test.size() == n);
      auto expected_test = static_cast<std::size_t>(std::floor(0.05 * n + 0.5));
      auto expected_dev = static_cast<std::size_t>(std::floor(0.05 * n + 0.5));
      CHECK(split.test.size() == expected_test);
      CHECK(split.dev.size() == expected_dev);

      // chain of timestamps across boundaries
      std::vector<const Transaction*> ordered;
      for (const auto& t : split.train) ordered.push_back(&t);
      for (const auto& t : split.dev) ordered.push_back(&t);
      for (const auto& t : split.test) ordered.push_back(&t);
      for (std::size_t i = 1; i < ordered.size(); ++i)
        CHECK(ordered[i - 1]->timestamp <= ordered[i]->timestamp);

      // multiset equality with the input
      std::vector<std::string> in_ids, out_ids;
      for (const auto& t : txns) in_ids.push_back(t.record_id);
      for (const auto* t : ordered) out_ids.push_back(t->record_id);
      std::sort(in_ids.begin(), in_ids.end());
      std::sort(out_ids.begin(), out_ids.end());
      CHECK(in_ids == out_ids);
    }
  }
}

TEST_SUITE("compute_statistics") {
  TEST_CASE("per-asset counts") {
    std::vector<Transaction> txns = {make_txn("a", "x.com", 1.0, 0),
                                     make_txn("b", "x.com", 2.0, kSecondsPerDay),
                                     make_txn("c", "y.com", 3.0, 2 * kSecondsPerDay)};
    const auto stats = compute_statistics(txns);
    CHECK(stats.per_asset_mean == doctest::Approx(1.5));
    CHECK(stats.per_asset_max == 2);
    CHECK(stats.price_median == 2.0);
    // population std dev of {1,2,3}
    CHECK(stats.price_stddev == doctest::Approx(std::sqrt(2.0 / 3.0)));
    CHECK(stats.suffix_count == 1);
    CHECK(stats.platform_share.at("test") == doctest::Approx(1.0));
  }

  TEST_CASE("monthly series covers the full range, brute-forced by month") {
    RandomSource rng(5);
    std::vector<Transaction> txns;
    const std::int64_t base = parse_iso_instant("2021-01-15T00:00:00Z");
    for (int i = 0; i < 60; ++i) {
      txns.push_back(make_txn("r" + std::to_string(i), "x.com", 1.0 + rng.next_double(),
                              base + static_cast<std::int64_t>(rng.next_index(365)) *
                                         kSecondsPerDay));
    }
    const auto stats = compute_statistics(txns);

    // oracle: bucket every transaction by its civil month
    std::map<std::pair<int, unsigned>, std::size_t> oracle;
    for (const auto& t : txns) {
      int y;
      unsigned m, d;
      civil_from_days(day_of_instant(t.timestamp), y, m, d);
      oracle[{y, m}] += 1;
    }
    std::size_t covered = 0;
    for (const auto& point : stats.monthly) {
      auto it = oracle.find({point.year, point.month});
      if (it == oracle.end()) {
        CHECK(point.volume == 0);
      } else {
        CHECK(point.volume == it->second);
        ++covered;
      }
    }
    CHECK(covered == oracle.size());
    // contiguous month coverage from first to last transaction
    const auto first = stats.monthly.front();
    const auto last = stats.monthly.back();
    int fy;
    unsigned fm, fd;
    civil_from_days(day_of_instant(stats.first_timestamp), fy, fm, fd);
    CHECK(first.year == fy);
    CHECK(first.month == fm);
    civil_from_days(day_of_instant(stats.last_timestamp), fy, fm, fd);
    CHECK(last.year == fy);
    CHECK(last.month == fm);
  }

  TEST_CASE("a twelve-month corpus yields twelve buckets") {
    std::vector<Transaction> txns;
    for (int m = 1; m <= 12; ++m) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "2021-%02d-10T00:00:00Z", m);
      txns.push_back(make_txn("r" + std::to_string(m), "x.com", 2.0, parse_iso_instant(buf)));
    }
    CHECK(compute_statistics(txns).monthly.size() == 12);
  }

  TEST_CASE("platform shares sum to one") {
    RandomSource rng(9);
    std::vector<Transaction> txns;
    for (int i = 0; i < 100; ++i) {
      auto t = make_txn("r" + std::to_string(i), "x.com", 1.0, i);
      t.platform = "p" + std::to_string(rng.next_index(5));
      txns.push_back(t);
    }
    const auto stats = compute_statistics(txns);
    double total = 0.0;
    for (const auto& [_, share] : stats.platform_share) total += share;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("empty input raises") { CHECK_THROWS_AS(compute_statistics({}), Error); }
}

TEST_SUITE("transaction io") {
  TEST_CASE("jsonl round trip") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "assetval_io_test";
    fs::create_directories(dir);
    std::vector<Transaction> txns;
    auto t = make_txn("r1", "example.com", 99.5, parse_iso_instant("2021-06-01T10:20:30Z"));
    t.collection = "col";
    t.buyer = "0xb";
    t.seller = "0xs";
    t.sale_kind = SaleKind::Auction;
    t.reserve_status = ReserveStatus::ReserveMet;
    t.bid_count = 4;
    txns.push_back(t);
    txns.push_back(make_txn("r2", "other.net", 1.25, parse_iso_instant("2021-06-02T00:00:00Z")));

    write_jsonl(dir / "txns.jsonl", txns);
    const auto loaded = read_jsonl(dir / "txns.jsonl");
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].record_id == "r1");
    CHECK(loaded[0].collection.value() == "col");
    CHECK(loaded[0].reserve_status.value() == ReserveStatus::ReserveMet);
    CHECK(loaded[0].bid_count.value() == 4);
    CHECK(loaded[0].timestamp == t.timestamp);
    CHECK(loaded[1].buyer == std::nullopt);
    fs::remove_all(dir);
  }

  TEST_CASE("malformed lines and bad fields raise") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "assetval_io_bad";
    fs::create_directories(dir);
    {
      std::ofstream out(dir / "bad.jsonl");
      out << "{not json}\n";
    }
    CHECK_THROWS_AS(read_jsonl(dir / "bad.jsonl"), Error);
    {
      std::ofstream out(dir / "neg.jsonl");
      out << R"({"record_id":"r","asset_id":"x.com","asset_class":"domain_name","price":-1,)"
          << R"("currency":"USD","timestamp":"2021-01-01T00:00:00Z","platform":"p",)"
          << R"("sale_kind":"buy_it_now","is_bundle":false,"name_known":true})" << "\n";
    }
    CHECK_THROWS_AS(read_jsonl(dir / "neg.jsonl"), Error);
    fs::remove_all(dir);
  }
}

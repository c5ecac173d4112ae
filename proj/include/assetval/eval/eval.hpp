#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "assetval/dataset/transaction.hpp"

namespace assetval::eval {

// Mean squared logarithmic error over positive prices. The log1p variant
// replaces ln(p) by ln(1+p).
double msle(std::span<const double> predicted_prices, std::span<const double> true_prices,
            bool log1p = false);

std::vector<double> squared_log_errors(std::span<const double> predicted_prices,
                                       std::span<const double> true_prices, bool log1p = false);

enum class Grouping { NameLength, Suffix, CharSet };

std::string_view grouping_name(Grouping g);

struct GroupRow {
  std::string grouping;
  std::string bucket;
  std::size_t count = 0;
  double share = 0.0;
  double msle = 0.0;
};

struct EvaluationReport {
  double overall_msle = 0.0;
  std::size_t n = 0;
  std::vector<GroupRow> groups;
  std::string model_id;
  std::string split_id;

  nlohmann::ordered_json to_json() const;
  std::string to_csv() const;  // one row per bucket
};

// Buckets: name lengths 1..10 then "11+"; the given top suffixes (train
// frequency order) then "other"; character sets {letters, numbers, other}.
// Only non-empty buckets are reported, so shares sum to one per grouping.
EvaluationReport grouped_eval(std::span<const double> predicted_prices,
                              std::span<const dataset::Transaction> txns,
                              const std::vector<Grouping>& groupings,
                              std::span<const std::string> top_train_suffixes = {},
                              std::string model_id = "", std::string split_id = "");

// The k most frequent suffixes; ties break lexicographically.
std::vector<std::string> top_suffixes(std::span<const dataset::Transaction> train,
                                      std::size_t k = 10);

// Elementwise exp((ln a + ln b) / 2).
std::vector<double> ensemble_geometric(std::span<const double> a, std::span<const double> b);

std::vector<double> clamp_predictions(std::span<const double> predictions, double lo, double hi);

// Two-sided paired bootstrap on the mean of per-example error differences.
double paired_significance(std::span<const double> sq_log_errors_a,
                           std::span<const double> sq_log_errors_b,
                           std::size_t resamples = 10000, std::uint64_t seed = 0);

}  // namespace assetval::eval

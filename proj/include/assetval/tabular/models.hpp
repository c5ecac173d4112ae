#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "assetval/common/matrix.hpp"
#include "assetval/tabular/tree.hpp"

namespace assetval::tabular {

using SampleWeights = std::vector<double>;

// Uniform weights except the newest `recent` rows, which get `factor`. Rows
// are assumed chronologically ordered; recent > n clamps to n.
SampleWeights recency_weights(std::size_t n, std::size_t recent, double factor = 2.0);

// Constant predictor at the geometric mean price; the MSLE minimizer.
struct MeanBaseline {
  double log_price_mean = 0.0;

  double predict_log_row(std::span<const double>) const { return log_price_mean; }
};

MeanBaseline fit_mean_baseline(std::span<const double> prices);

struct GbtConfig {
  std::size_t n_trees = 100;
  double learning_rate = 0.3;
  int max_depth = 6;
  std::size_t min_leaf = 1;
  std::uint64_t seed = 0;
};

// First-order gradient boosting with squared error in log-price space.
struct GbtModel {
  std::vector<RegressionTree> trees;
  double learning_rate = 0.3;
  double base_score = 0.0;
  std::size_t n_features = 0;
  std::vector<double> stage_losses;  // weighted train MSE after each stage

  double predict_log_row(std::span<const double> row) const;
};

GbtModel fit_gbt(const Matrix& X, std::span<const double> y_log,
                 std::span<const double> weights, const GbtConfig& config);

struct RfConfig {
  std::size_t n_trees = 100;
  int max_depth = -1;
  std::size_t min_leaf = 1;
  bool bootstrap = true;
  std::uint64_t seed = 0;
  unsigned n_threads = 1;  // result is identical for any thread count
};

struct RfModel {
  std::vector<RegressionTree> trees;
  std::size_t n_features = 0;

  double predict_log_row(std::span<const double> row) const;
};

RfModel fit_random_forest(const Matrix& X, std::span<const double> y_log,
                          std::span<const double> weights, const RfConfig& config);

enum class AdaLoss { Linear, Square, Exponential };

struct AdaConfig {
  std::size_t n_stages = 50;
  int tree_depth = 3;
  AdaLoss loss = AdaLoss::Linear;
  std::uint64_t seed = 0;
};

// AdaBoost.R2: per-stage weighted resampling, loss-scaled reweighting, and
// weighted-median aggregation with stage weights ln(1/beta).
struct AdaStage {
  RegressionTree tree;
  double log_inv_beta = 0.0;
};

struct AdaModel {
  std::vector<AdaStage> stages;
  std::size_t n_features = 0;

  double predict_log_row(std::span<const double> row) const;
};

AdaModel fit_adaboost_r2(const Matrix& X, std::span<const double> y_log,
                         std::span<const double> weights, const AdaConfig& config);

// exp of the model's log-space prediction per row; always > 0.
template <typename Model>
std::vector<double> predict_prices(const Model& model, const Matrix& X) {
  std::vector<double> out(X.rows);
  for (std::size_t r = 0; r < X.rows; ++r) out[r] = std::exp(model.predict_log_row(X.row(r)));
  return out;
}

void check_feature_count(std::size_t expected, std::size_t actual);

}  // namespace assetval::tabular

#include "assetval/tabular/models.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "assetval/common/error.hpp"
#include "assetval/common/rng.hpp"

namespace assetval::tabular {

namespace {

void check_training_inputs(const Matrix& X, std::span<const double> y,
                           std::span<const double> w) {
  if (X.rows == 0) raise(Errc::EmptyInput, "no training rows");
  if (X.rows != y.size() || y.size() != w.size())
    raise(Errc::ShapeMismatch, "X, y, weights must have equal row counts");
  for (double wi : w) {
    if (!(wi > 0.0)) raise(Errc::NonPositiveWeight, "sample weight must be > 0");
  }
}

std::vector<std::size_t> weighted_bootstrap(std::span<const double> weights, std::size_t n,
                                            RandomSource& rng) {
  const std::vector<double> cum = cumulative_sums(weights);
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = rng.next_weighted_index(cum);
  return rows;
}

}  // namespace

void check_feature_count(std::size_t expected, std::size_t actual) {
  if (expected != actual)
    raise(Errc::ShapeMismatch, "expected " + std::to_string(expected) + " features, got " +
                                   std::to_string(actual));
}

SampleWeights recency_weights(std::size_t n, std::size_t recent, double factor) {
  if (!(factor > 0.0)) raise(Errc::NonPositiveWeight, "recency factor must be > 0");
  SampleWeights w(n, 1.0);
  const std::size_t boosted = std::min(recent, n);
  for (std::size_t i = n - boosted; i < n; ++i) w[i] = factor;
  return w;
}

MeanBaseline fit_mean_baseline(std::span<const double> prices) {
  if (prices.empty()) raise(Errc::EmptyInput, "fit_mean_baseline");
  double acc = 0.0;
  for (double p : prices) {
    if (!(p > 0.0)) raise(Errc::NonPositiveValue, "prices must be > 0");
    acc += std::log(p);
  }
  return MeanBaseline{acc / static_cast<double>(prices.size())};
}

double GbtModel::predict_log_row(std::span<const double> row) const {
  double out = base_score;
  for (const auto& tree : trees) out += learning_rate * tree.predict_row(row);
  return out;
}

GbtModel fit_gbt(const Matrix& X, std::span<const double> y_log,
                 std::span<const double> weights, const GbtConfig& config) {
  check_training_inputs(X, y_log, weights);
  GbtModel model;
  model.learning_rate = config.learning_rate;
  model.n_features = X.cols;

  double sw = 0.0, swy = 0.0;
  for (std::size_t i = 0; i < y_log.size(); ++i) {
    sw += weights[i];
    swy += weights[i] * y_log[i];
  }
  model.base_score = swy / sw;

  std::vector<double> pred(X.rows, model.base_score);
  std::vector<double> residual(X.rows);
  std::vector<double> tree_out(X.rows);
  TreeParams params{config.max_depth, config.min_leaf, 1.0, config.seed};

  model.trees.reserve(config.n_trees);
  for (std::size_t stage = 0; stage < config.n_trees; ++stage) {
    for (std::size_t i = 0; i < X.rows; ++i) residual[i] = y_log[i] - pred[i];
    params.rng_seed = RandomSource::mix(config.seed, stage);
    RegressionTree tree = fit_tree(X, residual, weights, params);
    tree.predict(X, tree_out);
    for (std::size_t i = 0; i < X.rows; ++i) pred[i] += config.learning_rate * tree_out[i];
    double loss = 0.0;
    for (std::size_t i = 0; i < X.rows; ++i) {
      const double d = y_log[i] - pred[i];
      loss += weights[i] * d * d;
    }
    model.stage_losses.push_back(loss / sw);
    model.trees.push_back(std::move(tree));
  }
  return model;
}

double RfModel::predict_log_row(std::span<const double> row) const {
  double acc = 0.0;
  for (const auto& tree : trees) acc += tree.predict_row(row);
  return acc / static_cast<double>(trees.size());
}

RfModel fit_random_forest(const Matrix& X, std::span<const double> y_log,
                          std::span<const double> weights, const RfConfig& config) {
  check_training_inputs(X, y_log, weights);
  if (config.n_trees == 0) raise(Errc::InvalidValue, "random forest needs >= 1 tree");
  RfModel model;
  model.n_features = X.cols;
  model.trees.resize(config.n_trees);

  const SampleWeights unit(X.rows, 1.0);
  auto fit_one = [&](std::size_t t) {
    TreeParams params{config.max_depth, config.min_leaf, 1.0,
                      RandomSource::mix(config.seed, t)};
    if (config.bootstrap) {
      RandomSource rng(RandomSource::mix(config.seed, t));
      const auto rows = weighted_bootstrap(weights, X.rows, rng);
      model.trees[t] = fit_tree_on_rows(X, y_log, unit, rows, params);
    } else {
      model.trees[t] = fit_tree(X, y_log, weights, params);
    }
  };

  const unsigned threads = std::max(1u, config.n_threads);
  if (threads == 1) {
    for (std::size_t t = 0; t < config.n_trees; ++t) fit_one(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned k = 0; k < threads; ++k) {
      pool.emplace_back([&]() {
        for (std::size_t t = next.fetch_add(1); t < config.n_trees; t = next.fetch_add(1))
          fit_one(t);
      });
    }
    for (auto& th : pool) th.join();
  }
  return model;
}

double AdaModel::predict_log_row(std::span<const double> row) const {
  std::vector<std::pair<double, double>> scored;  // (prediction, stage weight)
  scored.reserve(stages.size());
  double total = 0.0;
  for (const auto& s : stages) {
    scored.emplace_back(s.tree.predict_row(row), s.log_inv_beta);
    total += s.log_inv_beta;
  }
  std::sort(scored.begin(), scored.end());
  double acc = 0.0;
  for (const auto& [pred, weight] : scored) {
    acc += weight;
    if (acc >= 0.5 * total) return pred;
  }
  return scored.back().first;
}

AdaModel fit_adaboost_r2(const Matrix& X, std::span<const double> y_log,
                         std::span<const double> weights, const AdaConfig& config) {
  check_training_inputs(X, y_log, weights);
  constexpr double kMinBeta = 1e-10;
  AdaModel model;
  model.n_features = X.cols;

  std::vector<double> dist(weights.begin(), weights.end());
  double dist_sum = std::accumulate(dist.begin(), dist.end(), 0.0);
  for (double& d : dist) d /= dist_sum;

  const SampleWeights unit(X.rows, 1.0);
  std::vector<double> pred(X.rows);
  std::vector<double> loss(X.rows);

  for (std::size_t stage = 0; stage < config.n_stages; ++stage) {
    RandomSource rng(RandomSource::mix(config.seed, stage));
    const auto rows = weighted_bootstrap(dist, X.rows, rng);
    TreeParams params{config.tree_depth, 1, 1.0, RandomSource::mix(config.seed, stage)};
    RegressionTree tree = fit_tree_on_rows(X, y_log, unit, rows, params);
    tree.predict(X, pred);

    double max_err = 0.0;
    for (std::size_t i = 0; i < X.rows; ++i)
      max_err = std::max(max_err, std::abs(pred[i] - y_log[i]));
    if (max_err <= 0.0) {
      // Perfect stage; beta -> 0 is clamped and boosting stops.
      model.stages.push_back({std::move(tree), std::log(1.0 / kMinBeta)});
      break;
    }
    double avg_loss = 0.0;
    for (std::size_t i = 0; i < X.rows; ++i) {
      const double frac = std::abs(pred[i] - y_log[i]) / max_err;
      switch (config.loss) {
        case AdaLoss::Linear: loss[i] = frac; break;
        case AdaLoss::Square: loss[i] = frac * frac; break;
        case AdaLoss::Exponential: loss[i] = 1.0 - std::exp(-frac); break;
      }
      avg_loss += dist[i] * loss[i];
    }
    if (avg_loss >= 0.5) {
      if (model.stages.empty()) {
        const double beta = std::min(avg_loss / (1.0 - avg_loss), 1.0 - kMinBeta);
        model.stages.push_back({std::move(tree), std::log(1.0 / beta)});
      }
      break;
    }
    const double beta = std::max(avg_loss / (1.0 - avg_loss), kMinBeta);
    model.stages.push_back({std::move(tree), std::log(1.0 / beta)});

    double sum = 0.0;
    for (std::size_t i = 0; i < X.rows; ++i) {
      dist[i] *= std::pow(beta, 1.0 - loss[i]);
      sum += dist[i];
    }
    if (!(sum > 0.0) || !std::isfinite(sum)) break;
    for (double& d : dist) d /= sum;
  }
  return model;
}

}  // namespace assetval::tabular

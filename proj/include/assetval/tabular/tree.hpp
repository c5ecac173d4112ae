#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "assetval/common/matrix.hpp"

namespace assetval::tabular {

// Flat binary regression tree. Internal nodes route rows[feature] <= threshold
// to the left child; leaves carry the fitted value and have feature = -1.
struct TreeNode {
  std::int32_t feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0;

  bool is_leaf() const { return feature < 0; }
};

struct RegressionTree {
  std::vector<TreeNode> nodes;

  double predict_row(std::span<const double> row) const;
  void predict(const Matrix& X, std::span<double> out) const;
};

struct TreeParams {
  int max_depth = -1;  // < 0 means unbounded
  std::size_t min_leaf = 1;
  double feature_subsample_ratio = 1.0;
  std::uint64_t rng_seed = 0;
};

// Greedy weighted-variance-reduction splits; candidate thresholds are the
// midpoints between consecutive distinct sorted feature values; leaf values
// are weighted means of y. Splitting stops at max_depth, min_leaf, or when no
// split has positive gain.
RegressionTree fit_tree(const Matrix& X, std::span<const double> y,
                        std::span<const double> weights, const TreeParams& params);

// Restricted variant used by the ensembles: fits on the given row subset.
RegressionTree fit_tree_on_rows(const Matrix& X, std::span<const double> y,
                                std::span<const double> weights,
                                std::span<const std::size_t> rows, const TreeParams& params);

}  // namespace assetval::tabular

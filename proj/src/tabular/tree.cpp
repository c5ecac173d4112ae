#include "assetval/tabular/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "assetval/common/error.hpp"
#include "assetval/common/rng.hpp"

namespace assetval::tabular {

double RegressionTree::predict_row(std::span<const double> row) const {
  std::size_t idx = 0;
  while (!nodes[idx].is_leaf()) {
    const TreeNode& n = nodes[idx];
    idx = static_cast<std::size_t>(
        row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
  }
  return nodes[idx].value;
}

void RegressionTree::predict(const Matrix& X, std::span<double> out) const {
  for (std::size_t r = 0; r < X.rows; ++r) out[r] = predict_row(X.row(r));
}

namespace {

struct PendingNode {
  std::size_t node_index;
  std::vector<std::size_t> rows;
  int depth;
};

struct BestSplit {
  double gain = 0.0;
  std::int32_t feature = -1;
  double threshold = 0.0;
};

struct NodeSums {
  double sw = 0.0, swy = 0.0, swyy = 0.0;
};

NodeSums sums_over(std::span<const std::size_t> rows, std::span<const double> y,
                   std::span<const double> w) {
  NodeSums s;
  for (std::size_t r : rows) {
    s.sw += w[r];
    s.swy += w[r] * y[r];
    s.swyy += w[r] * y[r] * y[r];
  }
  return s;
}

double weighted_sse(const NodeSums& s) {
  return s.sw > 0.0 ? s.swyy - s.swy * s.swy / s.sw : 0.0;
}

}  // namespace

RegressionTree fit_tree_on_rows(const Matrix& X, std::span<const double> y,
                                std::span<const double> weights,
                                std::span<const std::size_t> rows, const TreeParams& params) {
  if (X.rows != y.size() || y.size() != weights.size() || rows.empty())
    raise(Errc::ShapeMismatch, "fit_tree: rows(X), y, weights must align and be non-empty");
  for (std::size_t r : rows) {
    if (!(weights[r] > 0.0)) raise(Errc::NonPositiveWeight, "sample weight must be > 0");
  }

  const std::size_t n_features = X.cols;
  std::size_t n_candidates = n_features;
  if (params.feature_subsample_ratio < 1.0) {
    n_candidates = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::llround(params.feature_subsample_ratio * static_cast<double>(n_features))));
  }

  RegressionTree tree;
  std::vector<PendingNode> stack;
  tree.nodes.emplace_back();
  stack.push_back({0, std::vector<std::size_t>(rows.begin(), rows.end()), 0});

  std::uint64_t node_counter = 0;
  std::vector<std::size_t> order;
  std::vector<std::size_t> feature_pool(n_features);

  while (!stack.empty()) {
    PendingNode item = std::move(stack.back());
    stack.pop_back();
    const NodeSums total = sums_over(item.rows, y, weights);
    const double parent_sse = weighted_sse(total);
    const double leaf_value = total.swy / total.sw;

    auto make_leaf = [&]() {
      tree.nodes[item.node_index].feature = -1;
      tree.nodes[item.node_index].value = leaf_value;
    };

    const bool depth_ok = params.max_depth < 0 || item.depth < params.max_depth;
    if (!depth_ok || item.rows.size() < 2 * params.min_leaf || item.rows.size() < 2) {
      make_leaf();
      continue;
    }

    // Candidate feature set; full by default, seeded subsample otherwise.
    std::iota(feature_pool.begin(), feature_pool.end(), 0);
    if (n_candidates < n_features) {
      RandomSource rng(RandomSource::mix(params.rng_seed, node_counter));
      for (std::size_t i = 0; i < n_candidates; ++i) {
        const std::size_t j = i + rng.next_index(n_features - i);
        std::swap(feature_pool[i], feature_pool[j]);
      }
      std::sort(feature_pool.begin(), feature_pool.begin() + static_cast<std::ptrdiff_t>(n_candidates));
    }
    ++node_counter;

    BestSplit best;
    const double min_gain = 1e-12 * std::max(1.0, std::abs(parent_sse));
    for (std::size_t fi = 0; fi < n_candidates; ++fi) {
      const std::size_t f = feature_pool[fi];
      order = item.rows;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = X.at(a, f), vb = X.at(b, f);
        if (va != vb) return va < vb;
        return a < b;
      });
      NodeSums left;
      for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        const std::size_t r = order[k];
        left.sw += weights[r];
        left.swy += weights[r] * y[r];
        left.swyy += weights[r] * y[r] * y[r];
        const double v0 = X.at(r, f), v1 = X.at(order[k + 1], f);
        if (v0 == v1) continue;
        const std::size_t n_left = k + 1, n_right = order.size() - k - 1;
        if (n_left < params.min_leaf || n_right < params.min_leaf) continue;
        NodeSums right{total.sw - left.sw, total.swy - left.swy, total.swyy - left.swyy};
        const double gain = parent_sse - weighted_sse(left) - weighted_sse(right);
        if (gain > best.gain && gain > min_gain) {
          best.gain = gain;
          best.feature = static_cast<std::int32_t>(f);
          best.threshold = 0.5 * (v0 + v1);
        }
      }
    }

    if (best.feature < 0) {
      make_leaf();
      continue;
    }

    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t r : item.rows) {
      if (X.at(r, static_cast<std::size_t>(best.feature)) <= best.threshold)
        left_rows.push_back(r);
      else
        right_rows.push_back(r);
    }
    if (left_rows.empty() || right_rows.empty()) {
      make_leaf();
      continue;
    }

    const auto left_index = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    const auto right_index = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    TreeNode& node = tree.nodes[item.node_index];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = left_index;
    node.right = right_index;
    stack.push_back({static_cast<std::size_t>(right_index), std::move(right_rows), item.depth + 1});
    stack.push_back({static_cast<std::size_t>(left_index), std::move(left_rows), item.depth + 1});
  }
  return tree;
}

RegressionTree fit_tree(const Matrix& X, std::span<const double> y,
                        std::span<const double> weights, const TreeParams& params) {
  if (X.rows == 0) raise(Errc::ShapeMismatch, "fit_tree: empty matrix");
  std::vector<std::size_t> rows(X.rows);
  std::iota(rows.begin(), rows.end(), 0);
  return fit_tree_on_rows(X, y, weights, rows, params);
}

}  // namespace assetval::tabular

#include "assetval/dataset/split.hpp"

#include <algorithm>
#include <cmath>

#include "assetval/common/error.hpp"

namespace assetval::dataset {

DatasetSplit chronological_split(std::vector<Transaction> txns, double dev_frac,
                                 double test_frac) {
  if (txns.empty()) raise(Errc::EmptyInput, "chronological_split");
  if (dev_frac < 0.0 || test_frac < 0.0 || dev_frac + test_frac >= 1.0)
    raise(Errc::InvalidBounds, "split fractions must satisfy 0 <= dev+test < 1");

  std::stable_sort(txns.begin(), txns.end(), [](const Transaction& a, const Transaction& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.record_id < b.record_id;
  });

  const std::size_t n = txns.size();
  auto round_half_up = [](double x) {
    return static_cast<std::size_t>(std::floor(x + 0.5));
  };
  std::size_t n_test = std::min(round_half_up(test_frac * static_cast<double>(n)), n);
  std::size_t n_dev = std::min(round_half_up(dev_frac * static_cast<double>(n)), n - n_test);
  const std::size_t n_train = n - n_dev - n_test;

  DatasetSplit split;
  split.train.assign(txns.begin(), txns.begin() + static_cast<std::ptrdiff_t>(n_train));
  split.dev.assign(txns.begin() + static_cast<std::ptrdiff_t>(n_train),
                   txns.begin() + static_cast<std::ptrdiff_t>(n_train + n_dev));
  split.test.assign(txns.begin() + static_cast<std::ptrdiff_t>(n_train + n_dev), txns.end());

  if (!split.test.empty()) split.test_begin = split.test.front().timestamp;
  else split.test_begin = txns.back().timestamp;
  if (!split.dev.empty()) split.dev_begin = split.dev.front().timestamp;
  else split.dev_begin = split.test_begin;
  return split;
}

}  // namespace assetval::dataset

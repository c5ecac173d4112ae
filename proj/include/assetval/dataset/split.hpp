#pragma once

#include <cstdint>
#include <vector>

#include "assetval/dataset/transaction.hpp"

namespace assetval::dataset {

// Chronological partition; every training timestamp <= every dev timestamp <=
// every test timestamp. Boundaries are the first instants of the dev and test
// segments (falling back to the neighbouring segment when one is empty).
struct DatasetSplit {
  std::vector<Transaction> train;
  std::vector<Transaction> dev;
  std::vector<Transaction> test;
  std::int64_t dev_begin = 0;
  std::int64_t test_begin = 0;
};

// Sorts by (timestamp, record_id), assigns the last round(test_frac*N) records
// to test, the preceding round(dev_frac*N) to dev, and the rest to train.
// Rounding is half-up, test first.
DatasetSplit chronological_split(std::vector<Transaction> txns, double dev_frac,
                                 double test_frac);

}  // namespace assetval::dataset

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "assetval/common/error.hpp"

namespace assetval {

// Row-major dense matrix of doubles.
struct Matrix {
  std::vector<double> data;
  std::size_t rows = 0;
  std::size_t cols = 0;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : data(r * c, 0.0), rows(r), cols(c) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data.data() + r * cols, cols);
  }
  std::span<double> row(std::size_t r) {
    return std::span<double>(data.data() + r * cols, cols);
  }

  void push_row(std::span<const double> values) {
    if (rows == 0 && cols == 0) cols = values.size();
    if (values.size() != cols) raise(Errc::ShapeMismatch, "row width mismatch");
    data.insert(data.end(), values.begin(), values.end());
    ++rows;
  }
};

}  // namespace assetval

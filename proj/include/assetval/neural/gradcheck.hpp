#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "assetval/neural/model.hpp"

namespace assetval::neural {

struct GradCheckOptions {
  std::size_t sample_size = 200;
  double fd_step = 1e-4;
  std::uint64_t seed = 0;
  // Negative-control knob: scales the analytic gradients of the head tensors.
  double corrupt_head_scale = 1.0;
  // Restricts sampling to tensors whose name starts with this prefix.
  std::string restrict_prefix;
};

// Compares analytic gradients of the regression loss against five-point
// central finite differences on a stratified random parameter sample; returns
// the maximum relative error. Dropout is disabled throughout.
double grad_check(TransformerRegressor& model, std::span<const InputSequence> batch,
                  std::span<const double> targets_log, const GradCheckOptions& opts = {});

}  // namespace assetval::neural

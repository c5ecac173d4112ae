#include "assetval/neural/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "assetval/common/rng.hpp"

namespace assetval::neural {

double grad_check(TransformerRegressor& model, std::span<const InputSequence> batch,
                  std::span<const double> targets_log, const GradCheckOptions& opts) {
  if (opts.sample_size == 0) return 0.0;

  model.zero_grads();
  model.regression_loss_and_grad(batch, targets_log, false, nullptr);
  std::vector<double> analytic = model.grads();
  if (opts.corrupt_head_scale != 1.0) {
    for (const auto& t : model.tensors()) {
      if (t.name.rfind("head.", 0) == 0) {
        for (std::size_t i = 0; i < t.size(); ++i)
          analytic[t.offset + i] *= opts.corrupt_head_scale;
      }
    }
  }

  std::vector<const ParamTensor*> pool;
  for (const auto& t : model.tensors()) {
    if (!opts.restrict_prefix.empty() && t.name.rfind(opts.restrict_prefix, 0) != 0) continue;
    if (t.size() > 0) pool.push_back(&t);
  }
  if (pool.empty()) return 0.0;

  // Round-robin over tensors so every layer is exercised.
  RandomSource rng(opts.seed);
  std::vector<std::size_t> sample;
  sample.reserve(opts.sample_size);
  for (std::size_t i = 0; i < opts.sample_size; ++i) {
    const ParamTensor& t = *pool[i % pool.size()];
    sample.push_back(t.offset + rng.next_index(t.size()));
  }

  auto& params = model.params();
  auto loss_at = [&](std::size_t idx, double value) {
    const double saved = params[idx];
    params[idx] = value;
    const double loss = model.regression_loss(batch, targets_log);
    params[idx] = saved;
    return loss;
  };

  // Five-point central stencil; the O(h^2) truncation of the two-point form
  // sits above the tolerance near the layer-norm curvature at init.
  const double h = opts.fd_step;
  double max_rel_err = 0.0;
  for (std::size_t idx : sample) {
    const double x = params[idx];
    const double fd = (loss_at(idx, x - 2 * h) - 8.0 * loss_at(idx, x - h) +
                       8.0 * loss_at(idx, x + h) - loss_at(idx, x + 2 * h)) /
                      (12.0 * h);
    const double an = analytic[idx];
    // The 1e-6 floor is an absolute tolerance: below it, finite differences
    // only measure float roundoff of the loss.
    const double rel = std::abs(fd - an) / std::max(1e-6, std::abs(fd) + std::abs(an));
    max_rel_err = std::max(max_rel_err, rel);
  }
  return max_rel_err;
}

}  // namespace assetval::neural

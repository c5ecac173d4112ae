#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "assetval/common/rng.hpp"
#include "assetval/neural/input.hpp"
#include "assetval/neural/vocab.hpp"

namespace assetval::neural {

struct ModelConfig {
  std::size_t d_model = 128;
  std::size_t n_layers = 2;
  std::size_t n_heads = 4;
  std::size_t ff_dim = 512;
  std::size_t max_len = 64;
  double dropout = 0.1;
  InputVariant variant = InputVariant::Vanilla;

  nlohmann::ordered_json to_json() const;
  static ModelConfig from_json(const nlohmann::json& j);
};

struct ParamTensor {
  std::string name;
  std::size_t offset = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t size() const { return rows * cols; }
};

// One masked-LM training position: sequence index, token position, original id.
struct MlmTarget {
  std::size_t seq = 0;
  std::size_t pos = 0;
  std::int32_t label = 0;
};

// Pre-norm transformer encoder over character sequences with learned position
// embeddings. The regression head is a linear map from the final hidden state
// at [CLS]; the masked-LM head ties the output projection to the token
// embedding matrix. Parameters live in one flat vector addressed through the
// tensor registry.
class TransformerRegressor {
 public:
  TransformerRegressor(TokenizerVocab vocab, ModelConfig config, std::uint64_t init_seed);

  const TokenizerVocab& vocab() const { return vocab_; }
  const ModelConfig& config() const { return config_; }
  const std::vector<ParamTensor>& tensors() const { return tensors_; }

  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }
  std::vector<double>& grads() { return grads_; }
  void zero_grads();

  // Predicted ln price per sequence; eval mode, no dropout.
  std::vector<double> predict_log(std::span<const InputSequence> batch) const;

  // Mean squared error against ln-price targets; eval mode, no gradients.
  double regression_loss(std::span<const InputSequence> batch,
                         std::span<const double> targets_log) const;

  // Accumulates parameter gradients of the regression loss. Dropout is active
  // only when `training` and a dropout RNG is supplied.
  double regression_loss_and_grad(std::span<const InputSequence> batch,
                                  std::span<const double> targets_log, bool training,
                                  RandomSource* dropout_rng);

  // Cross-entropy over the masked positions with the tied-embedding output
  // layer. An empty target list yields loss 0 and no gradient.
  double mlm_loss(std::span<const InputSequence> batch,
                  std::span<const MlmTarget> targets) const;
  double mlm_loss_and_grad(std::span<const InputSequence> batch,
                           std::span<const MlmTarget> targets, bool training,
                           RandomSource* dropout_rng);

 private:
  TokenizerVocab vocab_;
  ModelConfig config_;
  std::vector<ParamTensor> tensors_;
  std::map<std::string, std::size_t> offsets_;  // tensor name -> params offset
  std::vector<double> params_;
  std::vector<double> grads_;

  struct Workspace;

  std::size_t offset(const std::string& name) const;
  void register_tensor(const std::string& name, std::size_t rows, std::size_t cols);
  void build_registry();
  void init_params(std::uint64_t seed);

  void encoder_forward(std::span<const InputSequence> batch, bool training,
                       RandomSource* dropout_rng, Workspace& ws) const;
  void encoder_backward(const Workspace& ws, std::vector<double>& d_hidden);
};

}  // namespace assetval::neural

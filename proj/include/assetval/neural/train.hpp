#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "assetval/dataset/transaction.hpp"
#include "assetval/knowledge/knowledge.hpp"
#include "assetval/neural/model.hpp"

namespace assetval::neural {

struct FineTuneSchedule {
  std::size_t stage1_epochs = 1;
  std::size_t stage2_epochs = 3;
  std::size_t recent_t = 3000;
  double learning_rate = 1e-3;
  std::size_t batch_size = 64;
  std::uint64_t seed = 0;
};

struct TrainLogRow {
  int stage = 0;
  std::size_t epoch = 0;
  std::size_t step = 0;
  double loss = 0.0;
};

void write_train_log(const std::filesystem::path& path, std::span<const TrainLogRow> rows);

struct AdamState {
  std::vector<double> m, v;
  std::size_t step = 0;

  explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

// Returns the pre-clip global norm; gradients are scaled in place when the
// norm exceeds max_norm.
double clip_global_norm(std::span<double> grads, double max_norm);

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

struct RegressionExample {
  InputSequence input;
  double target_log = 0.0;
};

// Inputs for chronologically sorted transactions (timestamp then record_id).
std::vector<RegressionExample> build_regression_examples(
    std::span<const dataset::Transaction> txns, const knowledge::KnowledgeBase& kb,
    const TokenizerVocab& vocab, InputVariant variant, std::size_t max_len);

// Stage 1 runs over all examples, stage 2 over the newest recent_t. Each
// stage is an independent run: fresh optimizer state and a linear
// learning-rate decay over that stage's steps. Gradients are clipped at
// global norm 1. Fully deterministic for a fixed seed.
std::vector<TrainLogRow> train_two_stage(TransformerRegressor& model,
                                         std::span<const RegressionExample> train_chrono,
                                         const FineTuneSchedule& schedule);

double eval_regression_loss(const TransformerRegressor& model,
                            std::span<const RegressionExample> examples);

struct MlmConfig {
  double mask_prob = 0.15;
  std::size_t epochs = 1;
  double learning_rate = 1e-3;
  std::size_t batch_size = 64;
  std::uint64_t seed = 0;
};

// BERT-style masking over non-special tokens: 80% [MASK], 10% random
// character id, 10% unchanged. Trains the encoder through the tied-embedding
// output layer; the regression head is untouched.
std::vector<TrainLogRow> pretrain_mlm(TransformerRegressor& model,
                                      std::span<const InputSequence> corpus,
                                      const MlmConfig& config);

double eval_mlm_loss(const TransformerRegressor& model, std::span<const InputSequence> corpus,
                     double mask_prob, std::uint64_t seed);

}  // namespace assetval::neural

#include "assetval/neural/train.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "assetval/common/error.hpp"

namespace assetval::neural {

void write_train_log(const std::filesystem::path& path, std::span<const TrainLogRow> rows) {
  std::ofstream out(path);
  if (!out) raise(Errc::IoFailure, "cannot open " + path.string());
  out << "stage,epoch,step,loss\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%zu,%zu,%.17g\n", r.stage, r.epoch, r.step, r.loss);
    out << buf;
  }
}

double clip_global_norm(std::span<double> grads, double max_norm) {
  double sq = 0.0;
  for (double g : grads) sq += g * g;
  const double norm = std::sqrt(sq);
  if (norm > max_norm && norm > 0.0) {
    const double scale = max_norm / norm;
    for (double& g : grads) g *= scale;
  }
  return norm;
}

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               double lr, double beta1, double beta2, double eps) {
  state.step += 1;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = beta1 * state.m[i] + (1.0 - beta1) * grads[i];
    state.v[i] = beta2 * state.v[i] + (1.0 - beta2) * grads[i] * grads[i];
    const double mhat = state.m[i] / bc1;
    const double vhat = state.v[i] / bc2;
    params[i] -= lr * mhat / (std::sqrt(vhat) + eps);
  }
}

std::vector<RegressionExample> build_regression_examples(
    std::span<const dataset::Transaction> txns, const knowledge::KnowledgeBase& kb,
    const TokenizerVocab& vocab, InputVariant variant, std::size_t max_len) {
  std::vector<const dataset::Transaction*> ordered;
  ordered.reserve(txns.size());
  for (const auto& t : txns) ordered.push_back(&t);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const dataset::Transaction* a, const dataset::Transaction* b) {
                     if (a->timestamp != b->timestamp) return a->timestamp < b->timestamp;
                     return a->record_id < b->record_id;
                   });
  std::vector<RegressionExample> out;
  out.reserve(txns.size());
  for (const auto* t : ordered) {
    if (!(t->price > 0.0))
      raise(Errc::NonPositiveValue, "price must be > 0 for training: " + t->record_id);
    const auto parsed = dataset::parse_identifier(t->asset_id, t->asset_class);
    const std::uint64_t count = knowledge::tld_count(kb, parsed.name);
    out.push_back({build_input(parsed, count, variant, vocab, max_len), std::log(t->price)});
  }
  return out;
}

namespace {

struct StageRunner {
  TransformerRegressor& model;
  const FineTuneSchedule& schedule;
  std::vector<TrainLogRow>& log;

  void run(int stage, std::span<const RegressionExample> examples) {
    const std::size_t n = examples.size();
    if (n == 0) return;
    const std::size_t epochs =
        stage == 1 ? schedule.stage1_epochs : schedule.stage2_epochs;
    if (epochs == 0) return;
    const std::size_t batch = std::max<std::size_t>(1, schedule.batch_size);
    const std::size_t steps_per_epoch = (n + batch - 1) / batch;
    const std::size_t total_steps = epochs * steps_per_epoch;

    AdamState adam(model.params().size());
    RandomSource dropout_rng(RandomSource::mix(schedule.seed, 0x5eedULL + stage));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    std::size_t step = 0;
    std::vector<InputSequence> inputs(batch);
    std::vector<double> targets(batch);
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
      RandomSource shuffle_rng(
          RandomSource::mix(schedule.seed, 1000ULL * stage + epoch));
      shuffle_rng.shuffle(order);
      for (std::size_t start = 0; start < n; start += batch) {
        const std::size_t count = std::min(batch, n - start);
        inputs.resize(count);
        targets.resize(count);
        for (std::size_t i = 0; i < count; ++i) {
          inputs[i] = examples[order[start + i]].input;
          targets[i] = examples[order[start + i]].target_log;
        }
        model.zero_grads();
        const double loss =
            model.regression_loss_and_grad(inputs, targets, true, &dropout_rng);
        clip_global_norm(model.grads(), 1.0);
        const double lr = schedule.learning_rate *
                          (1.0 - static_cast<double>(step) / static_cast<double>(total_steps));
        adam_step(model.params(), model.grads(), adam, lr);
        log.push_back({stage, epoch, step, loss});
        ++step;
      }
    }
  }
};

}  // namespace

std::vector<TrainLogRow> train_two_stage(TransformerRegressor& model,
                                         std::span<const RegressionExample> train_chrono,
                                         const FineTuneSchedule& schedule) {
  if (train_chrono.empty()) raise(Errc::EmptyInput, "train_two_stage");
  std::vector<TrainLogRow> log;
  StageRunner runner{model, schedule, log};
  runner.run(1, train_chrono);
  const std::size_t recent = std::min(schedule.recent_t, train_chrono.size());
  if (recent > 0 && schedule.stage2_epochs > 0)
    runner.run(2, train_chrono.subspan(train_chrono.size() - recent, recent));
  return log;
}

double eval_regression_loss(const TransformerRegressor& model,
                            std::span<const RegressionExample> examples) {
  if (examples.empty()) raise(Errc::EmptyInput, "eval_regression_loss");
  std::vector<InputSequence> inputs;
  std::vector<double> targets;
  inputs.reserve(examples.size());
  targets.reserve(examples.size());
  for (const auto& e : examples) {
    inputs.push_back(e.input);
    targets.push_back(e.target_log);
  }
  return model.regression_loss(inputs, targets);
}

namespace {

// 80/10/10 masking; returns targets and mutates the batch copies in place.
std::vector<MlmTarget> apply_mlm_masking(std::vector<InputSequence>& batch, double mask_prob,
                                         const TokenizerVocab& vocab, RandomSource& rng) {
  std::vector<MlmTarget> targets;
  const std::size_t n_chars = vocab.size() - TokenizerVocab::kNumSpecials;
  for (std::size_t b = 0; b < batch.size(); ++b) {
    auto& seq = batch[b];
    for (std::size_t p = 0; p < seq.real_len; ++p) {
      if (seq.ids[p] < TokenizerVocab::kNumSpecials) continue;
      if (rng.next_double() >= mask_prob) continue;
      targets.push_back({b, p, seq.ids[p]});
      const double roll = rng.next_double();
      if (roll < 0.8) {
        seq.ids[p] = TokenizerVocab::kMask;
      } else if (roll < 0.9 && n_chars > 0) {
        seq.ids[p] = static_cast<std::int32_t>(TokenizerVocab::kNumSpecials +
                                               rng.next_index(n_chars));
      }
    }
  }
  return targets;
}

}  // namespace

std::vector<TrainLogRow> pretrain_mlm(TransformerRegressor& model,
                                      std::span<const InputSequence> corpus,
                                      const MlmConfig& config) {
  if (corpus.empty()) raise(Errc::EmptyInput, "pretrain_mlm");
  std::vector<TrainLogRow> log;
  const std::size_t batch = std::max<std::size_t>(1, config.batch_size);
  const std::size_t steps_per_epoch = (corpus.size() + batch - 1) / batch;
  const std::size_t total_steps = std::max<std::size_t>(1, config.epochs * steps_per_epoch);

  AdamState adam(model.params().size());
  RandomSource dropout_rng(RandomSource::mix(config.seed, 0xD70ULL));
  RandomSource mask_rng(RandomSource::mix(config.seed, 0x3a5cULL));
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);

  std::size_t step = 0;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    RandomSource shuffle_rng(RandomSource::mix(config.seed, 7000ULL + epoch));
    shuffle_rng.shuffle(order);
    for (std::size_t start = 0; start < corpus.size(); start += batch) {
      const std::size_t count = std::min(batch, corpus.size() - start);
      std::vector<InputSequence> inputs(count);
      for (std::size_t i = 0; i < count; ++i) inputs[i] = corpus[order[start + i]];
      const auto targets = apply_mlm_masking(inputs, config.mask_prob, model.vocab(), mask_rng);
      double loss = 0.0;
      if (!targets.empty()) {
        model.zero_grads();
        loss = model.mlm_loss_and_grad(inputs, targets, true, &dropout_rng);
        clip_global_norm(model.grads(), 1.0);
        const double lr = config.learning_rate *
                          (1.0 - static_cast<double>(step) / static_cast<double>(total_steps));
        adam_step(model.params(), model.grads(), adam, lr);
      }
      log.push_back({0, epoch, step, loss});
      ++step;
    }
  }
  return log;
}

double eval_mlm_loss(const TransformerRegressor& model, std::span<const InputSequence> corpus,
                     double mask_prob, std::uint64_t seed) {
  if (corpus.empty()) raise(Errc::EmptyInput, "eval_mlm_loss");
  RandomSource mask_rng(RandomSource::mix(seed, 0x3a5cULL));
  constexpr std::size_t kChunk = 64;
  double loss_sum = 0.0;
  std::size_t mask_count = 0;
  for (std::size_t start = 0; start < corpus.size(); start += kChunk) {
    const std::size_t count = std::min(kChunk, corpus.size() - start);
    std::vector<InputSequence> inputs(corpus.begin() + static_cast<std::ptrdiff_t>(start),
                                      corpus.begin() + static_cast<std::ptrdiff_t>(start + count));
    const auto targets = apply_mlm_masking(inputs, mask_prob, model.vocab(), mask_rng);
    if (targets.empty()) continue;
    loss_sum += model.mlm_loss(inputs, targets) * static_cast<double>(targets.size());
    mask_count += targets.size();
  }
  return mask_count == 0 ? 0.0 : loss_sum / static_cast<double>(mask_count);
}

}  // namespace assetval::neural

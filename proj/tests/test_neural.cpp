#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <set>

#include "assetval/common/error.hpp"
#include "assetval/eval/eval.hpp"
#include "assetval/neural/checkpoint.hpp"
#include "assetval/neural/gradcheck.hpp"
#include "assetval/neural/train.hpp"
#include "helpers.hpp"

using namespace assetval;
using namespace assetval::neural;
using assetval::dataset::AssetClass;
using assetval::dataset::ParsedIdentifier;
using assetval::dataset::Transaction;
using testutil::make_txn;

namespace {

std::vector<Transaction> vocab_corpus() {
  // names and suffixes drawn from a small alphabet with every char seen twice
  std::vector<Transaction> txns;
  const std::vector<std::string> ids = {"car.com", "cat.org", "dog.com", "dig.org",
                                        "m-80.com", "n-80.org"};
  for (std::size_t i = 0; i < ids.size(); ++i)
    txns.push_back(make_txn("r" + std::to_string(i), ids[i], 10.0 + i, 1000 + i));
  return txns;
}

TokenizerVocab test_vocab() { return build_vocab(vocab_corpus()); }

ModelConfig small_config(InputVariant variant = InputVariant::Vanilla) {
  ModelConfig c;
  c.d_model = 32;
  c.n_layers = 2;
  c.n_heads = 4;
  c.ff_dim = 64;
  c.max_len = 24;
  c.dropout = 0.1;
  c.variant = variant;
  return c;
}

std::vector<InputSequence> encode_all(const std::vector<std::string>& ids,
                                      const TokenizerVocab& vocab, std::size_t max_len) {
  std::vector<InputSequence> out;
  for (const auto& id : ids) {
    out.push_back(build_input(dataset::parse_identifier(id, AssetClass::DomainName), 0,
                              InputVariant::Vanilla, vocab, max_len));
  }
  return out;
}

}  // namespace

TEST_SUITE("build_vocab") {
  TEST_CASE("frequency cutoff sends rare characters to UNK") {
    std::vector<Transaction> txns = {make_txn("r1", "aa.ss", 1.0, 0),
                                     make_txn("r2", "b.ss", 1.0, 1)};
    const auto vocab = build_vocab(txns);
    CHECK(vocab.encode_char(U'a') >= TokenizerVocab::kNumSpecials);
    CHECK(vocab.encode_char(U's') >= TokenizerVocab::kNumSpecials);
    CHECK(vocab.encode_char(U'b') == TokenizerVocab::kUnk);
  }

  TEST_CASE("specials survive even a min-size corpus") {
    const auto vocab = build_vocab(std::vector<Transaction>{make_txn("r", "q.w", 1.0, 0)});
    CHECK(vocab.size() == TokenizerVocab::kNumSpecials);
  }

  TEST_CASE("identical corpora give identical vocabularies") {
    const auto a = build_vocab(vocab_corpus());
    const auto b = build_vocab(vocab_corpus());
    CHECK(a.chars == b.chars);
  }

  TEST_CASE("json round trip") {
    const auto vocab = test_vocab();
    const auto loaded = TokenizerVocab::from_json(vocab.to_json());
    CHECK(loaded.chars == vocab.chars);
    CHECK(loaded.size() == vocab.size());
  }
}

TEST_SUITE("build_input") {
  TEST_CASE("vanilla layout") {
    const auto vocab = test_vocab();
    const auto seq = build_input({"car", "com", AssetClass::DomainName}, 0,
                                 InputVariant::Vanilla, vocab, 12);
    const std::vector<std::int32_t> expect = {
        TokenizerVocab::kCls,    vocab.encode_char(U'c'), vocab.encode_char(U'a'),
        vocab.encode_char(U'r'), TokenizerVocab::kSep,    vocab.encode_char(U'c'),
        vocab.encode_char(U'o'), vocab.encode_char(U'm'), TokenizerVocab::kSep,
        TokenizerVocab::kPad,    TokenizerVocab::kPad,    TokenizerVocab::kPad};
    CHECK(seq.ids == expect);
    CHECK(seq.real_len == 9);
    CHECK(seq.mask == std::vector<std::uint8_t>{1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0});
  }

  TEST_CASE("augmented layout appends the count digits") {
    const auto vocab = test_vocab();
    const auto seq = build_input({"car", "com", AssetClass::DomainName}, 407,
                                 InputVariant::Augmented, vocab, 16);
    REQUIRE(seq.real_len == 13);
    CHECK(seq.ids[9] == vocab.encode_char(U'4'));
    CHECK(seq.ids[10] == vocab.encode_char(U'0'));
    CHECK(seq.ids[11] == vocab.encode_char(U'7'));
    CHECK(seq.ids[12] == TokenizerVocab::kSep);
  }

  TEST_CASE("long names truncate from the right, suffix survives") {
    const auto vocab = test_vocab();
    const std::string long_name(4357, 'a');
    const auto seq = build_input({long_name, "eth", AssetClass::NftIdentifier}, 0,
                                 InputVariant::Vanilla, vocab, 16);
    CHECK(seq.real_len == 16);
    // 16 slots: CLS + 10 name chars + SEP + e t h + SEP
    CHECK(seq.ids[0] == TokenizerVocab::kCls);
    CHECK(seq.ids[11] == TokenizerVocab::kSep);
    CHECK(seq.ids[12] == vocab.encode_char(U'e'));
    CHECK(seq.ids[15] == TokenizerVocab::kSep);
  }

  TEST_CASE("oversized fixed segments raise") {
    const auto vocab = test_vocab();
    const std::string long_suffix(30, 's');
    CHECK_THROWS_AS(build_input({"x", long_suffix, AssetClass::DomainName}, 0,
                                InputVariant::Vanilla, vocab, 16),
                    Error);
  }

  TEST_CASE("injective on short distinct inputs") {
    const auto vocab = test_vocab();  // knows c,a,r,t,o,m,d,i,g,s,-,8,9 etc.
    const std::vector<std::string> names = {"car", "cat", "dog", "dig", "c", "ca"};
    const std::vector<std::string> suffixes = {"com", "org"};
    std::set<std::vector<std::int32_t>> seen;
    std::size_t total = 0;
    for (const auto& n : names) {
      for (const auto& s : suffixes) {
        for (std::uint64_t count : {0ULL, 8ULL, 80ULL}) {
          const auto seq = build_input({n, s, AssetClass::DomainName}, count,
                                       InputVariant::Augmented, vocab, 24);
          seen.insert(seq.ids);
          ++total;
        }
      }
    }
    CHECK(seen.size() == total);
  }
}

TEST_SUITE("transformer forward") {
  TEST_CASE("batch of one gives one output") {
    TransformerRegressor model(test_vocab(), small_config(), 1);
    const auto seqs = encode_all({"car.com"}, model.vocab(), model.config().max_len);
    CHECK(model.predict_log(seqs).size() == 1);
  }

  TEST_CASE("duplicating a sequence duplicates its output") {
    TransformerRegressor model(test_vocab(), small_config(), 1);
    const auto seqs =
        encode_all({"car.com", "dig.org", "car.com"}, model.vocab(), model.config().max_len);
    const auto out = model.predict_log(seqs);
    REQUIRE(out.size() == 3);
    CHECK(out[0] == out[2]);
    CHECK(out[0] != out[1]);
  }

  TEST_CASE("padding never affects outputs") {
    TransformerRegressor model(test_vocab(), small_config(), 2);
    const auto vocab = model.vocab();
    const auto short_seqs = encode_all({"car.com", "dog.org"}, vocab, model.config().max_len);
    const auto alone = model.predict_log(short_seqs);

    // force the batch to the full max_len with a long all-real sequence
    const std::string filler(model.config().max_len, 'a');
    auto padded = short_seqs;
    padded.push_back(build_input({filler.substr(0, model.config().max_len - 5), "com",
                                  AssetClass::DomainName},
                                 0, InputVariant::Vanilla, vocab, model.config().max_len));
    const auto together = model.predict_log(padded);
    CHECK(std::abs(together[0] - alone[0]) <= 1e-9);
    CHECK(std::abs(together[1] - alone[1]) <= 1e-9);
  }
}

TEST_SUITE("gradient check") {
  TEST_CASE("analytic gradients match finite differences") {
    TransformerRegressor model(test_vocab(), small_config(), 3);
    const auto seqs =
        encode_all({"car.com", "dog.org", "m-8.com", "dig.org"}, model.vocab(), 24);
    const std::vector<double> targets{2.0, 3.0, 1.0, 4.0};
    GradCheckOptions opts;
    opts.sample_size = 150;
    opts.seed = 5;
    const double err = grad_check(model, seqs, targets, opts);
    CHECK(err < 1e-4);
  }

  TEST_CASE("corrupted head gradients are caught") {
    TransformerRegressor model(test_vocab(), small_config(), 3);
    const auto seqs = encode_all({"car.com", "dog.org"}, model.vocab(), 24);
    const std::vector<double> targets{2.0, 3.0};
    GradCheckOptions opts;
    opts.sample_size = 40;
    opts.seed = 5;
    opts.corrupt_head_scale = 2.0;
    opts.restrict_prefix = "head.";
    CHECK(grad_check(model, seqs, targets, opts) > 1e-2);
  }

  TEST_CASE("zero-parameter sample returns zero") {
    TransformerRegressor model(test_vocab(), small_config(), 3);
    const auto seqs = encode_all({"car.com"}, model.vocab(), 24);
    const std::vector<double> targets{2.0};
    GradCheckOptions opts;
    opts.sample_size = 0;
    CHECK(grad_check(model, seqs, targets, opts) == 0.0);
  }
}

namespace {

std::vector<Transaction> training_corpus(std::size_t n, std::uint64_t seed) {
  RandomSource rng(seed);
  const std::vector<std::string> names = {"car", "cat", "dog", "dig", "mark", "rig",
                                          "data", "gram", "raid", "acid"};
  const std::vector<std::string> suffixes = {"com", "org"};
  std::vector<Transaction> txns;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& name = names[rng.next_index(names.size())];
    const auto& suffix = suffixes[rng.next_index(suffixes.size())];
    const double price =
        std::exp(0.4 * static_cast<double>(name.size()) + (suffix == "com" ? 0.8 : 0.0) +
                 0.3 * rng.next_normal());
    txns.push_back(make_txn("r" + std::to_string(i), name + "." + suffix, price,
                            static_cast<std::int64_t>(i) * 1000));
  }
  return txns;
}

}  // namespace

TEST_SUITE("train_two_stage") {
  TEST_CASE("loss equals the eval module's MSLE on exp predictions") {
    TransformerRegressor model(test_vocab(), small_config(), 4);
    const auto txns = training_corpus(16, 1);
    const auto examples = build_regression_examples(txns, knowledge::KnowledgeBase{},
                                                    model.vocab(), InputVariant::Vanilla, 24);
    std::vector<InputSequence> inputs;
    std::vector<double> targets, prices;
    for (const auto& e : examples) {
      inputs.push_back(e.input);
      targets.push_back(e.target_log);
      prices.push_back(std::exp(e.target_log));
    }
    const double loss = model.regression_loss(inputs, targets);
    std::vector<double> pred_prices;
    for (double lp : model.predict_log(inputs)) pred_prices.push_back(std::exp(lp));
    CHECK(loss == doctest::Approx(eval::msle(pred_prices, prices)).epsilon(1e-9));
  }

  TEST_CASE("identical seeds give identical parameters") {
    const auto txns = training_corpus(40, 2);
    FineTuneSchedule schedule;
    schedule.stage1_epochs = 1;
    schedule.stage2_epochs = 1;
    schedule.recent_t = 10;
    schedule.batch_size = 8;
    schedule.learning_rate = 1e-3;
    schedule.seed = 9;

    std::vector<std::vector<double>> runs;
    std::vector<std::vector<TrainLogRow>> logs;
    for (int run = 0; run < 2; ++run) {
      TransformerRegressor model(test_vocab(), small_config(), 7);
      const auto examples = build_regression_examples(txns, knowledge::KnowledgeBase{},
                                                      model.vocab(), InputVariant::Vanilla, 24);
      logs.push_back(train_two_stage(model, examples, schedule));
      runs.push_back(model.params());
    }
    CHECK(runs[0] == runs[1]);
    REQUIRE(logs[0].size() == logs[1].size());
    for (std::size_t i = 0; i < logs[0].size(); ++i)
      CHECK(logs[0][i].loss == logs[1][i].loss);
  }

  TEST_CASE("recent_t of zero skips stage two") {
    const auto txns = training_corpus(24, 3);
    FineTuneSchedule with_t0;
    with_t0.stage1_epochs = 1;
    with_t0.stage2_epochs = 3;
    with_t0.recent_t = 0;
    with_t0.batch_size = 8;
    with_t0.seed = 11;
    FineTuneSchedule no_stage2 = with_t0;
    no_stage2.stage2_epochs = 0;
    no_stage2.recent_t = 3000;

    TransformerRegressor a(test_vocab(), small_config(), 13);
    TransformerRegressor b(test_vocab(), small_config(), 13);
    const auto examples = build_regression_examples(txns, knowledge::KnowledgeBase{}, a.vocab(),
                                                    InputVariant::Vanilla, 24);
    const auto log_a = train_two_stage(a, examples, with_t0);
    const auto log_b = train_two_stage(b, examples, no_stage2);
    CHECK(a.params() == b.params());
    for (const auto& row : log_a) CHECK(row.stage == 1);
  }

  TEST_CASE("training reduces loss on the training set") {
    const auto txns = training_corpus(64, 4);
    TransformerRegressor model(test_vocab(), small_config(), 17);
    const auto examples = build_regression_examples(txns, knowledge::KnowledgeBase{},
                                                    model.vocab(), InputVariant::Vanilla, 24);
    const double before = eval_regression_loss(model, examples);
    FineTuneSchedule schedule;
    schedule.stage1_epochs = 3;
    schedule.stage2_epochs = 0;
    schedule.batch_size = 16;
    schedule.learning_rate = 2e-3;
    schedule.seed = 19;
    train_two_stage(model, examples, schedule);
    const double after = eval_regression_loss(model, examples);
    CHECK(after < before);
  }

  TEST_CASE("empty train raises") {
    TransformerRegressor model(test_vocab(), small_config(), 1);
    CHECK_THROWS_AS(train_two_stage(model, {}, FineTuneSchedule{}), Error);
  }
}

TEST_SUITE("pretrain_mlm") {
  TEST_CASE("one epoch reduces masked-token loss") {
    TransformerRegressor model(test_vocab(), small_config(), 23);
    const auto txns = training_corpus(64, 5);
    std::vector<InputSequence> corpus;
    for (const auto& t : txns) {
      corpus.push_back(build_input(dataset::parse_identifier(t.asset_id, t.asset_class), 0,
                                   InputVariant::Vanilla, model.vocab(), 24));
    }
    const double before = eval_mlm_loss(model, corpus, 0.15, 99);
    MlmConfig config;
    config.epochs = 3;
    config.batch_size = 16;
    config.learning_rate = 2e-3;
    config.seed = 31;
    pretrain_mlm(model, corpus, config);
    const double after = eval_mlm_loss(model, corpus, 0.15, 99);
    CHECK(after < before);
  }

  TEST_CASE("zero mask probability is a no-op") {
    TransformerRegressor model(test_vocab(), small_config(), 29);
    const auto params_before = model.params();
    const auto txns = training_corpus(8, 6);
    std::vector<InputSequence> corpus;
    for (const auto& t : txns) {
      corpus.push_back(build_input(dataset::parse_identifier(t.asset_id, t.asset_class), 0,
                                   InputVariant::Vanilla, model.vocab(), 24));
    }
    MlmConfig config;
    config.mask_prob = 0.0;
    config.epochs = 1;
    config.seed = 37;
    const auto log = pretrain_mlm(model, corpus, config);
    CHECK(model.params() == params_before);
    for (const auto& row : log) CHECK(row.loss == 0.0);
  }

  TEST_CASE("empty corpus raises") {
    TransformerRegressor model(test_vocab(), small_config(), 1);
    CHECK_THROWS_AS(pretrain_mlm(model, {}, MlmConfig{}), Error);
  }
}

TEST_SUITE("checkpoint") {
  TEST_CASE("round trip preserves predictions") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "assetval_ckpt_test";
    fs::create_directories(dir);
    TransformerRegressor model(test_vocab(), small_config(InputVariant::Augmented), 41);
    const auto seqs = encode_all({"car.com", "dog.org"}, model.vocab(), 24);
    const auto before = model.predict_log(seqs);

    save_checkpoint(dir / "model.json", model, "demo", 7);
    auto loaded = load_checkpoint(dir / "model.json");
    CHECK(loaded.model_id == "demo");
    CHECK(loaded.seed == 7);
    CHECK(loaded.model.config().variant == InputVariant::Augmented);
    const auto after = loaded.model.predict_log(seqs);
    REQUIRE(before.size() == after.size());
    for (std::size_t i = 0; i < before.size(); ++i) CHECK(before[i] == after[i]);
    fs::remove_all(dir);
  }
}

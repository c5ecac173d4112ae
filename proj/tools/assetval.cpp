#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "assetval/pipeline/commands.hpp"

using namespace assetval;
using pipeline::PipelineConfig;

namespace {

struct GlobalArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool out_set = false;
};

PipelineConfig resolve_config(const GlobalArgs& args) {
  PipelineConfig config;
  if (!args.config_path.empty()) config = PipelineConfig::load(args.config_path);
  if (args.out_set) config.out_dir = args.out_dir;
  if (args.seed_set) config.seed = args.seed;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"digital-asset valuation pipeline"};
  app.require_subcommand(1);

  GlobalArgs global;
  app.add_option("--config", global.config_path, "JSON config file");
  app.add_option("--out", global.out_dir, "output directory")
      ->each([&](const std::string&) { global.out_set = true; });
  app.add_option("--seed", global.seed, "random seed recorded in manifests")
      ->each([&](const std::string&) { global.seed_set = true; });

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic demo corpus");
  std::size_t synth_n = 2000;
  std::string synth_class;
  synth->add_option("--n", synth_n, "number of transactions");
  synth->add_option("--class", synth_class, "asset class (domain_name|email_address|nft_identifier)");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "filter, de-wash, and normalize raw transactions");
  std::string ingest_txns, ingest_rates, ingest_class;
  ingest->add_option("--transactions", ingest_txns, "raw transactions JSONL");
  ingest->add_option("--rates", ingest_rates, "exchange-rate CSV");
  ingest->add_option("--class", ingest_class, "restrict to one asset class");

  // stats
  auto* stats = app.add_subcommand("stats", "descriptive statistics of a transaction file");
  std::string stats_input;
  stats->add_option("--input", stats_input, "transactions JSONL (default: <out>/clean.jsonl)");

  // split
  auto* split = app.add_subcommand("split", "chronological train/dev/test split");
  std::string split_input;
  double dev_frac = -1.0, test_frac = -1.0;
  split->add_option("--input", split_input, "transactions JSONL (default: <out>/clean.jsonl)");
  split->add_option("--dev-frac", dev_frac, "development fraction (default 0.05)");
  split->add_option("--test-frac", test_frac, "test fraction (default 0.05)");

  // featurize
  auto* featurize = app.add_subcommand("featurize", "encode split segments as feature CSVs");
  std::vector<std::string> drop_features;
  std::string kw_words, kw_adult, kw_trademarks, kw_tlds, kw_lexicon;
  featurize->add_option("--drop-feature", drop_features,
                        "disable a feature family (repeatable)");
  featurize->add_option("--words", kw_words, "word list file");
  featurize->add_option("--adult-words", kw_adult, "adult word list file");
  featurize->add_option("--trademarks", kw_trademarks, "trademark list file");
  featurize->add_option("--tld-counts", kw_tlds, "TLD count CSV");
  featurize->add_option("--lexicon", kw_lexicon, "segmentation lexicon file");

  // train
  auto* train = app.add_subcommand("train", "fit a model on the train segment");
  std::string model_family = "gbt", model_id, variant;
  std::size_t n_trees = 0, n_stages = 0, stage1_epochs = 0, stage2_epochs = 0,
              recent_t = 0, batch_size = 0, mlm_epochs = 0, d_model = 0, n_layers = 0,
              n_heads = 0, ff_dim = 0, max_len = 0;
  double learning_rate = -1.0, dropout = -1.0;
  int max_depth = 0, tree_depth = 0;
  bool mlm_pretrain = false, recency_set = false;
  std::vector<std::string> recency_pair;
  train->add_option("--model", model_family, "mean|gbt|random_forest|adaboost_r2|transformer");
  train->add_option("--model-id", model_id, "identifier used in output file names");
  train->add_option("--n-trees", n_trees, "boosting/forest tree count");
  train->add_option("--learning-rate", learning_rate, "learning rate");
  train->add_option("--max-depth", max_depth, "tree depth limit (gbt/rf; <0 unbounded)");
  train->add_option("--n-stages", n_stages, "boosting stages (adaboost)");
  train->add_option("--tree-depth", tree_depth, "base tree depth (adaboost)");
  train
      ->add_option("--recency-weight", recency_pair,
                   "T factor: upweight the newest T train rows")
      ->expected(2)
      ->each([&](const std::string&) { recency_set = true; });
  train->add_option("--variant", variant, "transformer input variant (vanilla|augmented)");
  train->add_option("--T", recent_t, "newest-T window for stage two");
  train->add_option("--stage1-epochs", stage1_epochs, "stage-one epochs");
  train->add_option("--stage2-epochs", stage2_epochs, "stage-two epochs");
  train->add_option("--batch-size", batch_size, "batch size");
  train->add_flag("--mlm-pretrain", mlm_pretrain, "masked-LM pretrain before fine-tuning");
  train->add_option("--mlm-epochs", mlm_epochs, "masked-LM pretraining epochs");
  train->add_option("--d-model", d_model, "transformer width");
  train->add_option("--n-layers", n_layers, "encoder layers");
  train->add_option("--n-heads", n_heads, "attention heads");
  train->add_option("--ff-dim", ff_dim, "feed-forward width");
  train->add_option("--max-len", max_len, "maximum sequence length");
  train->add_option("--dropout", dropout, "dropout probability");
  train->add_option("--words", kw_words, "word list file");
  train->add_option("--adult-words", kw_adult, "adult word list file");
  train->add_option("--trademarks", kw_trademarks, "trademark list file");
  train->add_option("--tld-counts", kw_tlds, "TLD count CSV");
  train->add_option("--lexicon", kw_lexicon, "segmentation lexicon file");

  // predict
  auto* predict = app.add_subcommand("predict", "predict prices for a split segment");
  pipeline::PredictOptions predict_options;
  std::string predict_model, predict_segment = "test";
  predict->add_option("--model-file", predict_model, "model file")->required();
  predict->add_option("--segment", predict_segment, "train|dev|test");
  predict->add_option("--tld-counts", kw_tlds, "TLD count CSV (augmented transformer)");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "MSLE evaluation of a predictions file");
  std::string eval_predictions, eval_segment = "test", eval_compare, eval_ensemble;
  std::vector<double> clamp_bounds;
  std::size_t resamples = 10000;
  bool log1p = false;
  evaluate->add_option("--predictions", eval_predictions, "predictions JSON")->required();
  evaluate->add_option("--segment", eval_segment, "train|dev|test");
  evaluate->add_option("--clamp", clamp_bounds, "lo hi prediction clamp")->expected(2);
  evaluate->add_option("--compare", eval_compare, "second predictions file for significance");
  evaluate->add_option("--ensemble", eval_ensemble,
                       "second predictions file; evaluate the geometric mean");
  evaluate->add_option("--resamples", resamples, "bootstrap resamples");
  evaluate->add_flag("--log1p", log1p, "use ln(1+p) instead of ln(p)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "grouped error analysis of a predictions file");
  std::string analyze_predictions, analyze_segment = "test";
  analyze->add_option("--predictions", analyze_predictions, "predictions JSON")->required();
  analyze->add_option("--segment", analyze_segment, "train|dev|test");

  // ensemble
  auto* ensemble = app.add_subcommand("ensemble", "geometric-mean ensemble of two predictions");
  std::string ens_a, ens_b, ens_id;
  ensemble->add_option("--a", ens_a, "first predictions file")->required();
  ensemble->add_option("--b", ens_b, "second predictions file")->required();
  ensemble->add_option("--out-id", ens_id, "model id of the combined predictions");

  CLI11_PARSE(app, argc, argv);

  try {
    PipelineConfig config = resolve_config(global);

    auto apply_knowledge_flags = [&]() {
      if (!kw_words.empty()) config.knowledge.words = kw_words;
      if (!kw_adult.empty()) config.knowledge.adult_words = kw_adult;
      if (!kw_trademarks.empty()) config.knowledge.trademarks = kw_trademarks;
      if (!kw_tlds.empty()) config.knowledge.tld_counts = kw_tlds;
      if (!kw_lexicon.empty()) config.knowledge.segment_lexicon = kw_lexicon;
    };

    if (synth->parsed()) {
      if (!synth_class.empty())
        config.asset_class = dataset::asset_class_from_name(synth_class);
      return pipeline::cmd_synth(config, synth_n);
    }
    if (ingest->parsed()) {
      if (!ingest_txns.empty()) config.transactions = ingest_txns;
      if (!ingest_rates.empty()) config.rates = ingest_rates;
      if (!ingest_class.empty())
        config.asset_class = dataset::asset_class_from_name(ingest_class);
      return pipeline::cmd_ingest(config);
    }
    if (stats->parsed()) return pipeline::cmd_stats(config, stats_input);
    if (split->parsed()) {
      if (dev_frac >= 0.0) config.dev_frac = dev_frac;
      if (test_frac >= 0.0) config.test_frac = test_frac;
      return pipeline::cmd_split(config, split_input);
    }
    if (featurize->parsed()) {
      apply_knowledge_flags();
      for (const auto& name : drop_features)
        config.enabled_families.erase(features::family_from_name(name));
      return pipeline::cmd_featurize(config);
    }
    if (train->parsed()) {
      apply_knowledge_flags();
      config.model_family = model_family;
      if (!model_id.empty()) config.model_id = model_id;
      if (n_trees > 0) {
        config.gbt.n_trees = n_trees;
        config.rf.n_trees = n_trees;
      }
      if (learning_rate > 0.0) {
        config.gbt.learning_rate = learning_rate;
        config.schedule.learning_rate = learning_rate;
      }
      if (max_depth != 0) {
        config.gbt.max_depth = max_depth;
        config.rf.max_depth = max_depth;
      }
      if (n_stages > 0) config.ada.n_stages = n_stages;
      if (tree_depth > 0) config.ada.tree_depth = tree_depth;
      if (recency_set) {
        config.recency_t = std::stoull(recency_pair[0]);
        config.recency_factor = std::stod(recency_pair[1]);
      }
      if (!variant.empty()) config.transformer.variant = neural::variant_from_name(variant);
      if (recent_t > 0) config.schedule.recent_t = recent_t;
      if (stage1_epochs > 0) config.schedule.stage1_epochs = stage1_epochs;
      if (train->count("--stage2-epochs") > 0) config.schedule.stage2_epochs = stage2_epochs;
      if (batch_size > 0) config.schedule.batch_size = batch_size;
      if (mlm_pretrain) config.mlm_pretrain = true;
      if (mlm_epochs > 0) config.mlm.epochs = mlm_epochs;
      if (d_model > 0) config.transformer.d_model = d_model;
      if (n_layers > 0) config.transformer.n_layers = n_layers;
      if (n_heads > 0) config.transformer.n_heads = n_heads;
      if (ff_dim > 0) config.transformer.ff_dim = ff_dim;
      if (max_len > 0) config.transformer.max_len = max_len;
      if (dropout >= 0.0) config.transformer.dropout = dropout;
      return pipeline::cmd_train(config);
    }
    if (predict->parsed()) {
      apply_knowledge_flags();
      predict_options.model_file = predict_model;
      predict_options.segment = predict_segment;
      return pipeline::cmd_predict(config, predict_options);
    }
    if (evaluate->parsed()) {
      pipeline::EvaluateOptions options;
      options.predictions = eval_predictions;
      options.segment = eval_segment;
      options.compare_with = eval_compare;
      options.ensemble_with = eval_ensemble;
      options.resamples = resamples;
      options.log1p = log1p;
      if (clamp_bounds.size() == 2) options.clamp = {clamp_bounds[0], clamp_bounds[1]};
      return pipeline::cmd_evaluate(config, options);
    }
    if (analyze->parsed()) {
      pipeline::AnalyzeOptions options;
      options.predictions = analyze_predictions;
      options.segment = analyze_segment;
      return pipeline::cmd_analyze(config, options);
    }
    if (ensemble->parsed()) return pipeline::cmd_ensemble(config, ens_a, ens_b, ens_id);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return pipeline::kExitError;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return pipeline::kExitError;
  }
  return pipeline::kExitError;
}

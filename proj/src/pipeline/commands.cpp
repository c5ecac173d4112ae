#include "assetval/pipeline/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "assetval/common/csv.hpp"
#include "assetval/common/error.hpp"
#include "assetval/common/time.hpp"
#include "assetval/dataset/filter.hpp"
#include "assetval/dataset/io.hpp"
#include "assetval/dataset/rates.hpp"
#include "assetval/dataset/split.hpp"
#include "assetval/dataset/stats.hpp"
#include "assetval/dataset/suspicious.hpp"
#include "assetval/eval/eval.hpp"
#include "assetval/neural/checkpoint.hpp"
#include "assetval/neural/gradcheck.hpp"
#include "assetval/neural/train.hpp"
#include "assetval/pipeline/synth.hpp"
#include "assetval/tabular/serialize.hpp"

namespace assetval::pipeline {

using dataset::AssetClass;
using dataset::Transaction;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void write_json(const std::filesystem::path& path, const ordered_json& j, int indent = 1) {
  std::ofstream out(path);
  if (!out) raise(Errc::IoFailure, "cannot open " + path.string());
  out << j.dump(indent) << '\n';
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::IoFailure, "cannot open " + path.string());
  json j;
  in >> j;
  return j;
}

void write_manifest(const PipelineConfig& config, const std::string& command,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs) {
  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = command;
  j["seed"] = config.seed;
  j["created_at"] = format_iso_instant(now_epoch_seconds());
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  write_json(config.in_out(command + "_manifest.json"), j);
}

int map_error_to_exit(const Error& e, const std::string& command) {
  std::cerr << command << ": " << e.what() << '\n';
  switch (e.code()) {
    case Errc::MissingRate:
      return kExitMissingRate;
    case Errc::MalformedLine:
    case Errc::MissingField:
    case Errc::InvalidValue:
    case Errc::MissingParty:
    case Errc::NoDelimiter:
    case Errc::EmptyName:
    case Errc::EmptySuffix:
    case Errc::NegativeCount:
      return kExitSchemaViolation;
    default:
      return kExitError;
  }
}

std::vector<Transaction> read_segment(const PipelineConfig& config, const std::string& segment) {
  if (segment != "train" && segment != "dev" && segment != "test")
    raise(Errc::InvalidValue, "unknown segment: " + segment);
  return dataset::read_jsonl(config.in_out(segment + ".jsonl"));
}

}  // namespace

void PredictionsFile::save(const std::filesystem::path& path) const {
  ordered_json j;
  j["schema_version"] = 1;
  j["model_id"] = model_id;
  j["segment"] = segment;
  j["record_ids"] = record_ids;
  j["prices"] = prices;
  write_json(path, j);
}

PredictionsFile PredictionsFile::load(const std::filesystem::path& path) {
  const json j = read_json(path);
  PredictionsFile file;
  file.model_id = j.value("model_id", "");
  file.segment = j.value("segment", "");
  file.record_ids = j.at("record_ids").get<std::vector<std::string>>();
  file.prices = j.at("prices").get<std::vector<double>>();
  if (file.record_ids.size() != file.prices.size())
    raise(Errc::ShapeMismatch, path.string() + ": record_ids and prices differ in length");
  return file;
}

FeaturizedData read_featurized_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::IoFailure, "cannot open " + path.string());
  FeaturizedData data;
  std::string line;
  if (!std::getline(in, line)) raise(Errc::EmptyInput, path.string());
  auto header = split_csv_line(line);
  if (header.size() < 2 || header.front() != "record_id" || header.back() != "log_price")
    raise(Errc::MalformedLine, path.string() + ": bad header");
  data.feature_names.assign(header.begin() + 1, header.end() - 1);
  const std::size_t n_features = data.feature_names.size();
  std::vector<double> row(n_features);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      raise(Errc::MalformedLine, path.string() + ":" + std::to_string(lineno));
    data.record_ids.push_back(fields[0]);
    for (std::size_t i = 0; i < n_features; ++i) row[i] = std::stod(fields[1 + i]);
    data.X.push_row(row);
    data.y_log.push_back(std::stod(fields.back()));
  }
  if (data.X.rows == 0) {
    data.X.cols = n_features;
  }
  return data;
}

int cmd_ingest(const PipelineConfig& config) {
  try {
    auto txns = dataset::read_jsonl(config.transactions);
    std::set<std::string> ids;
    for (const auto& t : txns) {
      if (!ids.insert(t.record_id).second)
        raise(Errc::InvalidValue, "duplicate record_id " + t.record_id);
      dataset::parse_identifier(t.asset_id, t.asset_class);
    }

    std::map<std::string, std::size_t> rejections;
    const std::size_t input_count = txns.size();
    if (config.asset_class.has_value()) {
      std::vector<Transaction> in_class;
      for (auto& t : txns) {
        if (t.asset_class == *config.asset_class) in_class.push_back(std::move(t));
        else rejections["other_asset_class"] += 1;
      }
      txns = std::move(in_class);
    }

    auto filtered = dataset::filter_transactions(std::move(txns));
    for (const auto& [_, reason] : filtered.rejected)
      rejections[std::string(dataset::reject_reason_name(reason))] += 1;

    // Class-appropriate suspicious-transaction passes over the kept records.
    std::vector<Transaction> nft, email;
    for (const auto& t : filtered.kept) {
      if (t.asset_class == AssetClass::NftIdentifier) nft.push_back(t);
      else if (t.asset_class == AssetClass::EmailAddress) email.push_back(t);
    }
    std::set<std::string> suspicious;
    if (!nft.empty()) {
      const auto flagged = dataset::detect_suspicious_nft(nft);
      suspicious.insert(flagged.begin(), flagged.end());
      rejections["suspicious_nft"] += flagged.size();
    }
    if (!email.empty()) {
      const auto flagged = dataset::detect_suspicious_email(email);
      suspicious.insert(flagged.begin(), flagged.end());
      rejections["suspicious_email"] += flagged.size();
    }

    dataset::ExchangeRateTable rates;
    if (!config.rates.empty()) rates = dataset::ExchangeRateTable::load_csv(config.rates);

    std::vector<Transaction> clean;
    clean.reserve(filtered.kept.size());
    for (const auto& t : filtered.kept) {
      if (suspicious.contains(t.record_id)) continue;
      clean.push_back(dataset::normalize_currency(t, rates));
    }

    std::filesystem::create_directories(config.out_dir);
    const auto clean_path = config.in_out("clean.jsonl");
    dataset::write_jsonl(clean_path, clean);

    ordered_json report;
    report["schema_version"] = 1;
    report["input_count"] = input_count;
    report["kept_count"] = clean.size();
    report["rejections"] = rejections;
    write_json(config.in_out("ingest_report.json"), report);
    write_manifest(config, "ingest", {config.transactions.string()},
                   {clean_path.string(), config.in_out("ingest_report.json").string()});
    return kExitOk;
  } catch (const Error& e) {
    return map_error_to_exit(e, "ingest");
  } catch (const std::exception& e) {
    std::cerr << "ingest: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_stats(const PipelineConfig& config, std::filesystem::path input) {
  try {
    if (input.empty()) input = config.in_out("clean.jsonl");
    const auto txns = dataset::read_jsonl(input);
    const auto stats = dataset::compute_statistics(txns);
    std::filesystem::create_directories(config.out_dir);
    write_json(config.in_out("stats.json"), dataset::stats_to_json(stats));
    write_manifest(config, "stats", {input.string()}, {config.in_out("stats.json").string()});
    return kExitOk;
  } catch (const Error& e) {
    return map_error_to_exit(e, "stats");
  } catch (const std::exception& e) {
    std::cerr << "stats: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_split(const PipelineConfig& config, std::filesystem::path input) {
  try {
    if (input.empty()) input = config.in_out("clean.jsonl");
    const auto txns = dataset::read_jsonl(input);

    // Every class present is split independently by count.
    std::map<AssetClass, std::vector<Transaction>> by_class;
    for (const auto& t : txns) by_class[t.asset_class].push_back(t);

    std::vector<Transaction> train, dev, test;
    ordered_json boundaries = ordered_json::array();
    for (auto& [cls, list] : by_class) {
      auto split = dataset::chronological_split(std::move(list), config.dev_frac,
                                                config.test_frac);
      ordered_json b;
      b["asset_class"] = dataset::asset_class_name(cls);
      b["dev_begin"] = format_iso_instant(split.dev_begin);
      b["test_begin"] = format_iso_instant(split.test_begin);
      b["counts"] = {{"train", split.train.size()},
                     {"dev", split.dev.size()},
                     {"test", split.test.size()}};
      boundaries.push_back(std::move(b));
      std::move(split.train.begin(), split.train.end(), std::back_inserter(train));
      std::move(split.dev.begin(), split.dev.end(), std::back_inserter(dev));
      std::move(split.test.begin(), split.test.end(), std::back_inserter(test));
    }

    std::filesystem::create_directories(config.out_dir);
    dataset::write_jsonl(config.in_out("train.jsonl"), train);
    dataset::write_jsonl(config.in_out("dev.jsonl"), dev);
    dataset::write_jsonl(config.in_out("test.jsonl"), test);

    ordered_json manifest;
    manifest["schema_version"] = 1;
    manifest["seed"] = config.seed;
    manifest["created_at"] = format_iso_instant(now_epoch_seconds());
    manifest["dev_frac"] = config.dev_frac;
    manifest["test_frac"] = config.test_frac;
    manifest["counts"] = {{"train", train.size()}, {"dev", dev.size()}, {"test", test.size()}};
    manifest["boundaries"] = std::move(boundaries);
    write_json(config.in_out("split_manifest.json"), manifest);
    return kExitOk;
  } catch (const Error& e) {
    return map_error_to_exit(e, "split");
  } catch (const std::exception& e) {
    std::cerr << "split: " << e.what() << '\n';
    return kExitError;
  }
}

namespace {

void write_featurized_csv(const std::filesystem::path& path,
                          const std::vector<Transaction>& txns,
                          const knowledge::KnowledgeBase& kb,
                          const features::FeatureSchema& schema) {
  std::ofstream out(path);
  if (!out) raise(Errc::IoFailure, "cannot open " + path.string());
  std::vector<std::string> header{"record_id"};
  for (const auto& name : schema.feature_names()) header.push_back(name);
  header.push_back("log_price");
  out << join_csv(header) << '\n';
  char buf[64];
  for (const auto& t : txns) {
    if (!(t.price > 0.0))
      raise(Errc::NonPositiveValue, "price must be > 0 to featurize: " + t.record_id);
    const auto parsed = dataset::parse_identifier(t.asset_id, t.asset_class);
    const auto vec = features::extract(parsed, kb, schema);
    std::vector<std::string> fields{t.record_id};
    for (double v : vec) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      fields.emplace_back(buf);
    }
    std::snprintf(buf, sizeof(buf), "%.17g", std::log(t.price));
    fields.emplace_back(buf);
    out << join_csv(fields) << '\n';
  }
}

}  // namespace

int cmd_featurize(const PipelineConfig& config) {
  try {
    const auto train = read_segment(config, "train");
    if (train.empty()) raise(Errc::EmptyInput, "train split is empty");
    const auto loaded = knowledge::load_knowledge(config.knowledge);
    for (const auto& warning : loaded.warnings) std::cerr << "featurize: " << warning << '\n';
    const auto schema = features::build_schema(train, config.enabled_families);

    write_json(config.in_out("schema.json"), schema.to_json());
    std::vector<std::string> outputs{config.in_out("schema.json").string()};
    for (const std::string segment : {"train", "dev", "test"}) {
      const auto txns = segment == "train" ? train : read_segment(config, segment);
      const auto path = config.in_out("features_" + segment + ".csv");
      write_featurized_csv(path, txns, loaded.kb, schema);
      outputs.push_back(path.string());
    }
    write_manifest(config, "featurize",
                   {config.in_out("train.jsonl").string(), config.in_out("dev.jsonl").string(),
                    config.in_out("test.jsonl").string()},
                   outputs);
    return kExitOk;
  } catch (const Error& e) {
    return map_error_to_exit(e, "featurize");
  } catch (const std::exception& e) {
    std::cerr << "featurize: " << e.what() << '\n';
    return kExitError;
  }
}

namespace {

int train_tabular(const PipelineConfig& config, const std::string& family,
                  const std::string& model_id) {
  tabular::ModelFile file;
  file.model_id = model_id;
  file.seed = config.seed;

  if (family == "mean") {
    const auto train = read_segment(config, "train");
    if (train.empty()) return kExitEmptyTrain;
    std::vector<double> prices;
    prices.reserve(train.size());
    for (const auto& t : train) prices.push_back(t.price);
    file.model = tabular::fit_mean_baseline(prices);
  } else {
    const auto data = read_featurized_csv(config.in_out("features_train.csv"));
    if (data.X.rows == 0) return kExitEmptyTrain;
    file.schema = features::FeatureSchema::from_json(read_json(config.in_out("schema.json")));
    const auto weights =
        tabular::recency_weights(data.X.rows, config.recency_t, config.recency_factor);
    if (family == "gbt") {
      auto cfg = config.gbt;
      cfg.seed = config.seed;
      file.model = tabular::fit_gbt(data.X, data.y_log, weights, cfg);
    } else if (family == "random_forest") {
      auto cfg = config.rf;
      cfg.seed = config.seed;
      file.model = tabular::fit_random_forest(data.X, data.y_log, weights, cfg);
    } else if (family == "adaboost_r2") {
      auto cfg = config.ada;
      cfg.seed = config.seed;
      file.model = tabular::fit_adaboost_r2(data.X, data.y_log, weights, cfg);
    } else {
      raise(Errc::InvalidValue, "unknown model family: " + family);
    }
  }

  const auto path = config.in_out("model_" + model_id + ".json");
  file.save(path);
  write_manifest(config, "train", {config.in_out("features_train.csv").string()},
                 {path.string()});
  return kExitOk;
}

int train_transformer(const PipelineConfig& config, const std::string& model_id) {
  const auto train = read_segment(config, "train");
  if (train.empty()) return kExitEmptyTrain;
  const auto loaded = knowledge::load_knowledge(config.knowledge);

  const auto vocab = neural::build_vocab(train);
  neural::TransformerRegressor model(vocab, config.transformer, config.seed);
  const auto examples = neural::build_regression_examples(
      train, loaded.kb, vocab, config.transformer.variant, config.transformer.max_len);

  std::vector<neural::TrainLogRow> log;
  if (config.mlm_pretrain) {
    std::vector<neural::InputSequence> corpus;
    corpus.reserve(examples.size());
    for (const auto& e : examples) corpus.push_back(e.input);
    auto mlm = config.mlm;
    mlm.seed = config.seed;
    mlm.learning_rate = config.schedule.learning_rate;
    mlm.batch_size = config.schedule.batch_size;
    const auto mlm_log = neural::pretrain_mlm(model, corpus, mlm);
    log.insert(log.end(), mlm_log.begin(), mlm_log.end());
  }

  auto schedule = config.schedule;
  schedule.seed = config.seed;
  const auto fit_log = neural::train_two_stage(model, examples, schedule);
  log.insert(log.end(), fit_log.begin(), fit_log.end());

  const auto path = config.in_out("model_" + model_id + ".json");
  neural::save_checkpoint(path, model, model_id, config.seed);
  neural::write_train_log(config.in_out("train_log_" + model_id + ".csv"), log);
  write_manifest(config, "train", {config.in_out("train.jsonl").string()},
                 {path.string(), config.in_out("train_log_" + model_id + ".csv").string()});
  return kExitOk;
}

}  // namespace

int cmd_train(const PipelineConfig& config) {
  try {
    const std::string family = config.model_family;
    const std::string model_id = config.model_id.empty() ? family : config.model_id;
    std::filesystem::create_directories(config.out_dir);
    if (family == "transformer") return train_transformer(config, model_id);
    return train_tabular(config, family, model_id);
  } catch (const Error& e) {
    if (e.code() == Errc::EmptyInput) {
      std::cerr << "train: " << e.what() << '\n';
      return kExitEmptyTrain;
    }
    return map_error_to_exit(e, "train");
  } catch (const std::exception& e) {
    std::cerr << "train: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_predict(const PipelineConfig& config, const PredictOptions& options) {
  try {
    const json header = read_json(options.model_file);
    const std::string type = header.value("model_type", "");
    const std::string model_id = header.value("model_id", "model");

    PredictionsFile out;
    out.segment = options.segment;
    out.model_id = model_id;

    if (type == "transformer") {
      const auto loaded_model = neural::load_checkpoint(options.model_file);
      const auto txns = read_segment(config, options.segment);
      const auto kb = knowledge::load_knowledge(config.knowledge).kb;
      std::vector<neural::InputSequence> inputs;
      inputs.reserve(txns.size());
      for (const auto& t : txns) {
        const auto parsed = dataset::parse_identifier(t.asset_id, t.asset_class);
        inputs.push_back(neural::build_input(parsed, knowledge::tld_count(kb, parsed.name),
                                             loaded_model.model.config().variant,
                                             loaded_model.model.vocab(),
                                             loaded_model.model.config().max_len));
        out.record_ids.push_back(t.record_id);
      }
      for (double lp : loaded_model.model.predict_log(inputs))
        out.prices.push_back(std::exp(lp));
    } else {
      const auto file = tabular::ModelFile::load(options.model_file);
      const auto data =
          read_featurized_csv(config.in_out("features_" + options.segment + ".csv"));
      if (file.schema.has_value() && data.feature_names != file.schema->feature_names())
        raise(Errc::SchemaMismatch, "featurized columns differ from the model's schema");
      out.record_ids = data.record_ids;
      out.prices = file.predict_prices(data.X);
    }

    const auto path =
        config.in_out("predictions_" + model_id + "_" + options.segment + ".json");
    out.save(path);
    write_manifest(config, "predict", {options.model_file.string()}, {path.string()});
    return kExitOk;
  } catch (const Error& e) {
    return map_error_to_exit(e, "predict");
  } catch (const std::exception& e) {
    std::cerr << "predict: " << e.what() << '\n';
    return kExitError;
  }
}

namespace {

// Targets aligned to the prediction file's record order; misalignment is the
// caller's exit-5 condition.
std::vector<double> aligned_targets(const std::vector<Transaction>& txns,
                                    const PredictionsFile& preds) {
  if (txns.size() != preds.record_ids.size())
    raise(Errc::ShapeMismatch, "predictions and segment sizes differ");
  std::vector<double> targets(txns.size());
  for (std::size_t i = 0; i < txns.size(); ++i) {
    if (txns[i].record_id != preds.record_ids[i])
      raise(Errc::ShapeMismatch, "record order mismatch at index " + std::to_string(i));
    targets[i] = txns[i].price;
  }
  return targets;
}

}  // namespace

int cmd_evaluate(const PipelineConfig& config, const EvaluateOptions& options) {
  try {
    auto preds = PredictionsFile::load(options.predictions);
    const auto txns = read_segment(config, options.segment);
    const auto targets = aligned_targets(txns, preds);

    std::string model_id = preds.model_id;
    if (!options.ensemble_with.empty()) {
      const auto other = PredictionsFile::load(options.ensemble_with);
      if (other.record_ids != preds.record_ids)
        raise(Errc::ShapeMismatch, "ensemble inputs are not aligned");
      preds.prices = eval::ensemble_geometric(preds.prices, other.prices);
      model_id = preds.model_id + "+" + other.model_id;
    }
    if (options.clamp.has_value())
      preds.prices =
          eval::clamp_predictions(preds.prices, options.clamp->first, options.clamp->second);

    ordered_json j;
    j["schema_version"] = 1;
    j["model_id"] = model_id;
    j["segment"] = options.segment;
    j["n"] = targets.size();
    j["msle"] = eval::msle(preds.prices, targets, options.log1p);
    if (options.log1p) j["log1p"] = true;
    if (options.clamp.has_value()) j["clamp"] = {options.clamp->first, options.clamp->second};

    if (!options.compare_with.empty()) {
      const auto other = PredictionsFile::load(options.compare_with);
      const auto other_targets = aligned_targets(txns, other);
      auto other_prices = other.prices;
      if (options.clamp.has_value())
        other_prices = eval::clamp_predictions(other_prices, options.clamp->first,
                                               options.clamp->second);
      const auto errs_a = eval::squared_log_errors(preds.prices, targets, options.log1p);
      const auto errs_b = eval::squared_log_errors(other_prices, other_targets, options.log1p);
      ordered_json cmp;
      cmp["model_id"] = other.model_id;
      cmp["msle"] = eval::msle(other_prices, other_targets, options.log1p);
      cmp["p_value"] = eval::paired_significance(errs_a, errs_b, options.resamples, config.seed);
      cmp["resamples"] = options.resamples;
      j["comparison"] = std::move(cmp);
    }

    const auto path = config.in_out("eval_" + model_id + "_" + options.segment + ".json");
    write_json(path, j);
    write_manifest(config, "evaluate", {options.predictions.string()}, {path.string()});
    return kExitOk;
  } catch (const Error& e) {
    if (e.code() == Errc::ShapeMismatch) {
      std::cerr << "evaluate: " << e.what() << '\n';
      return kExitMisaligned;
    }
    return map_error_to_exit(e, "evaluate");
  } catch (const std::exception& e) {
    std::cerr << "evaluate: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_analyze(const PipelineConfig& config, const AnalyzeOptions& options) {
  try {
    const auto preds = PredictionsFile::load(options.predictions);
    const auto txns = read_segment(config, options.segment);
    aligned_targets(txns, preds);
    const auto train = read_segment(config, "train");
    const auto top = eval::top_suffixes(train, 10);

    const auto report = eval::grouped_eval(
        preds.prices, txns,
        {eval::Grouping::NameLength, eval::Grouping::Suffix, eval::Grouping::CharSet}, top,
        preds.model_id, options.segment);

    const auto base = "analysis_" + preds.model_id + "_" + options.segment;
    write_json(config.in_out(base + ".json"), report.to_json());
    {
      std::ofstream out(config.in_out(base + ".csv"));
      out << report.to_csv();
    }
    write_manifest(config, "analyze", {options.predictions.string()},
                   {config.in_out(base + ".json").string(), config.in_out(base + ".csv").string()});
    return kExitOk;
  } catch (const Error& e) {
    if (e.code() == Errc::ShapeMismatch) {
      std::cerr << "analyze: " << e.what() << '\n';
      return kExitMisaligned;
    }
    return map_error_to_exit(e, "analyze");
  } catch (const std::exception& e) {
    std::cerr << "analyze: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_ensemble(const PipelineConfig& config, const std::filesystem::path& a,
                 const std::filesystem::path& b, const std::string& out_id) {
  try {
    const auto pa = PredictionsFile::load(a);
    const auto pb = PredictionsFile::load(b);
    if (pa.record_ids != pb.record_ids || pa.segment != pb.segment)
      raise(Errc::ShapeMismatch, "ensemble inputs are not aligned");
    PredictionsFile out;
    out.model_id = out_id.empty() ? pa.model_id + "+" + pb.model_id : out_id;
    out.segment = pa.segment;
    out.record_ids = pa.record_ids;
    out.prices = eval::ensemble_geometric(pa.prices, pb.prices);
    const auto path =
        config.in_out("predictions_" + out.model_id + "_" + out.segment + ".json");
    out.save(path);
    write_manifest(config, "ensemble", {a.string(), b.string()}, {path.string()});
    return kExitOk;
  } catch (const Error& e) {
    if (e.code() == Errc::ShapeMismatch) {
      std::cerr << "ensemble: " << e.what() << '\n';
      return kExitMisaligned;
    }
    return map_error_to_exit(e, "ensemble");
  } catch (const std::exception& e) {
    std::cerr << "ensemble: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_synth(const PipelineConfig& config, std::size_t n) {
  try {
    SynthOptions options;
    options.n = n;
    options.seed = config.seed;
    options.out_dir = config.out_dir;
    if (config.asset_class.has_value()) options.asset_class = *config.asset_class;
    const auto outputs = generate_synthetic_corpus(options);
    write_manifest(config, "synth", {},
                   {outputs.transactions.string(), outputs.rates.string(),
                    outputs.words.string(), outputs.tld_counts.string()});
    return kExitOk;
  } catch (const Error& e) {
    return map_error_to_exit(e, "synth");
  } catch (const std::exception& e) {
    std::cerr << "synth: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace assetval::pipeline

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "assetval/common/matrix.hpp"
#include "assetval/pipeline/config.hpp"

namespace assetval::pipeline {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitSchemaViolation = 2;
inline constexpr int kExitMissingRate = 3;
inline constexpr int kExitEmptyTrain = 4;
inline constexpr int kExitMisaligned = 5;

// filter -> class-appropriate suspicious detection -> currency normalization;
// writes clean.jsonl plus a rejection report keyed by reason.
int cmd_ingest(const PipelineConfig& config);

int cmd_stats(const PipelineConfig& config, std::filesystem::path input = {});

// Splits each asset class independently by count and concatenates segments.
int cmd_split(const PipelineConfig& config, std::filesystem::path input = {});

// Builds the schema from the train segment only and writes one CSV per
// segment: record_id,<feature names...>,log_price.
int cmd_featurize(const PipelineConfig& config);

int cmd_train(const PipelineConfig& config);

struct PredictOptions {
  std::filesystem::path model_file;
  std::string segment = "test";  // train | dev | test
};

int cmd_predict(const PipelineConfig& config, const PredictOptions& options);

struct EvaluateOptions {
  std::filesystem::path predictions;
  std::filesystem::path ensemble_with;  // evaluate the geometric mean of the two
  std::filesystem::path compare_with;   // paired bootstrap significance
  std::string segment = "test";
  std::optional<std::pair<double, double>> clamp;
  std::size_t resamples = 10000;
  bool log1p = false;
};

int cmd_evaluate(const PipelineConfig& config, const EvaluateOptions& options);

struct AnalyzeOptions {
  std::filesystem::path predictions;
  std::string segment = "test";
};

int cmd_analyze(const PipelineConfig& config, const AnalyzeOptions& options);

int cmd_ensemble(const PipelineConfig& config, const std::filesystem::path& a,
                 const std::filesystem::path& b, const std::string& out_id);

int cmd_synth(const PipelineConfig& config, std::size_t n);

// Aligned per-record price predictions for one split segment.
struct PredictionsFile {
  std::string model_id;
  std::string segment;
  std::vector<std::string> record_ids;
  std::vector<double> prices;

  void save(const std::filesystem::path& path) const;
  static PredictionsFile load(const std::filesystem::path& path);
};

struct FeaturizedData {
  std::vector<std::string> record_ids;
  std::vector<std::string> feature_names;
  Matrix X;
  std::vector<double> y_log;
};

FeaturizedData read_featurized_csv(const std::filesystem::path& path);

}  // namespace assetval::pipeline

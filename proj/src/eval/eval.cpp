#include "assetval/eval/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "assetval/common/csv.hpp"
#include "assetval/common/error.hpp"
#include "assetval/common/rng.hpp"
#include "assetval/common/text.hpp"
#include "assetval/features/features.hpp"

namespace assetval::eval {

std::vector<double> squared_log_errors(std::span<const double> pred,
                                       std::span<const double> truth, bool log1p) {
  if (pred.size() != truth.size() || pred.empty())
    raise(Errc::ShapeMismatch, "predictions and targets must align and be non-empty");
  std::vector<double> out(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (!(pred[i] > 0.0) || !(truth[i] > 0.0))
      raise(Errc::NonPositiveValue, "prices must be > 0");
    const double lp = log1p ? std::log1p(pred[i]) : std::log(pred[i]);
    const double lt = log1p ? std::log1p(truth[i]) : std::log(truth[i]);
    out[i] = (lp - lt) * (lp - lt);
  }
  return out;
}

double msle(std::span<const double> pred, std::span<const double> truth, bool log1p) {
  const auto errors = squared_log_errors(pred, truth, log1p);
  double acc = 0.0;
  for (double e : errors) acc += e;
  return acc / static_cast<double>(errors.size());
}

std::string_view grouping_name(Grouping g) {
  switch (g) {
    case Grouping::NameLength: return "name_length";
    case Grouping::Suffix: return "suffix";
    case Grouping::CharSet: return "char_set";
  }
  return "";
}

nlohmann::ordered_json EvaluationReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["model_id"] = model_id;
  j["split_id"] = split_id;
  j["n"] = n;
  j["overall_msle"] = overall_msle;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& g : groups) {
    nlohmann::ordered_json row;
    row["grouping"] = g.grouping;
    row["bucket"] = g.bucket;
    row["count"] = g.count;
    row["share"] = g.share;
    row["msle"] = g.msle;
    rows.push_back(std::move(row));
  }
  j["groups"] = std::move(rows);
  return j;
}

std::string EvaluationReport::to_csv() const {
  std::string out = "grouping,bucket,count,share,msle\n";
  char buf[64];
  for (const auto& g : groups) {
    out += csv_escape(g.grouping) + ',' + csv_escape(g.bucket) + ',';
    out += std::to_string(g.count) + ',';
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", g.share, g.msle);
    out += buf;
  }
  return out;
}

namespace {

std::string length_bucket(std::size_t len) {
  return len > 10 ? std::string("11+") : std::to_string(len);
}

std::string charset_bucket(const features::CharFlags& flags) {
  if (flags.alpha_only) return "letters";
  if (flags.all_numeric) return "numbers";
  return "other";
}

}  // namespace

EvaluationReport grouped_eval(std::span<const double> pred,
                              std::span<const dataset::Transaction> txns,
                              const std::vector<Grouping>& groupings,
                              std::span<const std::string> top_train_suffixes,
                              std::string model_id, std::string split_id) {
  if (pred.size() != txns.size() || pred.empty())
    raise(Errc::ShapeMismatch, "predictions and transactions must align and be non-empty");
  std::vector<double> truth(txns.size());
  for (std::size_t i = 0; i < txns.size(); ++i) truth[i] = txns[i].price;
  const auto errors = squared_log_errors(pred, truth);

  EvaluationReport report;
  report.model_id = std::move(model_id);
  report.split_id = std::move(split_id);
  report.n = txns.size();
  double acc = 0.0;
  for (double e : errors) acc += e;
  report.overall_msle = acc / static_cast<double>(errors.size());

  for (Grouping g : groupings) {
    // bucket -> (count, error sum); ordered map keeps output deterministic.
    std::map<std::string, std::pair<std::size_t, double>> buckets;
    for (std::size_t i = 0; i < txns.size(); ++i) {
      const auto parsed = dataset::parse_identifier(txns[i].asset_id, txns[i].asset_class);
      std::string label;
      switch (g) {
        case Grouping::NameLength:
          label = length_bucket(codepoint_count(parsed.name));
          break;
        case Grouping::Suffix: {
          label = "other";
          for (const auto& s : top_train_suffixes) {
            if (s == parsed.suffix) {
              label = parsed.suffix;
              break;
            }
          }
          break;
        }
        case Grouping::CharSet:
          label = charset_bucket(features::char_flags(parsed.name));
          break;
      }
      auto& cell = buckets[label];
      cell.first += 1;
      cell.second += errors[i];
    }
    for (const auto& [label, cell] : buckets) {
      GroupRow row;
      row.grouping = std::string(grouping_name(g));
      row.bucket = label;
      row.count = cell.first;
      row.share = static_cast<double>(cell.first) / static_cast<double>(txns.size());
      row.msle = cell.second / static_cast<double>(cell.first);
      report.groups.push_back(std::move(row));
    }
  }
  return report;
}

std::vector<std::string> top_suffixes(std::span<const dataset::Transaction> train,
                                      std::size_t k) {
  std::map<std::string, std::size_t> counts;
  for (const auto& t : train)
    counts[dataset::parse_identifier(t.asset_id, t.asset_class).suffix] += 1;
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i) out.push_back(ranked[i].first);
  return out;
}

std::vector<double> ensemble_geometric(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty())
    raise(Errc::ShapeMismatch, "ensemble inputs must align and be non-empty");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0) || !(b[i] > 0.0)) raise(Errc::NonPositiveValue, "prices must be > 0");
    out[i] = std::exp(0.5 * (std::log(a[i]) + std::log(b[i])));
  }
  return out;
}

std::vector<double> clamp_predictions(std::span<const double> predictions, double lo, double hi) {
  if (!(lo > 0.0) || !(lo <= hi)) raise(Errc::InvalidBounds, "need 0 < lo <= hi");
  std::vector<double> out(predictions.begin(), predictions.end());
  for (double& p : out) p = std::clamp(p, lo, hi);
  return out;
}

double paired_significance(std::span<const double> sq_a, std::span<const double> sq_b,
                           std::size_t resamples, std::uint64_t seed) {
  if (sq_a.size() != sq_b.size() || sq_a.size() < 2)
    raise(Errc::ShapeMismatch, "paired significance needs two aligned arrays of length >= 2");
  const std::size_t n = sq_a.size();
  std::vector<double> diff(n);
  double observed = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    diff[i] = sq_a[i] - sq_b[i];
    observed += diff[i];
  }
  observed /= static_cast<double>(n);

  // Bootstrap the centered differences; two-sided p-value with add-one
  // smoothing so identical inputs give exactly 1.
  RandomSource rng(seed);
  std::size_t hits = 0;
  for (std::size_t r = 0; r < resamples; ++r) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += diff[rng.next_index(n)] - observed;
    const double centered_mean = acc / static_cast<double>(n);
    if (std::abs(centered_mean) >= std::abs(observed)) ++hits;
  }
  return static_cast<double>(hits + 1) / static_cast<double>(resamples + 1);
}

}  // namespace assetval::eval

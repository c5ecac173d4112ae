#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "assetval/dataset/stats.hpp"
#include "assetval/dataset/transaction.hpp"

namespace assetval::dataset {

nlohmann::ordered_json transaction_to_json(const Transaction& t);
Transaction transaction_from_json(const nlohmann::json& j);

// Throws InvalidValue on out-of-range prices or timestamps, MissingField on
// absent required keys. Prices may be zero at ingest; negatives never pass.
void validate_transaction(const Transaction& t);

std::vector<Transaction> read_jsonl(const std::filesystem::path& path, bool validate = true);
void write_jsonl(const std::filesystem::path& path, std::span<const Transaction> txns);

nlohmann::ordered_json stats_to_json(const DatasetStats& stats);

}  // namespace assetval::dataset

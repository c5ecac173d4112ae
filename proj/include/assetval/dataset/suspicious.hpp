#pragma once

#include <set>
#include <span>
#include <string>

#include "assetval/dataset/transaction.hpp"

namespace assetval::dataset {

// Flags transaction t of asset x from a to b when, among the other
// transactions of x in the input, a appears in at least two and b appears in
// at least two (not necessarily the same two). Flags are computed against the
// original set in one pass; removal does not iterate.
std::set<std::string> detect_suspicious_nft(std::span<const Transaction> txns);

// Flags t when another transaction of the same asset happens after t within
// seven days (inclusive at exactly seven).
std::set<std::string> detect_suspicious_email(std::span<const Transaction> txns);

}  // namespace assetval::dataset

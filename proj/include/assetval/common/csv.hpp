#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace assetval {

// Minimal RFC-4180 style CSV: fields containing comma, quote, or newline are
// quoted; quotes are doubled.
std::vector<std::string> split_csv_line(std::string_view line);

std::string csv_escape(std::string_view field);

std::string join_csv(const std::vector<std::string>& fields);

}  // namespace assetval

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <json.hpp>

#include "assetval/dataset/transaction.hpp"

namespace assetval::neural {

// Character vocabulary with fixed special ids. Characters are Unicode scalar
// values from the lowercased training names and suffixes; characters seen
// fewer than twice encode as [UNK].
struct TokenizerVocab {
  static constexpr std::int32_t kPad = 0;
  static constexpr std::int32_t kCls = 1;
  static constexpr std::int32_t kSep = 2;
  static constexpr std::int32_t kUnk = 3;
  static constexpr std::int32_t kMask = 4;
  static constexpr std::int32_t kNumSpecials = 5;

  std::vector<char32_t> chars;  // sorted by codepoint; id = kNumSpecials + index
  std::map<char32_t, std::int32_t> char_to_id;

  std::size_t size() const { return kNumSpecials + chars.size(); }
  std::int32_t encode_char(char32_t c) const;

  nlohmann::ordered_json to_json() const;
  static TokenizerVocab from_json(const nlohmann::json& j);
  static TokenizerVocab from_chars(std::vector<char32_t> chars);
};

TokenizerVocab build_vocab(std::span<const dataset::Transaction> train);

}  // namespace assetval::neural

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "assetval/dataset/transaction.hpp"
#include "assetval/neural/vocab.hpp"

namespace assetval::neural {

enum class InputVariant { Vanilla, Augmented };

std::string_view variant_name(InputVariant v);
InputVariant variant_from_name(std::string_view s);

// [CLS] name [SEP] suffix [SEP] (Vanilla) or with a trailing base-10 TLD
// count segment and [SEP] (Augmented), padded with [PAD] to max_len.
struct InputSequence {
  std::vector<std::int32_t> ids;
  std::vector<std::uint8_t> mask;  // 1 on real tokens
  std::size_t real_len = 0;
};

// Over-long names are truncated from the right; the suffix and count segments
// never are. SequenceTooLong fires only when those fixed segments alone
// exceed max_len.
InputSequence build_input(const dataset::ParsedIdentifier& parsed, std::uint64_t tld_count,
                          InputVariant variant, const TokenizerVocab& vocab,
                          std::size_t max_len = 64);

}  // namespace assetval::neural

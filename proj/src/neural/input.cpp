#include "assetval/neural/input.hpp"

#include <algorithm>

#include "assetval/common/error.hpp"
#include "assetval/common/text.hpp"

namespace assetval::neural {

std::string_view variant_name(InputVariant v) {
  return v == InputVariant::Vanilla ? "vanilla" : "augmented";
}

InputVariant variant_from_name(std::string_view s) {
  if (s == "vanilla") return InputVariant::Vanilla;
  if (s == "augmented") return InputVariant::Augmented;
  raise(Errc::InvalidValue, "unknown input variant: " + std::string(s));
}

InputSequence build_input(const dataset::ParsedIdentifier& parsed, std::uint64_t tld_count,
                          InputVariant variant, const TokenizerVocab& vocab,
                          std::size_t max_len) {
  const std::vector<char32_t> name_chars = decode_utf8(ascii_lower(parsed.name));
  const std::vector<char32_t> suffix_chars = decode_utf8(ascii_lower(parsed.suffix));
  std::string count_digits;
  if (variant == InputVariant::Augmented) count_digits = std::to_string(tld_count);

  // [CLS] + [SEP] after name + suffix + [SEP] (+ digits + [SEP])
  std::size_t fixed = 2 + suffix_chars.size() + 1;
  if (variant == InputVariant::Augmented) fixed += count_digits.size() + 1;
  if (fixed > max_len)
    raise(Errc::SequenceTooLong, "suffix and count segments alone exceed max_len");

  const std::size_t name_room = std::min(name_chars.size(), max_len - fixed);

  InputSequence seq;
  seq.ids.reserve(max_len);
  seq.ids.push_back(TokenizerVocab::kCls);
  for (std::size_t i = 0; i < name_room; ++i) seq.ids.push_back(vocab.encode_char(name_chars[i]));
  seq.ids.push_back(TokenizerVocab::kSep);
  for (char32_t c : suffix_chars) seq.ids.push_back(vocab.encode_char(c));
  seq.ids.push_back(TokenizerVocab::kSep);
  if (variant == InputVariant::Augmented) {
    for (char c : count_digits) seq.ids.push_back(vocab.encode_char(static_cast<char32_t>(c)));
    seq.ids.push_back(TokenizerVocab::kSep);
  }
  seq.real_len = seq.ids.size();
  seq.mask.assign(seq.real_len, 1);
  seq.ids.resize(max_len, TokenizerVocab::kPad);
  seq.mask.resize(max_len, 0);
  return seq;
}

}  // namespace assetval::neural

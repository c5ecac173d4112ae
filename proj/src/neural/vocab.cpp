#include "assetval/neural/vocab.hpp"

#include <algorithm>

#include "assetval/common/error.hpp"
#include "assetval/common/text.hpp"

namespace assetval::neural {

std::int32_t TokenizerVocab::encode_char(char32_t c) const {
  auto it = char_to_id.find(c);
  return it == char_to_id.end() ? kUnk : it->second;
}

nlohmann::ordered_json TokenizerVocab::to_json() const {
  nlohmann::ordered_json j;
  j["specials"] = {"[PAD]", "[CLS]", "[SEP]", "[UNK]", "[MASK]"};
  std::vector<std::uint32_t> codepoints;
  codepoints.reserve(chars.size());
  for (char32_t c : chars) codepoints.push_back(static_cast<std::uint32_t>(c));
  j["chars"] = codepoints;
  return j;
}

TokenizerVocab TokenizerVocab::from_json(const nlohmann::json& j) {
  std::vector<char32_t> chars;
  for (const auto& c : j.at("chars")) chars.push_back(static_cast<char32_t>(c.get<std::uint32_t>()));
  return from_chars(std::move(chars));
}

TokenizerVocab TokenizerVocab::from_chars(std::vector<char32_t> chars) {
  TokenizerVocab vocab;
  vocab.chars = std::move(chars);
  std::sort(vocab.chars.begin(), vocab.chars.end());
  vocab.chars.erase(std::unique(vocab.chars.begin(), vocab.chars.end()), vocab.chars.end());
  for (std::size_t i = 0; i < vocab.chars.size(); ++i)
    vocab.char_to_id[vocab.chars[i]] = static_cast<std::int32_t>(kNumSpecials + i);
  return vocab;
}

TokenizerVocab build_vocab(std::span<const dataset::Transaction> train) {
  if (train.empty()) raise(Errc::EmptyInput, "build_vocab");
  std::map<char32_t, std::size_t> freq;
  for (const auto& t : train) {
    const auto parsed = dataset::parse_identifier(t.asset_id, t.asset_class);
    for (char32_t c : decode_utf8(parsed.name)) freq[c] += 1;
    for (char32_t c : decode_utf8(parsed.suffix)) freq[c] += 1;
  }
  std::vector<char32_t> kept;
  for (const auto& [c, n] : freq) {
    if (n >= 2) kept.push_back(c);
  }
  return TokenizerVocab::from_chars(std::move(kept));
}

}  // namespace assetval::neural

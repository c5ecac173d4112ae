#include "assetval/features/features.hpp"

#include <algorithm>

#include "assetval/common/error.hpp"
#include "assetval/common/text.hpp"

namespace assetval::features {

namespace {
constexpr const char* kOtherSlot = "OTHER";
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Length: return "length";
    case Family::Suffix: return "suffix";
    case Family::Character: return "character";
    case Family::TokenCount: return "token_count";
    case Family::Vocabulary: return "vocabulary";
    case Family::Trademark: return "trademark";
    case Family::TldCount: return "tld_count";
  }
  return "";
}

Family family_from_name(std::string_view s) {
  for (Family f : kAllFamilies) {
    if (family_name(f) == s) return f;
  }
  raise(Errc::InvalidValue, "unknown feature family: " + std::string(s));
}

FamilySet all_families() { return FamilySet(kAllFamilies.begin(), kAllFamilies.end()); }

std::size_t FeatureSchema::family_width(Family f) const {
  switch (f) {
    case Family::Length: return 1;
    case Family::Suffix: return suffix_vocab.size() + 1;
    case Family::Character: return 4;
    case Family::TokenCount: return 1;
    case Family::Vocabulary: return 2;
    case Family::Trademark: return 1;
    case Family::TldCount: return 1;
  }
  return 0;
}

std::vector<std::string> FeatureSchema::feature_names() const {
  std::vector<std::string> names;
  for (Family f : kAllFamilies) {
    if (!enabled.contains(f)) continue;
    switch (f) {
      case Family::Length:
        names.emplace_back("length");
        break;
      case Family::Suffix:
        for (const auto& s : suffix_vocab) names.push_back("suffix=" + s);
        names.push_back(std::string("suffix=") + kOtherSlot);
        break;
      case Family::Character:
        names.emplace_back("alpha_only");
        names.emplace_back("has_hyphen");
        names.emplace_back("all_numeric");
        names.emplace_back("has_non_ascii");
        break;
      case Family::TokenCount:
        names.emplace_back("token_count");
        break;
      case Family::Vocabulary:
        names.emplace_back("is_word");
        names.emplace_back("is_adult_word");
        break;
      case Family::Trademark:
        names.emplace_back("is_trademark");
        break;
      case Family::TldCount:
        names.emplace_back("tld_count");
        break;
    }
  }
  return names;
}

nlohmann::ordered_json FeatureSchema::to_json() const {
  nlohmann::ordered_json j;
  j["suffix_vocab"] = suffix_vocab;
  std::vector<std::string> fams;
  for (Family f : kAllFamilies) {
    if (enabled.contains(f)) fams.emplace_back(family_name(f));
  }
  j["enabled_families"] = fams;
  j["total_dim"] = total_dim;
  return j;
}

FeatureSchema FeatureSchema::from_json(const nlohmann::json& j) {
  FeatureSchema schema;
  schema.suffix_vocab = j.at("suffix_vocab").get<std::vector<std::string>>();
  for (const auto& name : j.at("enabled_families"))
    schema.enabled.insert(family_from_name(name.get<std::string>()));
  schema.total_dim = j.at("total_dim").get<std::size_t>();
  std::size_t expect = 0;
  for (Family f : schema.enabled) expect += schema.family_width(f);
  if (expect != schema.total_dim) raise(Errc::SchemaMismatch, "total_dim inconsistent");
  return schema;
}

FeatureSchema build_schema(std::span<const dataset::Transaction> train, const FamilySet& toggles) {
  if (train.empty()) raise(Errc::EmptyInput, "build_schema");
  FeatureSchema schema;
  schema.enabled = toggles;
  std::set<std::string> suffixes;
  for (const auto& t : train) {
    suffixes.insert(dataset::parse_identifier(t.asset_id, t.asset_class).suffix);
  }
  schema.suffix_vocab.assign(suffixes.begin(), suffixes.end());
  for (Family f : schema.enabled) schema.total_dim += schema.family_width(f);
  return schema;
}

CharFlags char_flags(std::string_view name) {
  const std::string lowered = ascii_lower(name);
  CharFlags flags;
  bool alpha = true, numeric = true;
  for (unsigned char c : lowered) {
    if (c > 0x7f) flags.has_non_ascii = true;
    if (c == '-') flags.has_hyphen = true;
    if (!(c >= 'a' && c <= 'z')) alpha = false;
    if (!(c >= '0' && c <= '9')) numeric = false;
  }
  flags.alpha_only = alpha && !lowered.empty();
  flags.all_numeric = numeric && !lowered.empty();
  return flags;
}

std::size_t token_count(std::string_view name, const knowledge::KnowledgeBase& kb) {
  const std::string lowered = ascii_lower(name);
  // Byte offsets of codepoint boundaries; UTF-8 keeps byte-prefix matching
  // equivalent to codepoint-prefix matching at these offsets.
  std::vector<std::size_t> bounds;
  for (std::size_t i = 0; i < lowered.size(); ++i) {
    if ((static_cast<unsigned char>(lowered[i]) & 0xC0) != 0x80) bounds.push_back(i);
  }
  bounds.push_back(lowered.size());

  std::size_t max_entry = 0;
  for (const auto& entry : kb.segment_lexicon) max_entry = std::max(max_entry, entry.size());

  std::size_t tokens = 0;
  std::size_t b = 0;  // index into bounds
  const std::size_t positions = bounds.size() - 1;
  while (b < positions) {
    std::size_t matched_until = b;  // bounds index one past the match
    std::size_t e = positions;
    while (e > b) {
      if (bounds[e] - bounds[b] <= max_entry) {
        const std::string_view candidate(lowered.data() + bounds[b], bounds[e] - bounds[b]);
        if (kb.segment_lexicon.contains(std::string(candidate))) {
          matched_until = e;
          break;
        }
      }
      --e;
    }
    b = matched_until > b ? matched_until : b + 1;
    ++tokens;
  }
  return tokens;
}

FeatureVector extract(const dataset::ParsedIdentifier& parsed, const knowledge::KnowledgeBase& kb,
                      const FeatureSchema& schema) {
  std::size_t expect = 0;
  for (Family f : schema.enabled) expect += schema.family_width(f);
  if (expect != schema.total_dim) raise(Errc::SchemaMismatch, "schema dims inconsistent");

  const std::string name = ascii_lower(parsed.name);
  const std::string suffix = ascii_lower(parsed.suffix);

  FeatureVector v;
  v.reserve(schema.total_dim);
  for (Family f : kAllFamilies) {
    if (!schema.enabled.contains(f)) continue;
    switch (f) {
      case Family::Length:
        v.push_back(static_cast<double>(codepoint_count(name)));
        break;
      case Family::Suffix: {
        const auto it =
            std::lower_bound(schema.suffix_vocab.begin(), schema.suffix_vocab.end(), suffix);
        std::size_t hot = schema.suffix_vocab.size();  // OTHER
        if (it != schema.suffix_vocab.end() && *it == suffix)
          hot = static_cast<std::size_t>(it - schema.suffix_vocab.begin());
        for (std::size_t i = 0; i <= schema.suffix_vocab.size(); ++i)
          v.push_back(i == hot ? 1.0 : 0.0);
        break;
      }
      case Family::Character: {
        const CharFlags flags = char_flags(name);
        v.push_back(flags.alpha_only ? 1.0 : 0.0);
        v.push_back(flags.has_hyphen ? 1.0 : 0.0);
        v.push_back(flags.all_numeric ? 1.0 : 0.0);
        v.push_back(flags.has_non_ascii ? 1.0 : 0.0);
        break;
      }
      case Family::TokenCount:
        v.push_back(static_cast<double>(token_count(name, kb)));
        break;
      case Family::Vocabulary:
        v.push_back(kb.words.contains(name) ? 1.0 : 0.0);
        v.push_back(kb.adult_words.contains(name) ? 1.0 : 0.0);
        break;
      case Family::Trademark:
        v.push_back(kb.trademarks.contains(name) ? 1.0 : 0.0);
        break;
      case Family::TldCount:
        v.push_back(static_cast<double>(knowledge::tld_count(kb, name)));
        break;
    }
  }
  return v;
}

}  // namespace assetval::features

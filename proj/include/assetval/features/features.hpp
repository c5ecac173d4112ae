#pragma once

#include <array>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "assetval/dataset/transaction.hpp"
#include "assetval/knowledge/knowledge.hpp"

namespace assetval::features {

// Families appear in vectors in this fixed order.
enum class Family { Length, Suffix, Character, TokenCount, Vocabulary, Trademark, TldCount };

inline constexpr std::array<Family, 7> kAllFamilies = {
    Family::Length,   Family::Suffix,     Family::Character, Family::TokenCount,
    Family::Vocabulary, Family::Trademark, Family::TldCount};

std::string_view family_name(Family f);
Family family_from_name(std::string_view s);

using FamilySet = std::set<Family>;

FamilySet all_families();

// Train-derived feature space. The suffix vocabulary lists the distinct
// training suffixes sorted lexicographically; unseen suffixes fall into a
// reserved OTHER slot appended after them.
struct FeatureSchema {
  std::vector<std::string> suffix_vocab;
  FamilySet enabled;
  std::size_t total_dim = 0;

  std::size_t family_width(Family f) const;
  std::vector<std::string> feature_names() const;

  nlohmann::ordered_json to_json() const;
  static FeatureSchema from_json(const nlohmann::json& j);
};

FeatureSchema build_schema(std::span<const dataset::Transaction> train, const FamilySet& toggles);

struct CharFlags {
  bool alpha_only = false;
  bool has_hyphen = false;
  bool all_numeric = false;
  bool has_non_ascii = false;
};

// Computed on the lowercased name; alpha means ASCII a-z, numeric 0-9.
CharFlags char_flags(std::string_view name);

// Greedy longest-prefix segmentation against the lexicon, scanning left to
// right; characters that start no lexicon entry consume one token each.
std::size_t token_count(std::string_view name, const knowledge::KnowledgeBase& kb);

using FeatureVector = std::vector<double>;

FeatureVector extract(const dataset::ParsedIdentifier& parsed, const knowledge::KnowledgeBase& kb,
                      const FeatureSchema& schema);

}  // namespace assetval::features

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace assetval::knowledge {

// External lookup resources for feature extraction and the augmented neural
// input. Immutable after load; all keys lowercase.
struct KnowledgeBase {
  std::set<std::string> words;
  std::set<std::string> adult_words;
  std::set<std::string> trademarks;
  std::map<std::string, std::uint64_t> tld_counts;
  std::set<std::string> segment_lexicon;  // defaults to `words`
};

struct KnowledgePaths {
  std::optional<std::filesystem::path> words;
  std::optional<std::filesystem::path> adult_words;
  std::optional<std::filesystem::path> trademarks;
  std::optional<std::filesystem::path> tld_counts;
  std::optional<std::filesystem::path> segment_lexicon;
};

struct LoadedKnowledge {
  KnowledgeBase kb;
  std::vector<std::string> warnings;  // one entry per missing optional file
};

// Word lists are UTF-8, one token per line; the TLD table is CSV `name,count`.
// Entries are lowercased and de-duplicated. A configured path that does not
// exist yields an empty set plus a warning.
LoadedKnowledge load_knowledge(const KnowledgePaths& paths);

// Lookup on the lowercased name; absent names count as 0.
std::uint64_t tld_count(const KnowledgeBase& kb, std::string_view name);

}  // namespace assetval::knowledge

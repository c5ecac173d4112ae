#include "assetval/knowledge/knowledge.hpp"

#include <fstream>

#include "assetval/common/csv.hpp"
#include "assetval/common/error.hpp"
#include "assetval/common/text.hpp"

namespace assetval::knowledge {

namespace {

bool has_interior_space(std::string_view s) {
  for (char c : s) {
    if (c == ' ' || c == '\t') return true;
  }
  return false;
}

std::set<std::string> load_word_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::IoFailure, "cannot open " + path.string());
  std::set<std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string entry = trim(line);
    if (entry.empty()) continue;
    if (has_interior_space(entry))
      raise(Errc::MalformedLine, path.string() + ":" + std::to_string(lineno));
    out.insert(ascii_lower(entry));
  }
  return out;
}

std::map<std::string, std::uint64_t> load_tld_counts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::IoFailure, "cannot open " + path.string());
  std::map<std::string, std::uint64_t> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    auto fields = split_csv_line(stripped);
    if (lineno == 1 && fields.size() == 2 && fields[0] == "name" && fields[1] == "count")
      continue;
    if (fields.size() != 2 || fields[0].empty())
      raise(Errc::MalformedLine, path.string() + ":" + std::to_string(lineno));
    long long count = 0;
    try {
      std::size_t used = 0;
      count = std::stoll(fields[1], &used);
      if (used != fields[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      raise(Errc::MalformedLine, path.string() + ":" + std::to_string(lineno));
    }
    if (count < 0)
      raise(Errc::NegativeCount, path.string() + ":" + std::to_string(lineno));
    out[ascii_lower(fields[0])] = static_cast<std::uint64_t>(count);
  }
  return out;
}

}  // namespace

LoadedKnowledge load_knowledge(const KnowledgePaths& paths) {
  LoadedKnowledge loaded;
  auto missing = [&](const char* what, const std::filesystem::path& p) {
    loaded.warnings.push_back(std::string(what) + " file missing: " + p.string());
  };
  if (paths.words) {
    if (std::filesystem::exists(*paths.words)) loaded.kb.words = load_word_list(*paths.words);
    else missing("words", *paths.words);
  }
  if (paths.adult_words) {
    if (std::filesystem::exists(*paths.adult_words))
      loaded.kb.adult_words = load_word_list(*paths.adult_words);
    else missing("adult_words", *paths.adult_words);
  }
  if (paths.trademarks) {
    if (std::filesystem::exists(*paths.trademarks))
      loaded.kb.trademarks = load_word_list(*paths.trademarks);
    else missing("trademarks", *paths.trademarks);
  }
  if (paths.tld_counts) {
    if (std::filesystem::exists(*paths.tld_counts))
      loaded.kb.tld_counts = load_tld_counts(*paths.tld_counts);
    else missing("tld_counts", *paths.tld_counts);
  }
  if (paths.segment_lexicon) {
    if (std::filesystem::exists(*paths.segment_lexicon))
      loaded.kb.segment_lexicon = load_word_list(*paths.segment_lexicon);
    else missing("segment_lexicon", *paths.segment_lexicon);
  } else {
    loaded.kb.segment_lexicon = loaded.kb.words;
  }
  return loaded;
}

std::uint64_t tld_count(const KnowledgeBase& kb, std::string_view name) {
  auto it = kb.tld_counts.find(ascii_lower(name));
  return it == kb.tld_counts.end() ? 0 : it->second;
}

}  // namespace assetval::knowledge

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "assetval/common/error.hpp"
#include "assetval/knowledge/knowledge.hpp"

using namespace assetval;
using namespace assetval::knowledge;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("assetval_kb_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }

  fs::path write(const std::string& name, const std::string& content) const {
    const fs::path p = path / name;
    std::ofstream out(p);
    out << content;
    return p;
  }
};

}  // namespace

TEST_SUITE("load_knowledge") {
  TEST_CASE("lowercases and de-duplicates word lists") {
    TempDir dir;
    KnowledgePaths paths;
    paths.words = dir.write("words.txt", "Apple\napple\nBanana\n");
    const auto loaded = load_knowledge(paths);
    CHECK(loaded.kb.words == std::set<std::string>{"apple", "banana"});
    CHECK(loaded.warnings.empty());
  }

  TEST_CASE("tld csv parses counts") {
    TempDir dir;
    KnowledgePaths paths;
    paths.tld_counts = dir.write("tlds.csv", "google,400\nCar,7\n");
    const auto loaded = load_knowledge(paths);
    CHECK(loaded.kb.tld_counts.at("google") == 400);
    CHECK(loaded.kb.tld_counts.at("car") == 7);
  }

  TEST_CASE("tld csv accepts an optional header") {
    TempDir dir;
    KnowledgePaths paths;
    paths.tld_counts = dir.write("tlds.csv", "name,count\ngoogle,400\n");
    CHECK(load_knowledge(paths).kb.tld_counts.at("google") == 400);
  }

  TEST_CASE("absent optional file yields an empty set plus a warning") {
    TempDir dir;
    KnowledgePaths paths;
    paths.trademarks = dir.path / "missing.txt";
    const auto loaded = load_knowledge(paths);
    CHECK(loaded.kb.trademarks.empty());
    REQUIRE(loaded.warnings.size() == 1);
    CHECK(loaded.warnings[0].find("missing.txt") != std::string::npos);
  }

  TEST_CASE("malformed and negative rows raise with a line number") {
    TempDir dir;
    KnowledgePaths paths;
    paths.tld_counts = dir.write("bad.csv", "google,400\noops\n");
    try {
      load_knowledge(paths);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::MalformedLine);
      CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }

    paths.tld_counts = dir.write("neg.csv", "google,-5\n");
    try {
      load_knowledge(paths);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NegativeCount);
    }

    KnowledgePaths word_paths;
    word_paths.words = dir.write("badwords.txt", "ok\ntwo words\n");
    CHECK_THROWS_AS(load_knowledge(word_paths), Error);
  }

  TEST_CASE("segment lexicon defaults to the word list") {
    TempDir dir;
    KnowledgePaths paths;
    paths.words = dir.write("words.txt", "car\ninsurance\n");
    const auto loaded = load_knowledge(paths);
    CHECK(loaded.kb.segment_lexicon == loaded.kb.words);

    paths.segment_lexicon = dir.write("lexicon.txt", "boat\n");
    const auto with_lexicon = load_knowledge(paths);
    CHECK(with_lexicon.kb.segment_lexicon == std::set<std::string>{"boat"});
  }

  TEST_CASE("loading twice yields equal structures") {
    TempDir dir;
    KnowledgePaths paths;
    paths.words = dir.write("words.txt", "alpha\nbeta\n");
    paths.tld_counts = dir.write("tlds.csv", "alpha,3\n");
    const auto a = load_knowledge(paths);
    const auto b = load_knowledge(paths);
    CHECK(a.kb.words == b.kb.words);
    CHECK(a.kb.tld_counts == b.kb.tld_counts);
    CHECK(a.kb.segment_lexicon == b.kb.segment_lexicon);
  }
}

TEST_SUITE("tld_count") {
  TEST_CASE("lookup with case folding and zero default") {
    KnowledgeBase kb;
    kb.tld_counts["google"] = 123;
    CHECK(tld_count(kb, "google") == 123);
    CHECK(tld_count(kb, "GOOGLE") == 123);
    CHECK(tld_count(kb, "unknown") == 0);
    CHECK(tld_count(kb, "") == 0);
  }
}

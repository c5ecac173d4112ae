#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "assetval/common/error.hpp"
#include "assetval/common/rng.hpp"
#include "assetval/features/features.hpp"
#include "helpers.hpp"

using namespace assetval;
using namespace assetval::features;
using assetval::dataset::AssetClass;
using assetval::dataset::ParsedIdentifier;
using assetval::dataset::Transaction;
using testutil::make_txn;

namespace {

knowledge::KnowledgeBase kb_with(std::set<std::string> words,
                                 std::map<std::string, std::uint64_t> tlds = {}) {
  knowledge::KnowledgeBase kb;
  kb.words = words;
  kb.segment_lexicon = std::move(words);
  kb.tld_counts = std::move(tlds);
  return kb;
}

}  // namespace

TEST_SUITE("char_flags") {
  TEST_CASE("fixtures") {
    auto f = char_flags("abc");
    CHECK((f.alpha_only && !f.has_hyphen && !f.all_numeric && !f.has_non_ascii));
    f = char_flags("my-site1");
    CHECK((!f.alpha_only && f.has_hyphen && !f.all_numeric && !f.has_non_ascii));
    f = char_flags("888");
    CHECK((!f.alpha_only && !f.has_hyphen && f.all_numeric && !f.has_non_ascii));
    f = char_flags("caf\xc3\xa9");
    CHECK((!f.alpha_only && !f.has_hyphen && !f.all_numeric && f.has_non_ascii));
  }

  TEST_CASE("uppercase folds before testing") {
    CHECK(char_flags("ABC").alpha_only);
  }
}

TEST_SUITE("token_count") {
  TEST_CASE("greedy longest match") {
    const auto kb = kb_with({"car", "insurance", "in"});
    CHECK(token_count("carinsurance", kb) == 2);
  }

  TEST_CASE("empty lexicon falls back to per-character tokens") {
    const auto kb = kb_with({});
    CHECK(token_count("xyz", kb) == 3);
  }

  TEST_CASE("whole-name match is one token") {
    const auto kb = kb_with({"car"});
    CHECK(token_count("car", kb) == 1);
  }

  TEST_CASE("greedy prefers the longer prefix") {
    // "insure" wins over "in" at position 0, leaving "d" as a fallback token
    const auto kb = kb_with({"in", "insure"});
    CHECK(token_count("insured", kb) == 2);
  }

  TEST_CASE("bounds: between one and the name length") {
    RandomSource rng(21);
    const auto kb = kb_with({"a", "ab", "abc", "zz"});
    const std::string alphabet = "abcz9";
    for (int i = 0; i < 200; ++i) {
      std::string name;
      const std::size_t len = 1 + rng.next_index(10);
      for (std::size_t k = 0; k < len; ++k) name += alphabet[rng.next_index(alphabet.size())];
      const auto tokens = token_count(name, kb);
      CHECK(tokens >= 1);
      CHECK(tokens <= len);
    }
  }

  TEST_CASE("multibyte characters count as single fallback tokens") {
    const auto kb = kb_with({"ab"});
    CHECK(token_count("ab\xc3\xa9", kb) == 2);  // "ab" + e-acute
  }
}

namespace {

std::vector<Transaction> schema_train() {
  return {make_txn("a", "alpha.com", 10.0, 0), make_txn("b", "beta.net", 20.0, 1),
          make_txn("c", "gamma.com", 30.0, 2)};
}

}  // namespace

TEST_SUITE("build_schema") {
  TEST_CASE("suffix vocabulary is the sorted distinct train suffixes") {
    const auto schema = build_schema(schema_train(), all_families());
    CHECK(schema.suffix_vocab == std::vector<std::string>{"com", "net"});
    // 1 + (2+1) + 4 + 1 + 2 + 1 + 1
    CHECK(schema.total_dim == 13);
  }

  TEST_CASE("disabled families shrink the vector") {
    FamilySet toggles = all_families();
    toggles.erase(Family::Suffix);
    const auto schema = build_schema(schema_train(), toggles);
    CHECK(schema.total_dim == 10);
    const auto names = schema.feature_names();
    for (const auto& n : names) CHECK(n.rfind("suffix=", 0) != 0);
  }

  TEST_CASE("empty train raises") {
    CHECK_THROWS_AS(build_schema({}, all_families()), Error);
  }

  TEST_CASE("json round trip") {
    const auto schema = build_schema(schema_train(), all_families());
    const auto loaded = FeatureSchema::from_json(schema.to_json());
    CHECK(loaded.suffix_vocab == schema.suffix_vocab);
    CHECK(loaded.enabled == schema.enabled);
    CHECK(loaded.total_dim == schema.total_dim);
  }
}

TEST_SUITE("extract") {
  TEST_CASE("assembles the families in order") {
    const auto schema = build_schema(schema_train(), all_families());
    const auto kb = kb_with({"car"}, {{"car", 407}});
    const ParsedIdentifier parsed{"car", "com", AssetClass::DomainName};
    const auto v = extract(parsed, kb, schema);
    REQUIRE(v.size() == 13);
    CHECK(v[0] == 3.0);                        // length
    CHECK(v[1] == 1.0);                        // suffix=com
    CHECK(v[2] == 0.0);                        // suffix=net
    CHECK(v[3] == 0.0);                        // suffix=OTHER
    CHECK(v[4] == 1.0);                        // alpha_only
    CHECK(v[5] == 0.0);                        // has_hyphen
    CHECK(v[6] == 0.0);                        // all_numeric
    CHECK(v[7] == 0.0);                        // has_non_ascii
    CHECK(v[8] == 1.0);                        // token_count
    CHECK(v[9] == 1.0);                        // is_word
    CHECK(v[10] == 0.0);                       // is_adult_word
    CHECK(v[11] == 0.0);                       // is_trademark
    CHECK(v[12] == 407.0);                     // tld_count
    CHECK(schema.feature_names().size() == v.size());
  }

  TEST_CASE("unseen suffixes land on the OTHER slot") {
    const auto schema = build_schema(schema_train(), all_families());
    const auto kb = kb_with({});
    const auto v = extract({"car", "xyz", AssetClass::DomainName}, kb, schema);
    CHECK(v[1] == 0.0);
    CHECK(v[2] == 0.0);
    CHECK(v[3] == 1.0);
  }

  TEST_CASE("unicode names count scalar values") {
    const auto schema = build_schema(schema_train(), all_families());
    const auto kb = kb_with({});
    // two CJK codepoints
    const auto v = extract({"\xe4\xbe\x8b\xe5\xad\x90", "com", AssetClass::DomainName}, kb, schema);
    CHECK(v[0] == 2.0);
    CHECK(v[7] == 1.0);  // has_non_ascii
  }

  TEST_CASE("suffix block always has exactly one hot slot") {
    const auto schema = build_schema(schema_train(), all_families());
    const auto kb = kb_with({});
    RandomSource rng(13);
    const std::string alphabet = "abcxyz";
    for (int i = 0; i < 100; ++i) {
      std::string suffix;
      const std::size_t len = 1 + rng.next_index(4);
      for (std::size_t k = 0; k < len; ++k) suffix += alphabet[rng.next_index(alphabet.size())];
      const auto v = extract({"name", suffix, AssetClass::DomainName}, kb, schema);
      const double hot = v[1] + v[2] + v[3];
      CHECK(hot == 1.0);
    }
  }

  TEST_CASE("disabling a family slices its block out of the full vector") {
    const auto kb = kb_with({"car"}, {{"car", 12}});
    const auto full_schema = build_schema(schema_train(), all_families());
    const ParsedIdentifier parsed{"car-9", "net", AssetClass::DomainName};
    const auto full = extract(parsed, kb, full_schema);

    for (Family drop : kAllFamilies) {
      FamilySet toggles = all_families();
      toggles.erase(drop);
      const auto schema = build_schema(schema_train(), toggles);
      const auto sliced = extract(parsed, kb, schema);

      // expected: full vector minus the dropped family's block
      std::vector<double> expected;
      std::size_t pos = 0;
      for (Family f : kAllFamilies) {
        const std::size_t width = full_schema.family_width(f);
        if (f != drop) {
          for (std::size_t k = 0; k < width; ++k) expected.push_back(full[pos + k]);
        }
        pos += width;
      }
      CHECK(sliced == expected);
    }
  }

  TEST_CASE("inconsistent schema raises SchemaMismatch") {
    auto schema = build_schema(schema_train(), all_families());
    schema.total_dim -= 1;
    const auto kb = kb_with({});
    try {
      extract({"car", "com", AssetClass::DomainName}, kb, schema);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::SchemaMismatch);
    }
  }
}

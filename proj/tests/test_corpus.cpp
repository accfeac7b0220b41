#include <doctest.h>

#include <algorithm>
#include <random>

#include "pqgen/corpus.hpp"
#include "pqgen/errors.hpp"

using namespace pqgen;
using Terms = std::map<std::string, std::size_t>;

TEST_CASE("hand-countable corpus") {
  const std::vector<std::string> q = {"man on the left", "red car"};
  const auto s = analyze_corpus(q);
  CHECK(s.total_queries == 2);
  CHECK(s.spatial_queries == 1);
  CHECK(s.per_term == Terms{{"left", 1}});
  CHECK(s.spatial_fraction() == 0.5);
}

TEST_CASE("tokens versus queries") {
  const auto s = analyze_corpus(std::vector<std::string>{"left left"});
  CHECK(s.spatial_queries == 1);
  CHECK(s.per_term == Terms{{"left", 2}});
}

TEST_CASE("token-boundary matching and case folding") {
  const auto s = analyze_corpus(std::vector<std::string>{"lefty guy", "LEFT-most man", "bottom,right!"});
  CHECK(s.spatial_queries == 2);
  CHECK(s.per_term == Terms{{"left", 1}, {"bottom", 1}, {"right", 1}});
  CHECK(tokenize("Guy in the Center, left.") ==
        std::vector<std::string>{"guy", "in", "the", "center", "left"});
}

TEST_CASE("center is counted under middle") {
  const auto s = analyze_corpus(std::vector<std::string>{"center man", "middle one"});
  CHECK(s.per_term == Terms{{"middle", 2}});
  const KeywordSet k;
  CHECK(std::find(k.terms().begin(), k.terms().end(), "center") == k.terms().end());
}

TEST_CASE("empty corpus is flagged, not a division failure") {
  const auto s = analyze_corpus(std::vector<std::string>{});
  CHECK(s.empty());
  CHECK(s.spatial_fraction() == 0.0);
  const auto j = to_json(s, KeywordSet{});
  CHECK(j["empty_corpus"] == true);
  CHECK(format_table(s, KeywordSet{}).find("undefined") != std::string::npos);
}

TEST_CASE("keyword list must not be empty") {
  CHECK_THROWS_AS(KeywordSet(std::vector<std::string>{}), ConfigError);
  const KeywordSet custom({"near", "far"});
  CHECK(is_spatial("the far one", custom));
  CHECK_FALSE(is_spatial("man on the left", custom));
}

TEST_CASE("constructed corpus: 600 of 1000 spatial") {
  std::vector<std::string> corpus;
  for (int i = 0; i < 1000; ++i) corpus.push_back(i < 600 ? "man on the left" : "red car");
  const auto s = analyze_corpus(corpus);
  CHECK(s.spatial_fraction() == 0.6);
  CHECK(s.per_term == Terms{{"left", 600}});
}

TEST_CASE("permutation invariance and additivity") {
  std::mt19937_64 rng(4);
  const std::vector<std::string> words = {"left", "right", "man", "center", "red", "front", "lefty", "top"};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1), len(1, 5);
  std::vector<std::string> corpus;
  for (int i = 0; i < 400; ++i) {
    std::string q;
    for (std::size_t k = len(rng); k > 0; --k) q += words[pick(rng)] + " ";
    corpus.push_back(q);
  }
  const auto whole = analyze_corpus(corpus);
  auto shuffled = corpus;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  CHECK(analyze_corpus(shuffled) == whole);

  const std::vector<std::string> a(corpus.begin(), corpus.begin() + 150), b(corpus.begin() + 150, corpus.end());
  auto merged = analyze_corpus(a);
  merged += analyze_corpus(b);
  CHECK(merged == whole);
  CHECK(merged.spatial_fraction() == whole.spatial_fraction());
}

TEST_CASE("table output lists every term") {
  const auto s = analyze_corpus(std::vector<std::string>{"man on the left", "right car"});
  const auto table = format_table(s, KeywordSet{});
  for (const char* t : {"left", "right", "middle", "front", "behind", "top", "bottom", "1.0000"})
    CHECK(table.find(t) != std::string::npos);
}

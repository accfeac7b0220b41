#include <doctest.h>

#include <random>

#include "pqgen/errors.hpp"
#include "pqgen/prompt.hpp"

using namespace pqgen;

TEST_CASE("built-in prompt wording") {
  const PromptRegistry reg;
  CHECK(apply_prompt("man on the right", reg.get("which_region")) ==
        "which region does the text man on the right describe?");
  CHECK(apply_prompt("left building", reg.get("find_region")) ==
        "find the region that corresponds to the description left building");
  CHECK(apply_prompt("left building", reg.get("none")) == "left building");
}

TEST_CASE("empty query is a precondition error") {
  const PromptRegistry reg;
  CHECK_THROWS_AS(apply_prompt("", reg.get("none")), std::invalid_argument);
}

TEST_CASE("templates need exactly one placeholder") {
  CHECK_THROWS_AS(PromptTemplate("bad", "no placeholder here"), ConfigError);
  CHECK_THROWS_AS(PromptTemplate("twice", "{query} and {query}"), ConfigError);
  CHECK_NOTHROW(PromptTemplate("ok", "locate: {query}."));
  const PromptRegistry reg;
  CHECK_THROWS_AS(reg.get("missing"), ConfigError);
}

TEST_CASE("re-wrapping wraps again") {
  const PromptTemplate t("w", "[{query}]");
  CHECK(apply_prompt(apply_prompt("dog", t), t) == "[[dog]]");
}

TEST_CASE("substring and length properties") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> len(1, 40), ch('a', 'z');
  PromptRegistry reg;
  reg.add({"custom", "pick {query} now"});
  for (int i = 0; i < 500; ++i) {
    std::string q(len(rng), ' ');
    for (char& c : q) c = static_cast<char>(ch(rng));
    for (const auto& id : reg.ids()) {
      const auto& t = reg.get(id);
      const auto out = apply_prompt(q, t);
      CHECK(out.find(q) != std::string::npos);
      CHECK(out.size() == t.pattern().size() - kQueryPlaceholder.size() + q.size());
    }
    CHECK(apply_prompt(q, reg.get("none")) == q);
  }
}

#include <doctest.h>

#include "pqgen/config.hpp"
#include "pqgen/errors.hpp"

using namespace pqgen;

TEST_CASE("dataset presets") {
  struct Expect {
    const char* name;
    int n, m;
  };
  const Expect expected[] = {{"refcoco", 3, 6}, {"refcoco+", 3, 12}, {"refcocog", 2, 4},
                             {"referit", 6, 15}, {"flickr30k", 7, 28}};
  for (const auto& e : expected) {
    ToolConfig cfg;
    apply_preset(cfg, e.name);
    CHECK(cfg.gen.top_n == e.n);
    CHECK(cfg.gen.max_m == e.m);
  }
  ToolConfig cfg;
  apply_preset(cfg, "refcoco");
  CHECK(cfg.prompt == "find_region");
  apply_preset(cfg, "referit");
  CHECK(cfg.prompt == "which_region");
  CHECK_THROWS_AS(apply_preset(cfg, "coco"), ConfigError);
}

TEST_CASE("defaults") {
  const GenConfig g;
  CHECK(g.tiny_area_frac == 0.05);
  CHECK(g.attr_conf_min == 0.5);
  CHECK(g.garment_iou_min == 0.15);
  CHECK(g.horiz_sep_min == 0.1);
  CHECK(g.vert_sep_min == 0.1);
  CHECK(g.depth_ratio_min == 3.0);
  CHECK_NOTHROW(validate(g));
}

TEST_CASE("file values override the preset") {
  const auto cfg = assemble_config("", Json::parse(R"({"preset":"referit","max_m":20,"seed":9})"));
  CHECK(cfg.gen.top_n == 6);
  CHECK(cfg.gen.max_m == 20);
  CHECK(cfg.gen.seed == 9);
  CHECK(cfg.preset == "referit");

  const auto flagged = assemble_config("refcocog", Json::parse(R"({"preset":"referit"})"));
  CHECK(flagged.gen.top_n == 2);
}

TEST_CASE("unknown keys and bad ranges are rejected") {
  ToolConfig cfg;
  CHECK_THROWS_AS(apply_json(cfg, Json::parse(R"({"topn":3})")), ConfigError);
  CHECK_THROWS_AS(apply_json(cfg, Json::parse(R"({"top_n":"3"})")), ConfigError);
  ToolConfig bad;
  apply_json(bad, Json::parse(R"({"depth_ratio_min":0.5})"));
  CHECK_THROWS_AS(validate(bad), ConfigError);
  ToolConfig zero;
  apply_json(zero, Json::parse(R"({"top_n":0})"));
  CHECK_THROWS_AS(validate(zero), ConfigError);
  CHECK_THROWS_AS(apply_json(cfg, Json::parse(R"({"prompt_templates":{"x":"no slot"}})")), ConfigError);
}

TEST_CASE("custom surfaces, prompts and keywords") {
  ToolConfig cfg;
  apply_json(cfg, Json::parse(R"({
    "surfaces": {"behind": ["back", "in the back"]},
    "prompt_templates": {"locate": "locate {query}"},
    "prompt": "locate",
    "keywords": ["left", "right"],
    "keyword_aliases": {}
  })"));
  CHECK(cfg.surfaces[Relation::behind].postfix == "in the back");
  CHECK(cfg.prompts.get("locate").pattern() == "locate {query}");
  CHECK_NOTHROW(validate(cfg));
  CHECK(cfg.keyword_set().terms() == std::vector<std::string>{"left", "right"});
}

TEST_CASE("snapshot round trip") {
  ToolConfig cfg;
  apply_json(cfg, Json::parse(R"({"preset":"flickr30k","seed":123456789012,"horiz_sep_min":0.2,
                                  "prompt_templates":{"locate":"locate {query}"}})"));
  ToolConfig back;
  apply_json(back, to_json(cfg));
  CHECK(back == cfg);
}

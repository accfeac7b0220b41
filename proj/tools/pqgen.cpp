// pqgen: pseudo region-query pair generation and evaluation tools.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pqgen/config.hpp"
#include "pqgen/errors.hpp"
#include "pqgen/eval.hpp"
#include "pqgen/pipeline.hpp"

namespace {

using pqgen::Json;

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void log_json(const Json& j) { std::cerr << j.dump() << '\n'; }

void report_error(std::string_view type, std::string_view message, Json extra = nullptr) {
  Json j;
  j["level"] = "error";
  j["type"] = type;
  j["message"] = message;
  if (!extra.is_null()) j["details"] = std::move(extra);
  log_json(j);
}

/// Config-related flags shared by several subcommands.
struct ConfigFlags {
  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<int> top_n, max_m;
  std::optional<double> tiny_area_frac, attr_conf_min, garment_iou_min, horiz_sep_min,
      vert_sep_min, depth_ratio_min;
  std::string prompt;

  void attach(CLI::App* app, bool generation_knobs) {
    app->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    app->add_option("--preset", preset,
                    "Dataset preset: refcoco, refcoco+, refcocog, referit, flickr30k");
    app->add_option("--seed", seed, "Random seed");
    if (!generation_knobs) return;
    app->add_option("--top-n", top_n, "Proposals kept per image");
    app->add_option("--max-m", max_m, "Pairs sampled per image");
    app->add_option("--tiny-area-frac", tiny_area_frac);
    app->add_option("--attr-conf-min", attr_conf_min);
    app->add_option("--garment-iou-min", garment_iou_min);
    app->add_option("--horiz-sep-min", horiz_sep_min);
    app->add_option("--vert-sep-min", vert_sep_min);
    app->add_option("--depth-ratio-min", depth_ratio_min);
  }

  pqgen::ToolConfig build() const {
    const Json file = config_path.empty() ? Json(nullptr) : pqgen::load_config_json(config_path);
    pqgen::ToolConfig cfg = pqgen::assemble_config(preset, file);
    if (seed) cfg.gen.seed = *seed;
    if (top_n) cfg.gen.top_n = *top_n;
    if (max_m) cfg.gen.max_m = *max_m;
    if (tiny_area_frac) cfg.gen.tiny_area_frac = *tiny_area_frac;
    if (attr_conf_min) cfg.gen.attr_conf_min = *attr_conf_min;
    if (garment_iou_min) cfg.gen.garment_iou_min = *garment_iou_min;
    if (horiz_sep_min) cfg.gen.horiz_sep_min = *horiz_sep_min;
    if (vert_sep_min) cfg.gen.vert_sep_min = *vert_sep_min;
    if (depth_ratio_min) cfg.gen.depth_ratio_min = *depth_ratio_min;
    if (!prompt.empty()) cfg.prompt = prompt;
    try {
      pqgen::validate(cfg);
    } catch (const pqgen::ConfigError& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo region-query pair generation for visual grounding"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pqgen::kToolVersion));

  // generate
  auto* gen = app.add_subcommand("generate", "Generate pseudo pairs from detector output");
  ConfigFlags gen_flags;
  std::string gen_in, gen_out;
  unsigned workers = 1;
  bool skip_invalid = false;
  gen->add_option("-i,--detections", gen_in, "detections.jsonl")->required()->check(CLI::ExistingFile);
  gen->add_option("-o,--out", gen_out, "Output pairs.jsonl")->required();
  gen->add_option("--workers", workers, "Worker threads (0 = all cores)");
  gen->add_flag("--skip-invalid", skip_invalid, "Skip invalid records with a warning");
  gen_flags.attach(gen, true);

  // prompt
  auto* prm = app.add_subcommand("prompt", "Wrap queries in a prompt template");
  ConfigFlags prm_flags;
  std::string prm_in, prm_out;
  prm->add_option("-i,--input", prm_in, "pairs.jsonl, manual.jsonl or a plain query list")
      ->required()->check(CLI::ExistingFile);
  prm->add_option("-o,--out", prm_out, "Output JSON lines")->required();
  prm->add_option("--template", prm_flags.prompt, "none, find_region, which_region or a configured id");
  prm_flags.attach(prm, false);

  // stats
  auto* sts = app.add_subcommand("stats", "Spatial-keyword statistics of a query corpus");
  ConfigFlags sts_flags;
  std::string sts_in, sts_out;
  sts->add_option("-i,--input", sts_in, "pairs.jsonl, manual.jsonl or a plain query list")
      ->required()->check(CLI::ExistingFile);
  sts->add_option("-o,--out", sts_out, "Write the stats record as JSON here");
  sts_flags.attach(sts, false);

  // score
  auto* scr = app.add_subcommand("score", "Top-1 accuracy at an IoU threshold");
  std::string preds_path, gt_path;
  double iou_thr = 0.5;
  scr->add_option("--preds", preds_path, "preds.jsonl")->required()->check(CLI::ExistingFile);
  scr->add_option("--gt", gt_path, "manual.jsonl")->required()->check(CLI::ExistingFile);
  scr->add_option("--iou", iou_thr, "Correct when IoU is strictly above this")
      ->check(CLI::Range(0.0, 1.0));

  // mix
  auto* mx = app.add_subcommand("mix", "Replace spatial manual labels with pseudo pairs");
  ConfigFlags mx_flags;
  std::string mx_manual, mx_pseudo, mx_out, mx_report;
  double fraction = 0.0;
  mx->add_option("--manual", mx_manual, "manual.jsonl")->required()->check(CLI::ExistingFile);
  mx->add_option("--pseudo", mx_pseudo, "pairs.jsonl")->required()->check(CLI::ExistingFile);
  mx->add_option("--fraction", fraction, "Fraction of the whole manual set to replace")
      ->required()->check(CLI::Range(0.0, 1.0));
  mx->add_option("--out", mx_out, "Mixed output")->required();
  mx->add_option("--report", mx_report, "MixPlan JSON")->required();
  mx_flags.attach(mx, false);

  // validate
  auto* val = app.add_subcommand("validate", "Check a file against its schema");
  ConfigFlags val_flags;
  std::string val_in, val_kind = "auto";
  val->add_option("file", val_in, "File to check")->required()->check(CLI::ExistingFile);
  val->add_option("--kind", val_kind, "auto, detections, manual, preds, pairs, mixed");
  val_flags.attach(val, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) {
      pqgen::GenerateOptions opts;
      opts.workers = workers;
      opts.skip_invalid = skip_invalid;
      opts.log = log_json;
      const auto m = pqgen::run_generate(gen_in, gen_flags.build(), gen_out, opts);
      std::cout << m.counters.dump() << '\n';
    } else if (*prm) {
      const auto m = pqgen::run_prompt(prm_in, prm_flags.build(), prm_out);
      std::cout << m.counters.dump() << '\n';
    } else if (*sts) {
      const auto cfg = sts_flags.build();
      const auto keywords = cfg.keyword_set();
      const auto stats = pqgen::run_stats(sts_in, keywords);
      if (!sts_out.empty()) {
        std::ofstream out(sts_out, std::ios::binary | std::ios::trunc);
        if (!out) throw pqgen::IoError("cannot write " + sts_out);
        out << pqgen::to_json(stats, keywords).dump(2) << '\n';
      } else {
        std::cout << pqgen::to_json(stats, keywords).dump() << '\n';
      }
      if (stats.empty()) report_error("empty_corpus", "corpus is empty; spatial_fraction undefined");
      std::cout << pqgen::format_table(stats, keywords);
    } else if (*scr) {
      const auto report = pqgen::run_score(preds_path, gt_path, iou_thr);
      std::cout << pqgen::to_json(report).dump() << '\n';
    } else if (*mx) {
      const auto cfg = mx_flags.build();
      const auto m = pqgen::run_mix(mx_manual, mx_pseudo, fraction, cfg, mx_out, mx_report, log_json);
      std::cout << m.counters.dump() << '\n';
    } else if (*val) {
      pqgen::FileKind kind;
      try {
        kind = pqgen::parse_file_kind(val_kind);
      } catch (const pqgen::ConfigError& e) {
        throw UsageError(e.what());
      }
      const auto rep = pqgen::run_validate(val_in, kind, val_flags.build());
      Json j;
      j["file"] = val_in;
      j["kind"] = pqgen::to_string(rep.kind);
      j["records"] = rep.records;
      j["ok"] = rep.ok();
      j["errors"] = rep.errors;
      std::cout << j.dump() << '\n';
      return rep.ok() ? 0 : kExitData;
    }
  } catch (const UsageError& e) {
    report_error("usage", e.what());
    return kExitUsage;
  } catch (const pqgen::ConfigError& e) {
    report_error("config", e.what());
    return kExitUsage;
  } catch (const pqgen::MissingIdsError& e) {
    report_error("missing_ids", e.what(), e.ids());
    return kExitData;
  } catch (const pqgen::ParseError& e) {
    Json d;
    d["line"] = e.line();
    d["field"] = e.field();
    report_error("parse", e.what(), d);
    return kExitData;
  } catch (const pqgen::ValidationError& e) {
    report_error("validation", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    report_error("data", e.what());
    return kExitData;
  }
  return 0;
}

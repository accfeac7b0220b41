#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "pqgen/config.hpp"
#include "pqgen/eval.hpp"
#include "pqgen/ingest.hpp"

namespace pqgen {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Structured log sink; records are never written to data outputs.
using LogSink = std::function<void(const Json&)>;

struct GenerateCounters {
  std::size_t images_read = 0;
  std::size_t images_skipped = 0;  ///< invalid records dropped under skip_invalid
  std::size_t images_without_proposals = 0;
  std::size_t proposals_kept = 0;
  std::size_t candidates_enumerated = 0;
  std::size_t pairs_emitted = 0;
  std::size_t warnings = 0;
};

/// Reproducibility envelope written next to every output file as
/// `<output>.manifest.json`.
struct RunManifest {
  std::string command;
  Json config;  ///< loadable with --config
  std::vector<std::pair<std::string, std::string>> inputs;   ///< path, sha256
  std::vector<std::pair<std::string, std::string>> outputs;  ///< path, sha256
  Json counters = Json::object();
};

Json to_json(const RunManifest& m);
std::filesystem::path manifest_path(const std::filesystem::path& output);
void write_manifest(const RunManifest& m, const std::filesystem::path& output);

std::string sha256_file(const std::filesystem::path& path);

struct GenerateOptions {
  unsigned workers = 1;  ///< 0 = hardware concurrency
  bool skip_invalid = false;
  LogSink log;
};

/// Pseudo pairs for a single image.
std::vector<PseudoPair> generate_for_image(const DetectionRecord& rec, const ToolConfig& cfg,
                                           GenerateCounters* counters = nullptr);

/// Detections -> labelled proposals -> candidates -> sampled pairs, written
/// sorted by image_id then candidate ordinal. Output bytes depend only on
/// the input and config, never on the worker count.
RunManifest run_generate(const std::filesystem::path& detections, const ToolConfig& cfg,
                         const std::filesystem::path& out, const GenerateOptions& opts = {});

/// Adds `prompted_query` to every record of a JSON-lines file (any record
/// with a "query" field), or wraps each line of a plain query list.
RunManifest run_prompt(const std::filesystem::path& input, const ToolConfig& cfg,
                       const std::filesystem::path& out);

/// Queries of a pairs/manual JSON-lines file or a plain text query list.
std::vector<std::string> read_queries(const std::filesystem::path& input);

CorpusStats run_stats(const std::filesystem::path& input, const KeywordSet& keywords);

ScoreReport run_score(const std::filesystem::path& preds, const std::filesystem::path& gt,
                      double iou_threshold);

RunManifest run_mix(const std::filesystem::path& manual, const std::filesystem::path& pseudo,
                    double fraction, const ToolConfig& cfg, const std::filesystem::path& out,
                    const std::filesystem::path& report, const LogSink& log = {});

enum class FileKind { auto_detect, detections, manual, predictions, pairs, mixed };

FileKind parse_file_kind(std::string_view s);
std::string_view to_string(FileKind k);

struct ValidationReport {
  FileKind kind = FileKind::auto_detect;
  std::size_t records = 0;
  std::vector<std::string> errors;

  bool ok() const noexcept { return errors.empty(); }
};

/// Checks every record of a file against its schema and invariants. Pair
/// files are additionally re-rendered against the configured surfaces.
ValidationReport run_validate(const std::filesystem::path& path, FileKind kind,
                              const ToolConfig& cfg);

}  // namespace pqgen

#include "pqgen/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "pqgen/errors.hpp"
#include "pqgen/labeling.hpp"
#include "pqgen/prompt.hpp"
#include "pqgen/querygen.hpp"

namespace pqgen {
namespace {

constexpr std::size_t kChunkSize = 4096;

struct ImageResult {
  std::string image_id;
  std::vector<PseudoPair> pairs;
  GenerateCounters counters;
};

Json warning(std::string_view event, std::string_view message) {
  Json j;
  j["level"] = "warning";
  j["event"] = event;
  j["message"] = message;
  return j;
}

Json counters_json(const GenerateCounters& c) {
  Json j;
  j["images_read"] = c.images_read;
  j["images_skipped"] = c.images_skipped;
  j["images_without_proposals"] = c.images_without_proposals;
  j["proposals_kept"] = c.proposals_kept;
  j["candidates_enumerated"] = c.candidates_enumerated;
  j["pairs_emitted"] = c.pairs_emitted;
  j["warnings"] = c.warnings;
  return j;
}

// Runs fn(i) for i in [0, n) on `workers` threads pulling indices from a
// shared counter. The first exception is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  for (unsigned w = 0; w < count; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

bool looks_like_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    return line[pos] == '{';
  }
  return false;
}

template <typename Fn>
void for_each_line(const std::filesystem::path& path, Fn fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    fn(line, n);
  }
}

Json parse_line(const std::string& line, std::size_t n) {
  try {
    return Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw ParseError(n, "", std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Json to_json(const RunManifest& m) {
  auto files = [](const auto& list) {
    Json arr = Json::array();
    for (const auto& [path, digest] : list) {
      Json f;
      f["path"] = path;
      f["sha256"] = digest;
      arr.push_back(std::move(f));
    }
    return arr;
  };
  Json j;
  j["tool"] = "pqgen";
  j["version"] = kToolVersion;
  j["command"] = m.command;
  j["seed"] = m.config.contains("seed") ? m.config["seed"] : Json(nullptr);
  j["config"] = m.config;
  j["inputs"] = files(m.inputs);
  j["outputs"] = files(m.outputs);
  j["counters"] = m.counters;
  return j;
}

std::filesystem::path manifest_path(const std::filesystem::path& output) {
  return output.string() + ".manifest.json";
}

void write_manifest(const RunManifest& m, const std::filesystem::path& output) {
  const auto path = manifest_path(output);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << to_json(m).dump(2) << '\n';
  if (!out) throw IoError("write failed on " + path.string());
}

std::vector<PseudoPair> generate_for_image(const DetectionRecord& rec, const ToolConfig& cfg,
                                           GenerateCounters* counters) {
  const auto proposals = label_image(rec, cfg.gen);
  const auto candidates = enumerate_candidates(rec.image_id, proposals, cfg.surfaces);
  auto pairs = sample_pairs(candidates, cfg.gen.max_m, cfg.gen.seed, rec.image_id);
  if (counters) {
    ++counters->images_read;
    if (proposals.empty()) ++counters->images_without_proposals;
    counters->proposals_kept += proposals.size();
    counters->candidates_enumerated += candidates.size();
    counters->pairs_emitted += pairs.size();
  }
  return pairs;
}

RunManifest run_generate(const std::filesystem::path& detections, const ToolConfig& cfg,
                         const std::filesystem::path& out, const GenerateOptions& opts) {
  validate(cfg);
  const unsigned workers = opts.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                             : opts.workers;
  GenerateCounters total;
  auto log = [&](const Json& j) {
    ++total.warnings;
    if (opts.log) opts.log(j);
  };

  ReadOptions ropts;
  ropts.skip_invalid = opts.skip_invalid;
  ropts.on_warning = [&](std::string_view msg) { log(warning("invalid_record", msg)); };
  DetectionReader reader(detections, ropts);

  std::vector<ImageResult> results;
  std::vector<DetectionRecord> chunk;
  auto flush_chunk = [&] {
    std::vector<ImageResult> part(chunk.size());
    parallel_for(chunk.size(), workers, [&](std::size_t i) {
      part[i].image_id = chunk[i].image_id;
      part[i].pairs = generate_for_image(chunk[i], cfg, &part[i].counters);
    });
    for (auto& r : part) results.push_back(std::move(r));
    chunk.clear();
  };
  while (auto rec = reader.next()) {
    chunk.push_back(std::move(*rec));
    if (chunk.size() == kChunkSize) flush_chunk();
  }
  flush_chunk();
  total.images_skipped = reader.skipped();

  std::sort(results.begin(), results.end(),
            [](const ImageResult& a, const ImageResult& b) { return a.image_id < b.image_id; });

  JsonlWriter writer(out);
  for (const auto& r : results) {
    total.images_read += r.counters.images_read;
    total.images_without_proposals += r.counters.images_without_proposals;
    total.proposals_kept += r.counters.proposals_kept;
    total.candidates_enumerated += r.counters.candidates_enumerated;
    total.pairs_emitted += r.counters.pairs_emitted;
    if (r.counters.images_without_proposals)
      log(warning("no_proposals", "image '" + r.image_id + "' yielded no proposals"));
    for (const auto& p : r.pairs) writer.write_record(p);
  }
  writer.flush();

  RunManifest m;
  m.command = "generate";
  m.config = to_json(cfg);
  m.inputs = {{detections.string(), sha256_file(detections)}};
  m.outputs = {{out.string(), sha256_file(out)}};
  m.counters = counters_json(total);
  write_manifest(m, out);
  return m;
}

RunManifest run_prompt(const std::filesystem::path& input, const ToolConfig& cfg,
                       const std::filesystem::path& out) {
  const PromptTemplate& tpl = cfg.prompts.get(cfg.prompt);
  const bool jsonl = looks_like_jsonl(input);
  JsonlWriter writer(out);
  for_each_line(input, [&](const std::string& line, std::size_t n) {
    Json rec;
    if (jsonl) {
      rec = parse_line(line, n);
      if (!rec.is_object() || !rec.contains("query") || !rec["query"].is_string())
        throw ParseError(n, "query", "expected a string field");
    } else {
      rec["query"] = line;
    }
    const auto query = rec["query"].get<std::string>();
    if (query.empty()) throw ValidationError("line " + std::to_string(n) + ": query is empty");
    rec["prompted_query"] = apply_prompt(query, tpl);
    writer.write(rec);
  });
  writer.flush();

  RunManifest m;
  m.command = "prompt";
  m.config = to_json(cfg);
  m.inputs = {{input.string(), sha256_file(input)}};
  m.outputs = {{out.string(), sha256_file(out)}};
  m.counters["records"] = writer.count();
  m.counters["template"] = cfg.prompt;
  write_manifest(m, out);
  return m;
}

std::vector<std::string> read_queries(const std::filesystem::path& input) {
  std::vector<std::string> queries;
  if (!looks_like_jsonl(input)) {
    for_each_line(input, [&](const std::string& line, std::size_t) { queries.push_back(line); });
    return queries;
  }
  std::unordered_set<std::string> seen;
  for_each_line(input, [&](const std::string& line, std::size_t n) {
    const Json j = parse_line(line, n);
    std::string id, query;
    if (j.is_object() && j.contains("template")) {
      auto p = decode_pair(j, n);
      id = p.sample_id;
      query = std::move(p.query);
    } else {
      auto s = decode_manual(j, n);
      id = s.sample_id;
      query = std::move(s.query);
    }
    if (!seen.insert(id).second)
      throw ValidationError("line " + std::to_string(n) + ": duplicate id '" + id + "'");
    queries.push_back(std::move(query));
  });
  return queries;
}

CorpusStats run_stats(const std::filesystem::path& input, const KeywordSet& keywords) {
  return analyze_corpus(read_queries(input), keywords);
}

ScoreReport run_score(const std::filesystem::path& preds, const std::filesystem::path& gt,
                      double iou_threshold) {
  const auto gts = read_all(read_manual(gt));
  auto reader = read_predictions(preds);
  return score(reader, gts, iou_threshold);
}

RunManifest run_mix(const std::filesystem::path& manual, const std::filesystem::path& pseudo,
                    double fraction, const ToolConfig& cfg, const std::filesystem::path& out,
                    const std::filesystem::path& report, const LogSink& log) {
  const auto manual_set = read_all(read_manual(manual));
  const auto pseudo_set = read_all(read_pairs(pseudo));
  const auto result = mix(manual_set, pseudo_set, fraction, cfg.keyword_set(), cfg.gen.seed);

  JsonlWriter writer(out);
  for (const auto& s : result.samples) writer.write_record(s);
  writer.flush();

  const Json plan = to_json(result.plan);
  {
    std::ofstream rep(report, std::ios::binary | std::ios::trunc);
    if (!rep) throw IoError("cannot write " + report.string());
    rep << plan.dump(2) << '\n';
  }
  if (log)
    for (const auto& w : result.plan.warnings) log(warning("mix", w));

  RunManifest m;
  m.command = "mix";
  m.config = to_json(cfg);
  m.inputs = {{manual.string(), sha256_file(manual)}, {pseudo.string(), sha256_file(pseudo)}};
  m.outputs = {{out.string(), sha256_file(out)}, {report.string(), sha256_file(report)}};
  m.counters = plan;
  write_manifest(m, out);
  return m;
}

FileKind parse_file_kind(std::string_view s) {
  if (s == "auto") return FileKind::auto_detect;
  if (s == "detections") return FileKind::detections;
  if (s == "manual") return FileKind::manual;
  if (s == "preds" || s == "predictions") return FileKind::predictions;
  if (s == "pairs") return FileKind::pairs;
  if (s == "mixed") return FileKind::mixed;
  throw ConfigError("unknown file kind '" + std::string(s) + "'");
}

std::string_view to_string(FileKind k) {
  switch (k) {
    case FileKind::auto_detect: return "auto";
    case FileKind::detections: return "detections";
    case FileKind::manual: return "manual";
    case FileKind::predictions: return "preds";
    case FileKind::pairs: return "pairs";
    case FileKind::mixed: return "mixed";
  }
  return "auto";
}

namespace {

FileKind detect_kind(const Json& j) {
  if (!j.is_object()) return FileKind::manual;
  if (j.contains("objects")) return FileKind::detections;
  if (j.contains("template")) return FileKind::pairs;
  if (j.contains("source")) return FileKind::mixed;
  if (j.contains("query")) return FileKind::manual;
  return FileKind::predictions;
}

MixedSample decode_mixed(const Json& j, std::size_t n) {
  MixedSample s;
  s.sample = decode_manual(j, n);
  if (!j.contains("source") || !j["source"].is_string())
    throw ParseError(n, "source", "expected \"manual\" or \"pseudo\"");
  const auto src = j["source"].get<std::string>();
  if (src == "manual") s.source = SampleSource::manual;
  else if (src == "pseudo") s.source = SampleSource::pseudo;
  else throw ParseError(n, "source", "expected \"manual\" or \"pseudo\"");
  if (auto it = j.find("replaces"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError(n, "replaces", "expected a string");
    s.replaces = it->get<std::string>();
  }
  validate(s);
  return s;
}

}  // namespace

ValidationReport run_validate(const std::filesystem::path& path, FileKind kind,
                              const ToolConfig& cfg) {
  ValidationReport rep;
  rep.kind = kind;
  std::unordered_set<std::string> seen;
  for_each_line(path, [&](const std::string& line, std::size_t n) {
    try {
      const Json j = parse_line(line, n);
      if (rep.kind == FileKind::auto_detect) rep.kind = detect_kind(j);
      std::string key;
      switch (rep.kind) {
        case FileKind::detections: key = decode_detection(j, n).image_id; break;
        case FileKind::manual: key = decode_manual(j, n).sample_id; break;
        case FileKind::predictions: key = decode_prediction(j, n).sample_id; break;
        case FileKind::mixed: key = decode_mixed(j, n).sample.sample_id; break;
        case FileKind::pairs: {
          const auto p = decode_pair(j, n);
          if (render(p, cfg.surfaces) != p.query)
            throw ValidationError("pair '" + p.sample_id + "': query does not match its components");
          key = p.sample_id;
          break;
        }
        case FileKind::auto_detect: break;
      }
      if (!seen.insert(key).second) throw ValidationError("duplicate id '" + key + "'");
      ++rep.records;
    } catch (const ParseError& e) {
      rep.errors.push_back(e.what());
    } catch (const ValidationError& e) {
      rep.errors.push_back("line " + std::to_string(n) + ": " + e.what());
    }
  });
  return rep;
}

}  // namespace pqgen

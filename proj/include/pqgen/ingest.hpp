#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pqgen/geometry.hpp"
#include "pqgen/vocabulary.hpp"

namespace pqgen {

using Json = nlohmann::ordered_json;

struct AttributeScore {
  std::string label;
  double confidence = 0.0;

  friend bool operator==(const AttributeScore&, const AttributeScore&) = default;
};

struct DetectedObject {
  std::string noun;
  double det_confidence = 0.0;
  Box box;
  std::vector<AttributeScore> attributes;
  bool is_garment = false;

  friend bool operator==(const DetectedObject&, const DetectedObject&) = default;
};

/// One image's detector + attribute-classifier output.
struct DetectionRecord {
  std::string image_id;
  int image_width = 0;
  int image_height = 0;
  std::vector<DetectedObject> objects;

  friend bool operator==(const DetectionRecord&, const DetectionRecord&) = default;
};

/// Human-annotated (region, query) sample.
struct ManualSample {
  std::string sample_id;
  std::string image_id;
  Box box;
  std::string query;

  friend bool operator==(const ManualSample&, const ManualSample&) = default;
};

struct PredictionRecord {
  std::string sample_id;
  Box predicted_box;

  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

/// Generated (region, query) training sample. `attr` and `rela` are set
/// exactly when the template uses the slot.
struct PseudoPair {
  std::string sample_id;
  std::string image_id;
  Box box;
  std::string query;
  TemplateId template_id = TemplateId::N;
  std::string noun;
  std::optional<std::string> attr;
  std::optional<Relation> rela;

  friend bool operator==(const PseudoPair&, const PseudoPair&) = default;
};

// Invariant checks. Each throws ValidationError naming the record and field.
void validate(const DetectionRecord& rec);
void validate(const ManualSample& s);
void validate(const PredictionRecord& p);
void validate(const PseudoPair& p);

// JSON encoding with stable field order.
Json to_json(const DetectionRecord& rec);
Json to_json(const ManualSample& s);
Json to_json(const PredictionRecord& p);
Json to_json(const PseudoPair& p);

// Decoding of one parsed line; throws ParseError (line + field path) on
// schema errors and ValidationError on invariant violations.
DetectionRecord decode_detection(const Json& j, std::size_t line);
ManualSample decode_manual(const Json& j, std::size_t line);
PredictionRecord decode_prediction(const Json& j, std::size_t line);
PseudoPair decode_pair(const Json& j, std::size_t line);

/// Unique key of a record within its file.
inline const std::string& record_key(const DetectionRecord& r) { return r.image_id; }
inline const std::string& record_key(const ManualSample& r) { return r.sample_id; }
inline const std::string& record_key(const PredictionRecord& r) { return r.sample_id; }
inline const std::string& record_key(const PseudoPair& r) { return r.sample_id; }

struct ReadOptions {
  /// Downgrade per-record parse/validation failures to warnings and skip the record.
  bool skip_invalid = false;
  std::function<void(std::string_view)> on_warning;
};

/// Single-consumer stream over a line-delimited JSON file. Holds one
/// record at a time plus the set of keys seen (for duplicate detection).
template <typename Record>
class RecordReader {
public:
  explicit RecordReader(const std::filesystem::path& path, ReadOptions opts = {});
  explicit RecordReader(std::unique_ptr<std::istream> in, ReadOptions opts = {});
  RecordReader(RecordReader&&) noexcept;
  RecordReader& operator=(RecordReader&&) noexcept;
  ~RecordReader();

  static RecordReader from_string(std::string text, ReadOptions opts = {});

  /// Next valid record, or nullopt at end of file.
  std::optional<Record> next();

  /// 1-based number of the last line consumed.
  std::size_t line_number() const noexcept { return line_; }
  std::size_t skipped() const noexcept { return skipped_; }

private:
  std::unique_ptr<std::istream> in_;
  ReadOptions opts_;
  std::size_t line_ = 0;
  std::size_t skipped_ = 0;
  std::unordered_set<std::string> seen_;
};

using DetectionReader = RecordReader<DetectionRecord>;
using ManualReader = RecordReader<ManualSample>;
using PredictionReader = RecordReader<PredictionRecord>;
using PairReader = RecordReader<PseudoPair>;

inline DetectionReader read_detections(const std::filesystem::path& p, ReadOptions o = {}) {
  return DetectionReader(p, std::move(o));
}
inline ManualReader read_manual(const std::filesystem::path& p, ReadOptions o = {}) {
  return ManualReader(p, std::move(o));
}
inline PredictionReader read_predictions(const std::filesystem::path& p, ReadOptions o = {}) {
  return PredictionReader(p, std::move(o));
}
inline PairReader read_pairs(const std::filesystem::path& p, ReadOptions o = {}) {
  return PairReader(p, std::move(o));
}

template <typename Record>
std::vector<Record> read_all(RecordReader<Record> reader) {
  std::vector<Record> out;
  while (auto r = reader.next()) out.push_back(std::move(*r));
  return out;
}

/// Line-delimited JSON output. Each record is validated before it is
/// written; the file is created on construction.
class JsonlWriter {
public:
  explicit JsonlWriter(const std::filesystem::path& path);
  explicit JsonlWriter(std::ostream& out);
  JsonlWriter(JsonlWriter&&) noexcept;
  ~JsonlWriter();

  void write(const Json& j);
  template <typename Record>
  void write_record(const Record& r) {
    validate(r);
    write(to_json(r));
  }
  std::size_t count() const noexcept { return count_; }
  void flush();

private:
  std::unique_ptr<std::ostream> owned_;
  std::ostream* out_;
  std::size_t count_ = 0;
};

/// Validates every pair, then writes them one per line. Nothing is written
/// if any pair is invalid. Returns the number written.
std::size_t write_pairs(const std::filesystem::path& path, const std::vector<PseudoPair>& pairs);
std::size_t write_manual(const std::filesystem::path& path, const std::vector<ManualSample>& samples);
std::size_t write_detections(const std::filesystem::path& path,
                             const std::vector<DetectionRecord>& records);
std::size_t write_predictions(const std::filesystem::path& path,
                              const std::vector<PredictionRecord>& preds);

Json box_to_json(const Box& b);

}  // namespace pqgen

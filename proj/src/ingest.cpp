#include "pqgen/ingest.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "pqgen/errors.hpp"

namespace pqgen {
namespace {

std::string squote(const std::string& s) { return "'" + s + "'"; }

void check_box(const Box& b, const std::string& owner, const std::string& field) {
  if (auto why = box_violation(b); !why.empty())
    throw ValidationError(owner + ": " + field + ": " + why);
}

const Json& require(const Json& j, const char* key, std::size_t line, const std::string& path) {
  if (!j.is_object()) throw ParseError(line, path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(line, path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string sub(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

std::string as_string(const Json& j, std::size_t line, const std::string& path) {
  if (!j.is_string()) throw ParseError(line, path, "expected a string");
  return j.get<std::string>();
}

double as_number(const Json& j, std::size_t line, const std::string& path) {
  if (!j.is_number()) throw ParseError(line, path, "expected a number");
  return j.get<double>();
}

int as_positive_int(const Json& j, std::size_t line, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(line, path, "expected an integer");
  const auto v = j.get<long long>();
  if (v <= 0 || v > std::numeric_limits<int>::max())
    throw ParseError(line, path, "expected a positive integer");
  return static_cast<int>(v);
}

Box as_box(const Json& j, std::size_t line, const std::string& path) {
  if (!j.is_array() || j.size() != 4)
    throw ParseError(line, path, "expected [x1, y1, x2, y2]");
  Box b;
  b.x1 = as_number(j[0], line, path + "[0]");
  b.y1 = as_number(j[1], line, path + "[1]");
  b.x2 = as_number(j[2], line, path + "[2]");
  b.y2 = as_number(j[3], line, path + "[3]");
  return b;
}

std::optional<std::string> as_optional_string(const Json& j, std::size_t line,
                                              const std::string& path) {
  if (j.is_null()) return std::nullopt;
  return as_string(j, line, path);
}

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

template <typename Record>
Record decode_line(const Json& j, std::size_t line);

template <>
DetectionRecord decode_line<DetectionRecord>(const Json& j, std::size_t line) {
  return decode_detection(j, line);
}
template <>
ManualSample decode_line<ManualSample>(const Json& j, std::size_t line) {
  return decode_manual(j, line);
}
template <>
PredictionRecord decode_line<PredictionRecord>(const Json& j, std::size_t line) {
  return decode_prediction(j, line);
}
template <>
PseudoPair decode_line<PseudoPair>(const Json& j, std::size_t line) {
  return decode_pair(j, line);
}

}  // namespace

Json box_to_json(const Box& b) { return Json::array({b.x1, b.y1, b.x2, b.y2}); }

// ---------------------------------------------------------------- validate

void validate(const DetectionRecord& rec) {
  if (rec.image_id.empty()) throw ValidationError("detection record: image_id is empty");
  const std::string owner = "image " + squote(rec.image_id);
  if (rec.image_width <= 0 || rec.image_height <= 0)
    throw ValidationError(owner + ": width/height must be positive");
  for (std::size_t i = 0; i < rec.objects.size(); ++i) {
    const auto& o = rec.objects[i];
    const std::string field = "objects[" + std::to_string(i) + "]";
    if (o.noun.empty()) throw ValidationError(owner + ": " + field + ".noun: empty");
    if (!in_unit_interval(o.det_confidence))
      throw ValidationError(owner + ": " + field + ".conf: outside [0,1]");
    check_box(o.box, owner, field + ".box");
    if (o.box.x2 > rec.image_width || o.box.y2 > rec.image_height)
      throw ValidationError(owner + ": " + field + ".box: outside image bounds");
    for (std::size_t k = 0; k < o.attributes.size(); ++k) {
      const auto& a = o.attributes[k];
      const std::string af = field + ".attrs[" + std::to_string(k) + "]";
      if (a.label.empty()) throw ValidationError(owner + ": " + af + ": empty label");
      if (!in_unit_interval(a.confidence))
        throw ValidationError(owner + ": " + af + ": confidence outside [0,1]");
    }
  }
}

void validate(const ManualSample& s) {
  if (s.sample_id.empty()) throw ValidationError("manual sample: sample_id is empty");
  const std::string owner = "sample " + squote(s.sample_id);
  if (s.image_id.empty()) throw ValidationError(owner + ": image_id is empty");
  check_box(s.box, owner, "box");
  if (s.query.empty()) throw ValidationError(owner + ": query is empty");
}

void validate(const PredictionRecord& p) {
  if (p.sample_id.empty()) throw ValidationError("prediction: sample_id is empty");
  check_box(p.predicted_box, "prediction " + squote(p.sample_id), "box");
}

void validate(const PseudoPair& p) {
  if (p.sample_id.empty()) throw ValidationError("pseudo pair: sample_id is empty");
  const std::string owner = "pair " + squote(p.sample_id);
  if (p.image_id.empty()) throw ValidationError(owner + ": image_id is empty");
  check_box(p.box, owner, "box");
  if (p.query.empty()) throw ValidationError(owner + ": query is empty");
  if (p.noun.empty()) throw ValidationError(owner + ": noun is empty");
  const bool wants_attr = uses_slot(p.template_id, Slot::attr);
  const bool wants_rela = uses_slot(p.template_id, Slot::rela);
  if (wants_attr != p.attr.has_value())
    throw ValidationError(owner + ": attr presence does not match template " +
                          std::string(to_string(p.template_id)));
  if (p.attr && p.attr->empty()) throw ValidationError(owner + ": attr is empty");
  if (wants_rela != p.rela.has_value())
    throw ValidationError(owner + ": rela presence does not match template " +
                          std::string(to_string(p.template_id)));
}

// ------------------------------------------------------------------ encode

Json to_json(const DetectionRecord& rec) {
  Json objects = Json::array();
  for (const auto& o : rec.objects) {
    Json attrs = Json::array();
    for (const auto& a : o.attributes) attrs.push_back(Json::array({a.label, a.confidence}));
    Json jo;
    jo["noun"] = o.noun;
    jo["conf"] = o.det_confidence;
    jo["box"] = box_to_json(o.box);
    jo["attrs"] = std::move(attrs);
    jo["garment"] = o.is_garment;
    objects.push_back(std::move(jo));
  }
  Json j;
  j["image_id"] = rec.image_id;
  j["width"] = rec.image_width;
  j["height"] = rec.image_height;
  j["objects"] = std::move(objects);
  return j;
}

Json to_json(const ManualSample& s) {
  Json j;
  j["sample_id"] = s.sample_id;
  j["image_id"] = s.image_id;
  j["box"] = box_to_json(s.box);
  j["query"] = s.query;
  return j;
}

Json to_json(const PredictionRecord& p) {
  Json j;
  j["sample_id"] = p.sample_id;
  j["box"] = box_to_json(p.predicted_box);
  return j;
}

Json to_json(const PseudoPair& p) {
  Json j;
  j["sample_id"] = p.sample_id;
  j["image_id"] = p.image_id;
  j["box"] = box_to_json(p.box);
  j["query"] = p.query;
  j["template"] = std::string(to_string(p.template_id));
  j["noun"] = p.noun;
  j["attr"] = p.attr ? Json(*p.attr) : Json(nullptr);
  j["rela"] = p.rela ? Json(std::string(to_string(*p.rela))) : Json(nullptr);
  return j;
}

// ------------------------------------------------------------------ decode

DetectionRecord decode_detection(const Json& j, std::size_t line) {
  DetectionRecord rec;
  rec.image_id = as_string(require(j, "image_id", line, ""), line, "image_id");
  rec.image_width = as_positive_int(require(j, "width", line, ""), line, "width");
  rec.image_height = as_positive_int(require(j, "height", line, ""), line, "height");
  const Json& objects = require(j, "objects", line, "");
  if (!objects.is_array()) throw ParseError(line, "objects", "expected an array");
  rec.objects.reserve(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const std::string path = "objects[" + std::to_string(i) + "]";
    const Json& jo = objects[i];
    DetectedObject o;
    o.noun = as_string(require(jo, "noun", line, path), line, sub(path, "noun"));
    o.det_confidence = as_number(require(jo, "conf", line, path), line, sub(path, "conf"));
    o.box = as_box(require(jo, "box", line, path), line, sub(path, "box"));
    if (auto it = jo.find("attrs"); it != jo.end()) {
      const std::string ap = sub(path, "attrs");
      if (!it->is_array()) throw ParseError(line, ap, "expected an array");
      for (std::size_t k = 0; k < it->size(); ++k) {
        const Json& pair = (*it)[k];
        const std::string pp = ap + "[" + std::to_string(k) + "]";
        if (!pair.is_array() || pair.size() != 2)
          throw ParseError(line, pp, "expected [label, confidence]");
        o.attributes.push_back(
            {as_string(pair[0], line, pp + "[0]"), as_number(pair[1], line, pp + "[1]")});
      }
    }
    if (auto it = jo.find("garment"); it != jo.end()) {
      if (!it->is_boolean()) throw ParseError(line, sub(path, "garment"), "expected a boolean");
      o.is_garment = it->get<bool>();
    }
    rec.objects.push_back(std::move(o));
  }
  validate(rec);
  return rec;
}

ManualSample decode_manual(const Json& j, std::size_t line) {
  ManualSample s;
  s.sample_id = as_string(require(j, "sample_id", line, ""), line, "sample_id");
  s.image_id = as_string(require(j, "image_id", line, ""), line, "image_id");
  s.box = as_box(require(j, "box", line, ""), line, "box");
  s.query = as_string(require(j, "query", line, ""), line, "query");
  validate(s);
  return s;
}

PredictionRecord decode_prediction(const Json& j, std::size_t line) {
  PredictionRecord p;
  p.sample_id = as_string(require(j, "sample_id", line, ""), line, "sample_id");
  p.predicted_box = as_box(require(j, "box", line, ""), line, "box");
  validate(p);
  return p;
}

PseudoPair decode_pair(const Json& j, std::size_t line) {
  PseudoPair p;
  p.sample_id = as_string(require(j, "sample_id", line, ""), line, "sample_id");
  p.image_id = as_string(require(j, "image_id", line, ""), line, "image_id");
  p.box = as_box(require(j, "box", line, ""), line, "box");
  p.query = as_string(require(j, "query", line, ""), line, "query");
  const auto tname = as_string(require(j, "template", line, ""), line, "template");
  auto t = parse_template(tname);
  if (!t) throw ParseError(line, "template", "unknown template " + squote(tname));
  p.template_id = *t;
  p.noun = as_string(require(j, "noun", line, ""), line, "noun");
  p.attr = as_optional_string(require(j, "attr", line, ""), line, "attr");
  if (auto r = as_optional_string(require(j, "rela", line, ""), line, "rela")) {
    auto rel = parse_relation(*r);
    if (!rel) throw ParseError(line, "rela", "unknown relation " + squote(*r));
    p.rela = *rel;
  }
  validate(p);
  return p;
}

// ------------------------------------------------------------------ reader

template <typename Record>
RecordReader<Record>::RecordReader(const std::filesystem::path& path, ReadOptions opts)
    : opts_(std::move(opts)) {
  auto f = std::make_unique<std::ifstream>(path);
  if (!*f) throw IoError("cannot open " + path.string());
  in_ = std::move(f);
}

template <typename Record>
RecordReader<Record>::RecordReader(std::unique_ptr<std::istream> in, ReadOptions opts)
    : in_(std::move(in)), opts_(std::move(opts)) {}

template <typename Record>
RecordReader<Record>::RecordReader(RecordReader&&) noexcept = default;
template <typename Record>
RecordReader<Record>& RecordReader<Record>::operator=(RecordReader&&) noexcept = default;
template <typename Record>
RecordReader<Record>::~RecordReader() = default;

template <typename Record>
RecordReader<Record> RecordReader<Record>::from_string(std::string text, ReadOptions opts) {
  return RecordReader(std::make_unique<std::istringstream>(std::move(text)), std::move(opts));
}

template <typename Record>
std::optional<Record> RecordReader<Record>::next() {
  std::string text;
  while (std::getline(*in_, text)) {
    ++line_;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      Json j;
      try {
        j = Json::parse(text);
      } catch (const Json::parse_error& e) {
        throw ParseError(line_, "", std::string("malformed JSON: ") + e.what());
      }
      Record rec = decode_line<Record>(j, line_);
      if (!seen_.insert(record_key(rec)).second)
        throw ValidationError("duplicate id " + squote(record_key(rec)));
      return rec;
    } catch (const ParseError& e) {
      if (!opts_.skip_invalid) throw;
      ++skipped_;
      if (opts_.on_warning) opts_.on_warning(e.what());
    } catch (const ValidationError& e) {
      const std::string msg = "line " + std::to_string(line_) + ": " + e.what();
      if (!opts_.skip_invalid) throw ValidationError(msg);
      ++skipped_;
      if (opts_.on_warning) opts_.on_warning(msg);
    }
  }
  if (in_->bad()) throw IoError("read failure at line " + std::to_string(line_ + 1));
  return std::nullopt;
}

template class RecordReader<DetectionRecord>;
template class RecordReader<ManualSample>;
template class RecordReader<PredictionRecord>;
template class RecordReader<PseudoPair>;

// ------------------------------------------------------------------ writer

JsonlWriter::JsonlWriter(const std::filesystem::path& path) {
  auto f = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
  if (!*f) throw IoError("cannot write " + path.string());
  out_ = f.get();
  owned_ = std::move(f);
}

JsonlWriter::JsonlWriter(std::ostream& out) : out_(&out) {}
JsonlWriter::JsonlWriter(JsonlWriter&&) noexcept = default;
JsonlWriter::~JsonlWriter() = default;

void JsonlWriter::write(const Json& j) {
  *out_ << j.dump() << '\n';
  if (!*out_) throw IoError("write failed");
  ++count_;
}

void JsonlWriter::flush() {
  out_->flush();
  if (!*out_) throw IoError("flush failed");
}

namespace {
template <typename Record>
std::size_t write_all(const std::filesystem::path& path, const std::vector<Record>& records) {
  for (const auto& r : records) validate(r);
  JsonlWriter w(path);
  for (const auto& r : records) w.write(to_json(r));
  w.flush();
  return w.count();
}
}  // namespace

std::size_t write_pairs(const std::filesystem::path& path, const std::vector<PseudoPair>& pairs) {
  return write_all(path, pairs);
}
std::size_t write_manual(const std::filesystem::path& path,
                         const std::vector<ManualSample>& samples) {
  return write_all(path, samples);
}
std::size_t write_detections(const std::filesystem::path& path,
                             const std::vector<DetectionRecord>& records) {
  return write_all(path, records);
}
std::size_t write_predictions(const std::filesystem::path& path,
                              const std::vector<PredictionRecord>& preds) {
  return write_all(path, preds);
}

}  // namespace pqgen

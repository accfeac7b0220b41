#include "pqgen/eval.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "pqgen/errors.hpp"
#include "pqgen/random.hpp"

namespace pqgen {
namespace {

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}

class Scorer {
public:
  Scorer(const std::vector<ManualSample>& gts, double thr) {
    report_.iou_threshold = thr;
    for (const auto& g : gts) boxes_.emplace(g.sample_id, g.box);
  }

  void add(const PredictionRecord& p) {
    if (!seen_.insert(p.sample_id).second)
      throw ValidationError("duplicate prediction for sample '" + p.sample_id + "'");
    auto it = boxes_.find(p.sample_id);
    if (it == boxes_.end()) {
      missing_.push_back(p.sample_id);
      return;
    }
    ++report_.total;
    if (iou(p.predicted_box, it->second) > report_.iou_threshold) ++report_.correct;
  }

  ScoreReport finish() const {
    if (!missing_.empty()) throw MissingIdsError(missing_);
    return report_;
  }

private:
  std::unordered_map<std::string, Box> boxes_;
  std::unordered_set<std::string> seen_;
  std::vector<std::string> missing_;
  ScoreReport report_;
};

}  // namespace

MissingIdsError::MissingIdsError(std::vector<std::string> ids)
    : ValidationError("prediction ids missing from ground truth: " + join_ids(ids)),
      ids_(std::move(ids)) {}

ScoreReport& ScoreReport::operator+=(const ScoreReport& other) {
  total += other.total;
  correct += other.correct;
  return *this;
}

ScoreReport score(const std::vector<PredictionRecord>& preds,
                  const std::vector<ManualSample>& ground_truth, double iou_threshold) {
  Scorer s(ground_truth, iou_threshold);
  for (const auto& p : preds) s.add(p);
  return s.finish();
}

ScoreReport score(PredictionReader& preds, const std::vector<ManualSample>& ground_truth,
                  double iou_threshold) {
  Scorer s(ground_truth, iou_threshold);
  while (auto p = preds.next()) s.add(*p);
  return s.finish();
}

Json to_json(const ScoreReport& r) {
  Json j;
  j["total"] = r.total;
  j["correct"] = r.correct;
  j["accuracy"] = r.accuracy();
  j["iou_threshold"] = r.iou_threshold;
  return j;
}

MixResult mix(const std::vector<ManualSample>& manual, const std::vector<PseudoPair>& pseudo,
              double fraction, const KeywordSet& keywords, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw std::invalid_argument("mix: fraction must be in [0,1]");

  MixResult result;
  MixPlan& plan = result.plan;
  plan.requested_fraction = fraction;
  plan.total_manual = manual.size();
  plan.seed = seed;

  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < manual.size(); ++i)
    if (is_spatial(manual[i].query, keywords)) eligible.push_back(i);
  plan.eligible = eligible.size();
  plan.requested = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(manual.size())));
  plan.selected = std::min(plan.requested, plan.eligible);
  if (plan.requested > plan.eligible) {
    plan.capped = true;
    plan.warnings.push_back("requested " + std::to_string(plan.requested) +
                            " replacements but only " + std::to_string(plan.eligible) +
                            " samples are eligible; capped");
  }

  std::vector<bool> chosen(manual.size(), false);
  Rng select_rng(stream_seed(seed, "mix/select"));
  for (std::size_t k : sample_indices(eligible.size(), plan.selected, select_rng))
    chosen[eligible[k]] = true;

  // Per-image pools, shuffled once; replacements are popped in manual order.
  std::unordered_map<std::string, std::vector<std::size_t>> pools;
  for (std::size_t i = 0; i < pseudo.size(); ++i) pools[pseudo[i].image_id].push_back(i);
  std::unordered_set<std::string> shuffled;

  result.samples.reserve(manual.size());
  for (std::size_t i = 0; i < manual.size(); ++i) {
    const ManualSample& m = manual[i];
    if (!chosen[i]) {
      result.samples.push_back({m, SampleSource::manual, std::nullopt});
      continue;
    }
    auto pool = pools.find(m.image_id);
    if (pool != pools.end() && shuffled.insert(m.image_id).second) {
      Rng rng(stream_seed(seed, m.image_id));
      rng.shuffle(pool->second);
    }
    if (pool == pools.end() || pool->second.empty()) {
      ++plan.unfilled;
      plan.warnings.push_back("no pseudo pair left for image '" + m.image_id +
                              "'; kept manual sample '" + m.sample_id + "'");
      result.samples.push_back({m, SampleSource::manual, std::nullopt});
      continue;
    }
    const PseudoPair& p = pseudo[pool->second.back()];
    pool->second.pop_back();
    ++plan.replaced;
    result.samples.push_back(
        {{p.sample_id, p.image_id, p.box, p.query}, SampleSource::pseudo, m.sample_id});
  }
  return result;
}

void validate(const MixedSample& s) {
  validate(s.sample);
  if ((s.source == SampleSource::pseudo) != s.replaces.has_value())
    throw ValidationError("mixed sample '" + s.sample.sample_id +
                          "': replaces must be set exactly for pseudo records");
}

Json to_json(const MixedSample& s) {
  Json j = to_json(s.sample);
  j["source"] = s.source == SampleSource::manual ? "manual" : "pseudo";
  j["replaces"] = s.replaces ? Json(*s.replaces) : Json(nullptr);
  return j;
}

Json to_json(const MixPlan& p) {
  Json j;
  j["requested_fraction"] = p.requested_fraction;
  j["total_manual"] = p.total_manual;
  j["eligible"] = p.eligible;
  j["requested"] = p.requested;
  j["selected"] = p.selected;
  j["replaced"] = p.replaced;
  j["unfilled"] = p.unfilled;
  j["capped"] = p.capped;
  j["seed"] = p.seed;
  j["warnings"] = p.warnings;
  return j;
}

}  // namespace pqgen

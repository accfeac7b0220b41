#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pqgen/corpus.hpp"
#include "pqgen/errors.hpp"
#include "pqgen/ingest.hpp"

namespace pqgen {

/// Prediction ids absent from the ground truth.
class MissingIdsError : public ValidationError {
public:
  explicit MissingIdsError(std::vector<std::string> ids);
  const std::vector<std::string>& ids() const noexcept { return ids_; }

private:
  std::vector<std::string> ids_;
};

struct ScoreReport {
  std::size_t total = 0;
  std::size_t correct = 0;
  double iou_threshold = 0.5;

  double accuracy() const noexcept {
    return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
  }
  /// Shards scored at the same threshold add up.
  ScoreReport& operator+=(const ScoreReport& other);
};

/// Top-1 accuracy: a prediction is correct when iou(pred, gt) > threshold
/// (strictly). Throws MissingIdsError listing every unmatched id, and
/// ValidationError on a duplicate prediction id.
ScoreReport score(const std::vector<PredictionRecord>& preds,
                  const std::vector<ManualSample>& ground_truth, double iou_threshold = 0.5);
ScoreReport score(PredictionReader& preds, const std::vector<ManualSample>& ground_truth,
                  double iou_threshold = 0.5);

Json to_json(const ScoreReport& r);

enum class SampleSource { manual, pseudo };

struct MixedSample {
  ManualSample sample;
  SampleSource source = SampleSource::manual;
  std::optional<std::string> replaces;  ///< manual sample_id, for pseudo records

  friend bool operator==(const MixedSample&, const MixedSample&) = default;
};

struct MixPlan {
  double requested_fraction = 0.0;
  std::size_t total_manual = 0;
  std::size_t eligible = 0;   ///< manual samples whose query has a spatial keyword
  std::size_t requested = 0;  ///< llround(requested_fraction * total_manual)
  std::size_t selected = 0;   ///< min(requested, eligible)
  std::size_t replaced = 0;
  std::size_t unfilled = 0;   ///< selected but no pseudo pair left for the image
  bool capped = false;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

struct MixResult {
  std::vector<MixedSample> samples;  ///< same order and size as the manual input
  MixPlan plan;
};

/// Replaces a seeded uniform selection of spatial manual samples with pseudo
/// pairs from the same image. Throws std::invalid_argument if fraction is
/// outside [0,1].
MixResult mix(const std::vector<ManualSample>& manual, const std::vector<PseudoPair>& pseudo,
              double fraction, const KeywordSet& keywords, std::uint64_t seed);

Json to_json(const MixedSample& s);
Json to_json(const MixPlan& p);
void validate(const MixedSample& s);

}  // namespace pqgen

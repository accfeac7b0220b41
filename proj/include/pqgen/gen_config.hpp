#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pqgen {

/// Thresholds and caps for proposal selection, attribute assignment,
/// relation inference and sampling. Separation thresholds are fractions of
/// the image width/height so decisions do not depend on resolution.
struct GenConfig {
  int top_n = 3;
  int max_m = 6;
  double tiny_area_frac = 0.05;
  double attr_conf_min = 0.5;
  double garment_iou_min = 0.15;
  double horiz_sep_min = 0.1;
  double vert_sep_min = 0.1;
  double depth_ratio_min = 3.0;
  std::vector<std::string> person_classes = {"person", "man", "woman", "boy", "girl",
                                             "child", "kid", "lady", "guy", "player"};
  std::vector<std::string> garment_classes = {"shirt", "jacket", "hat",  "dress", "pants",
                                              "shorts", "coat",  "tie", "helmet"};
  std::uint64_t seed = 0;

  friend bool operator==(const GenConfig&, const GenConfig&) = default;
};

/// Throws ConfigError naming the first out-of-range field.
void validate(const GenConfig& cfg);

struct DatasetPreset {
  std::string_view name;
  int top_n;
  int max_m;
  std::string_view prompt;
};

/// Per-dataset top-N / max-M settings and their bound prompt template.
inline constexpr DatasetPreset kPresets[] = {
    {"refcoco", 3, 6, "find_region"},  {"refcoco+", 3, 12, "none"}, {"refcocog", 2, 4, "none"},
    {"referit", 6, 15, "which_region"}, {"flickr30k", 7, 28, "none"},
};

std::optional<DatasetPreset> find_preset(std::string_view name);

}  // namespace pqgen

#pragma once
// Synthetic detector output for pipeline and acceptance tests.

#include <random>
#include <string>
#include <vector>

#include "pqgen/ingest.hpp"

namespace synthetic {

inline pqgen::DetectionRecord random_image(std::mt19937_64& rng, const std::string& id) {
  static const char* kNouns[] = {"person", "man", "car", "dog", "building", "tree", "shirt", "hat"};
  static const char* kAttrs[] = {"red", "tall", "wooden", "standing", "white", "small", "walking"};
  std::uniform_int_distribution<int> dim(200, 800), count(0, 10), noun(0, 7), attr(0, 6), nattr(0, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  pqgen::DetectionRecord rec;
  rec.image_id = id;
  rec.image_width = dim(rng);
  rec.image_height = dim(rng);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    pqgen::DetectedObject o;
    o.noun = kNouns[noun(rng)];
    o.det_confidence = std::round(u(rng) * 20) / 20;  // coarse, so ties happen
    const double w = rec.image_width, h = rec.image_height;
    const double bw = (0.05 + 0.6 * u(rng)) * w, bh = (0.05 + 0.6 * u(rng)) * h;
    const double x1 = u(rng) * (w - bw), y1 = u(rng) * (h - bh);
    o.box = {std::floor(x1), std::floor(y1), std::floor(x1 + bw), std::floor(y1 + bh)};
    for (int k = nattr(rng); k > 0; --k) o.attributes.push_back({kAttrs[attr(rng)], std::round(u(rng) * 100) / 100});
    rec.objects.push_back(std::move(o));
  }
  return rec;
}

inline std::vector<pqgen::DetectionRecord> random_images(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::vector<pqgen::DetectionRecord> out;
  for (int i = 0; i < n; ++i) {
    // Ids deliberately out of lexicographic order.
    out.push_back(random_image(rng, "img" + std::to_string((i * 7919) % (n * 3))));
  }
  return out;
}

}  // namespace synthetic

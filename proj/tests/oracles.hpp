#pragma once
// Independent reference implementations used only by tests.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pqgen/geometry.hpp"
#include "pqgen/labeling.hpp"
#include "pqgen/vocabulary.hpp"

namespace oracle {

/// Area of an integer box by counting the unit cells it covers.
inline long grid_area(const pqgen::BasicBox<int>& b) {
  long n = 0;
  for (int y = b.y1; y < b.y2; ++y)
    for (int x = b.x1; x < b.x2; ++x) ++n;
  return n;
}

/// IoU of two integer boxes by counting unit cells in both / either.
inline double grid_iou(const pqgen::BasicBox<int>& a, const pqgen::BasicBox<int>& b) {
  const int lo_x = std::min(a.x1, b.x1), hi_x = std::max(a.x2, b.x2);
  const int lo_y = std::min(a.y1, b.y1), hi_y = std::max(a.y2, b.y2);
  long both = 0, either = 0;
  for (int y = lo_y; y < hi_y; ++y) {
    for (int x = lo_x; x < hi_x; ++x) {
      const bool in_a = x >= a.x1 && x < a.x2 && y >= a.y1 && y < a.y2;
      const bool in_b = x >= b.x1 && x < b.x2 && y >= b.y1 && y < b.y2;
      both += in_a && in_b;
      either += in_a || in_b;
    }
  }
  return static_cast<double>(both) / static_cast<double>(either);
}

inline pqgen::BasicBox<int> random_int_box(std::mt19937_64& rng, int grid) {
  std::uniform_int_distribution<int> d(0, grid);
  for (;;) {
    int x1 = d(rng), x2 = d(rng), y1 = d(rng), y2 = d(rng);
    if (x1 == x2 || y1 == y2) continue;
    return {std::min(x1, x2), std::min(y1, y2), std::max(x1, x2), std::max(y1, y2)};
  }
}

inline pqgen::Box to_double(const pqgen::BasicBox<int>& b) {
  return {double(b.x1), double(b.y1), double(b.x2), double(b.y2)};
}

struct Member {
  int rank;
  double cx, cy, area;
};

/// True iff `i` precedes `j` under "smaller value, ties to better rank".
inline bool before(double vi, int ri, double vj, int rj) {
  return vi < vj || (vi == vj && ri < rj);
}

/// Relation labels for one same-class group, by literal pairwise rule
/// evaluation. Result is indexed like `g`; each entry sorted in enum order.
inline std::vector<std::vector<pqgen::Relation>> relations(const std::vector<Member>& g,
                                                           double sep_x, double sep_y,
                                                           double depth_ratio) {
  using pqgen::Relation;
  const std::size_t n = g.size();
  std::vector<std::vector<Relation>> out(n);
  if (n < 2) return out;

  auto axis = [&](auto coord, double sep, Relation low, Relation high, bool middle) {
    // Spread: largest pairwise difference.
    double spread = 0, lo = coord(g[0]), hi = coord(g[0]);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) spread = std::max(spread, coord(g[b]) - coord(g[a]));
    for (const auto& m : g) lo = std::min(lo, coord(m)), hi = std::max(hi, coord(m));
    if (!(spread >= sep)) return;
    std::vector<bool> extreme(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      bool is_low = true, is_high = true;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (!before(coord(g[i]), g[i].rank, coord(g[j]), g[j].rank)) is_low = false;
        // "largest value, ties to better rank"
        if (!before(-coord(g[i]), g[i].rank, -coord(g[j]), g[j].rank)) is_high = false;
      }
      if (is_low) out[i].push_back(low), extreme[i] = true;
      if (is_high) out[i].push_back(high), extreme[i] = true;
    }
    if (!middle || n < 3) return;
    const double mid = (lo + hi) / 2;
    for (std::size_t i = 0; i < n; ++i)
      if (!extreme[i] && std::abs(coord(g[i]) - mid) <= sep / 2) out[i].push_back(Relation::middle);
  };
  axis([](const Member& m) { return m.cx; }, sep_x, Relation::left, Relation::right, true);
  axis([](const Member& m) { return m.cy; }, sep_y, Relation::top, Relation::bottom, false);

  double max_ratio = 0;
  for (const auto& a : g)
    for (const auto& b : g) max_ratio = std::max(max_ratio, a.area / b.area);
  if (max_ratio >= depth_ratio) {
    for (std::size_t i = 0; i < n; ++i) {
      bool largest = true, smallest = true;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (!before(-g[i].area, g[i].rank, -g[j].area, g[j].rank)) largest = false;
        if (!before(g[i].area, g[i].rank, g[j].area, g[j].rank)) smallest = false;
      }
      if (largest) out[i].push_back(Relation::front);
      if (smallest) out[i].push_back(Relation::behind);
    }
  }
  for (auto& v : out) std::sort(v.begin(), v.end());
  return out;
}

/// Number of (template, attr, rela) combinations for a proposal with the
/// given options, by enumerating every template against every choice of
/// "no attr / attr k" x "no rela / rela k" and keeping exact slot matches.
inline std::size_t brute_force_candidates(std::size_t attrs, std::size_t relas) {
  static const char* const kTemplates[] = {"N",   "NA",  "AN",  "NR",  "RN", "NAR",
                                           "NRA", "ANR", "ARN", "RNA", "RAN"};
  std::size_t count = 0;
  for (const std::string t : kTemplates) {
    const bool need_a = t.find('A') != std::string::npos;
    const bool need_r = t.find('R') != std::string::npos;
    for (std::size_t a = 0; a <= attrs; ++a)      // 0 = none
      for (std::size_t r = 0; r <= relas; ++r)    // 0 = none
        if ((a > 0) == need_a && (r > 0) == need_r) ++count;
  }
  return count;
}

}  // namespace oracle

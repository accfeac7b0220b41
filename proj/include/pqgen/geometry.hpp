#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace pqgen {

/// Axis-aligned box in image coordinates (origin top-left, y down), stored
/// as corners. Coordinates are continuous: a box [x1,x2) x [y1,y2) has
/// area (x2-x1)(y2-y1), no +1 pixel convention.
template <typename Scalar>
struct BasicBox {
  Scalar x1{}, y1{}, x2{}, y2{};

  Scalar width() const { return x2 - x1; }
  Scalar height() const { return y2 - y1; }

  friend bool operator==(const BasicBox&, const BasicBox&) = default;
};

using Box = BasicBox<double>;

template <typename Scalar>
struct BoxMetrics {
  Scalar area;
  Scalar center_x;
  Scalar center_y;
};

template <typename Scalar>
bool is_finite_box(const BasicBox<Scalar>& b) {
  return std::isfinite(static_cast<double>(b.x1)) && std::isfinite(static_cast<double>(b.y1)) &&
         std::isfinite(static_cast<double>(b.x2)) && std::isfinite(static_cast<double>(b.y2));
}

/// Finite, non-negative, strictly positive width and height.
template <typename Scalar>
bool is_valid(const BasicBox<Scalar>& b) {
  return is_finite_box(b) && b.x1 >= 0 && b.y1 >= 0 && b.x1 < b.x2 && b.y1 < b.y2;
}

/// Empty string when valid, otherwise the first violated invariant.
template <typename Scalar>
std::string box_violation(const BasicBox<Scalar>& b) {
  if (!is_finite_box(b)) return "coordinates must be finite";
  if (b.x1 < 0 || b.y1 < 0) return "coordinates must be >= 0";
  if (!(b.x1 < b.x2)) return "x1 must be < x2";
  if (!(b.y1 < b.y2)) return "y1 must be < y2";
  return {};
}

template <typename Scalar>
Scalar area(const BasicBox<Scalar>& b) {
  return b.width() * b.height();
}

template <typename Scalar>
std::pair<double, double> center(const BasicBox<Scalar>& b) {
  return {(static_cast<double>(b.x1) + static_cast<double>(b.x2)) / 2.0,
          (static_cast<double>(b.y1) + static_cast<double>(b.y2)) / 2.0};
}

template <typename Scalar>
BoxMetrics<double> metrics(const BasicBox<Scalar>& b) {
  const auto [cx, cy] = center(b);
  return {static_cast<double>(area(b)), cx, cy};
}

/// Area of a ∩ b; zero for disjoint or tangent boxes.
template <typename Scalar>
Scalar intersection_area(const BasicBox<Scalar>& a, const BasicBox<Scalar>& b) {
  const Scalar w = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const Scalar h = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (w <= 0 || h <= 0) return Scalar{0};
  return w * h;
}

/// Intersection over union (Jaccard overlap) in [0,1].
template <typename Scalar>
double iou(const BasicBox<Scalar>& a, const BasicBox<Scalar>& b) {
  const double inter = static_cast<double>(intersection_area(a, b));
  if (inter <= 0.0) return 0.0;
  const double uni = static_cast<double>(area(a)) + static_cast<double>(area(b)) - inter;
  return inter / uni;
}

/// Fraction of `inner` covered by `outer`.
template <typename Scalar>
double containment(const BasicBox<Scalar>& inner, const BasicBox<Scalar>& outer) {
  return static_cast<double>(intersection_area(inner, outer)) / static_cast<double>(area(inner));
}

template <typename Scalar>
BasicBox<Scalar> scaled(const BasicBox<Scalar>& b, Scalar s) {
  return {b.x1 * s, b.y1 * s, b.x2 * s, b.y2 * s};
}

}  // namespace pqgen

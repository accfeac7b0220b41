#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pqgen/geometry.hpp"

using pqgen::BasicBox;
using pqgen::Box;

TEST_CASE("area and center") {
  const Box a{0, 0, 10, 20};
  CHECK(pqgen::area(a) == 200.0);
  CHECK(pqgen::center(a) == std::pair{5.0, 10.0});

  const Box b{3, 3, 4, 4};
  CHECK(pqgen::area(b) == 1.0);
  CHECK(pqgen::center(b) == std::pair{3.5, 3.5});

  const auto m = pqgen::metrics(a);
  CHECK(m.area == 200.0);
  CHECK(m.center_x == 5.0);
  CHECK(m.center_y == 10.0);
}

TEST_CASE("area matches grid counting on random integer boxes") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto b = oracle::random_int_box(rng, 40);
    CHECK(pqgen::area(b) == oracle::grid_area(b));
    CHECK(pqgen::area(oracle::to_double(b)) == static_cast<double>(oracle::grid_area(b)));
  }
}

TEST_CASE("iou examples") {
  const Box a{0, 0, 10, 10};
  CHECK(pqgen::iou(a, a) == 1.0);
  CHECK(pqgen::iou(a, Box{20, 20, 30, 30}) == 0.0);

  // Grid oracle: 25 shared cells out of 175.
  const Box b{5, 5, 15, 15};
  CHECK(oracle::grid_iou({0, 0, 10, 10}, {5, 5, 15, 15}) == 25.0 / 175.0);
  CHECK(pqgen::iou(a, b) == 25.0 / 175.0);
  CHECK(pqgen::iou(a, b) == doctest::Approx(0.142857).epsilon(1e-6));
}

TEST_CASE("tangent boxes have zero iou") {
  CHECK(pqgen::iou(Box{0, 0, 10, 10}, Box{10, 0, 20, 10}) == 0.0);
  CHECK(pqgen::iou(Box{0, 0, 10, 10}, Box{0, 10, 10, 20}) == 0.0);
  CHECK(pqgen::intersection_area(Box{0, 0, 10, 10}, Box{10, 10, 20, 20}) == 0.0);
}

TEST_CASE("containment") {
  CHECK(pqgen::containment(Box{2, 2, 4, 4}, Box{0, 0, 10, 10}) == 1.0);
  CHECK(pqgen::containment(Box{0, 0, 10, 10}, Box{5, 0, 20, 10}) == 0.5);
}

TEST_CASE("validity") {
  CHECK(pqgen::is_valid(Box{0, 0, 1, 1}));
  CHECK_FALSE(pqgen::is_valid(Box{1, 0, 1, 1}));
  CHECK_FALSE(pqgen::is_valid(Box{2, 0, 1, 1}));
  CHECK_FALSE(pqgen::is_valid(Box{-1, 0, 1, 1}));
  CHECK_FALSE(pqgen::is_valid(Box{0, 0, std::nan(""), 1}));
  CHECK(pqgen::box_violation(Box{2, 0, 1, 1}) == "x1 must be < x2");
}

TEST_CASE("iou properties over random boxes") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 500.0);
  auto random_box = [&] {
    double x1 = u(rng), x2 = u(rng), y1 = u(rng), y2 = u(rng);
    if (x1 > x2) std::swap(x1, x2);
    if (y1 > y2) std::swap(y1, y2);
    return Box{x1, y1, x2 + 1e-3, y2 + 1e-3};
  };
  for (int i = 0; i < 2000; ++i) {
    const Box a = random_box(), b = random_box();
    const double v = pqgen::iou(a, b);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(v == pqgen::iou(b, a));
    CHECK(pqgen::iou(a, a) == 1.0);
    if (a != b) CHECK(v < 1.0);

    // Shrinking b inside a: iou bounded by the containment ratio.
    const Box inner{a.x1 + a.width() * 0.25, a.y1 + a.height() * 0.25,
                    a.x2 - a.width() * 0.25, a.y2 - a.height() * 0.25};
    CHECK(pqgen::iou(a, inner) <= pqgen::area(inner) / pqgen::area(a) + 1e-12);
  }
}

TEST_CASE("iou equals grid oracle on integer boxes") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const auto a = oracle::random_int_box(rng, 32), b = oracle::random_int_box(rng, 32);
    CHECK(pqgen::iou(a, b) == oracle::grid_iou(a, b));
    CHECK(pqgen::iou(oracle::to_double(a), oracle::to_double(b)) == oracle::grid_iou(a, b));
  }
}

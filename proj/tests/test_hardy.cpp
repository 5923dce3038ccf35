#include "doctest.h"

#include <cmath>

#include "qnet/boxes.hpp"
#include "qnet/hardy.hpp"

using namespace qnet;

namespace {

RVec two_level(double l0) {
  RVec s(2);
  s << l0, 1.0 - l0;
  return s;
}

}  // namespace

TEST_CASE("hardy box kills the three paradox events and keeps the closed-form survivor") {
  const double lambdas[] = {0.10, 0.20, 0.30, 0.35, 0.45};
  const double alphas[] = {0.30, 0.60, 0.90, 1.20, 1.50};
  for (double l0 : lambdas)
    for (double alpha : alphas) {
      const BoxN b = hardy_box(two_level(l0), alpha, 0.7);
      CHECK(b.valid(1e-9));
      CHECK(b.nonsignalling(1e-9));
      CHECK(std::abs(b.at({0, 1}, {0, 1})) < 1e-10);
      CHECK(std::abs(b.at({1, 0}, {1, 0})) < 1e-10);
      CHECK(std::abs(b.at({0, 0}, {1, 1})) < 1e-10);
      const double p = hardy_p0000(l0, 1.0 - l0, alpha);
      CHECK(p > 0.0);
      CHECK(std::abs(b.at({0, 0}, {0, 0}) - p) < 1e-9);
    }
}

TEST_CASE("survivor probability ignores the free phase") {
  const double base = hardy_box(two_level(0.3), 0.8, 0.0).at({0, 0}, {0, 0});
  for (double delta : {0.4, 1.3, 2.9, -1.1}) {
    const BoxN b = hardy_box(two_level(0.3), 0.8, delta);
    CHECK(b.at({0, 0}, {0, 0}) == doctest::Approx(base).epsilon(1e-12));
    CHECK(std::abs(b.at({0, 1}, {0, 1})) < 1e-10);
  }
}

TEST_CASE("three-level pair with absorbed extra mass keeps the paradox") {
  // closed form takes the raw leading coefficients, no renormalization
  RVec s(3);
  s << 0.5, 0.3, 0.2;
  for (double alpha : {0.4, 0.9, 1.4}) {
    const BoxN b = hardy_box(s, alpha, 0.25);
    CHECK(b.valid(1e-9));
    CHECK(b.nonsignalling(1e-9));
    CHECK(std::abs(b.at({0, 1}, {0, 1})) < 1e-10);
    CHECK(std::abs(b.at({1, 0}, {1, 0})) < 1e-10);
    CHECK(std::abs(b.at({0, 0}, {1, 1})) < 1e-10);
    const double p = hardy_p0000(0.5, 0.3, alpha);
    CHECK(std::abs(b.at({0, 0}, {0, 0}) - p) < 1e-9);
  }
}

TEST_CASE("degenerate parameters are rejected") {
  CHECK_THROWS_AS(hardy_p0000(0.5, 0.5, 0.8), std::invalid_argument);
  CHECK_THROWS_AS(hardy_p0000(0.0, 1.0, 0.8), std::invalid_argument);
  CHECK_THROWS_AS(hardy_p0000(0.3, 0.7, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(hardy_p0000(0.3, 0.7, 2.0), std::invalid_argument);  // past pi/2
  CHECK_THROWS_AS(hardy_povms(0.3, 0.7, 0.8, 0.0, 1), std::invalid_argument);
  RVec bad(2);
  bad << 0.5, 0.6;
  CHECK_THROWS_AS(hardy_box(bad, 0.8, 0.0), std::invalid_argument);
  RVec one(1);
  one << 1.0;
  CHECK_THROWS_AS(hardy_box(one, 0.8, 0.0), std::invalid_argument);
}

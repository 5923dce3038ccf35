#include "doctest.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "qnet/bell.hpp"
#include "qnet/kv.hpp"

using namespace qnet;

namespace {

// Independent rebuild of the coefficient table straight from the referee's
// sampling procedure: draw every string u and noise z, look up which coset
// cell and which in-cell positions that lands on, and credit the draw's
// probability there (times v, the cell size, matching the game's scaling).
std::map<std::tuple<int, int, int, int>, double> referee_table(const KVGame& g) {
  std::map<std::tuple<int, int, int, int>, double> t;
  const uint32_t full = 1u << g.v;
  for (uint32_t u = 0; u < full; ++u)
    for (uint32_t z = 0; z < full; ++z) {
      const int x = g.coset_of[u];
      const int y = g.coset_of[u ^ z];
      const auto& cx = g.coset_elems[x];
      const auto& cy = g.coset_elems[y];
      const int a = static_cast<int>(std::lower_bound(cx.begin(), cx.end(), u) - cx.begin());
      const int b =
          static_cast<int>(std::lower_bound(cy.begin(), cy.end(), u ^ z) - cy.begin());
      const int w = std::popcount(z);
      const double weight = static_cast<double>(g.v) / std::pow(2.0, g.v) *
                            std::pow(g.eta, w) * std::pow(1 - g.eta, g.v - w);
      t[{x, y, a, b}] += weight;
    }
  return t;
}

}  // namespace

TEST_CASE("coset structure partitions the strings") {
  for (int v : {2, 4, 8}) {
    const KVGame g = kv_game(v, 0.25);
    CHECK(g.n_cosets() == (1 << v) / v);
    std::vector<int> seen(1u << v, 0);
    for (const auto& cell : g.coset_elems) {
      CHECK(static_cast<int>(cell.size()) == v);
      for (uint32_t e : cell) seen[e]++;
    }
    for (int c : seen) CHECK(c == 1);
    // cells really are cosets: xor of two members lands in the code
    for (const auto& cell : g.coset_elems)
      for (uint32_t e : cell)
        CHECK(std::binary_search(g.subgroup.begin(), g.subgroup.end(), e ^ cell[0]));
  }
}

TEST_CASE("coefficients agree exactly with the referee enumeration") {
  for (int v : {2, 4})
    for (double eta : {0.1, 0.25, 0.4}) {
      const KVGame g = kv_game(v, eta);
      const auto oracle = referee_table(g);
      const int q = g.n_cosets();
      for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y)
          for (int a = 0; a < v; ++a)
            for (int b = 0; b < v; ++b) {
              const auto it = oracle.find({x, y, a, b});
              REQUIRE(it != oracle.end());  // the draw map is onto
              CHECK(g.coeff(x, y, a, b) == it->second);
            }
    }
}

TEST_CASE("coefficients sum to v, the referee's total probability times cell size") {
  for (int v : {2, 4, 8})
    for (double eta : {0.0, 0.1, 0.4}) {
      const BellFunctional f = kv_functional(kv_game(v, eta));
      double total = 0;
      for (double c : f.coeff) total += c;
      CHECK(total == doctest::Approx(static_cast<double>(v)).epsilon(1e-12));
    }
}

TEST_CASE("local maxima stay under the published ceiling") {
  for (int v : {2, 4})
    for (double eta : {0.1, 0.25, 0.4}) {
      const KVGame g = kv_game(v, eta);
      const KvLocalMax m = kv_local_max(g);
      CHECK(m.exact);
      CHECK(m.value <= kv_local_bound(v, eta) + 1e-12);
      // returned strategies really are coset members scoring that value
      double check = 0;
      for (int x = 0; x < g.n_cosets(); ++x)
        for (int y = 0; y < g.n_cosets(); ++y) {
          CHECK(g.coset_of[m.alice[x]] == x);
          CHECK(g.coset_of[m.bob[y]] == y);
          const auto& cx = g.coset_elems[x];
          const auto& cy = g.coset_elems[y];
          const int a = static_cast<int>(
              std::lower_bound(cx.begin(), cx.end(), m.alice[x]) - cx.begin());
          const int b =
              static_cast<int>(std::lower_bound(cy.begin(), cy.end(), m.bob[y]) - cy.begin());
          check += g.coeff(x, y, a, b);
        }
      CHECK(check == doctest::Approx(m.value).epsilon(1e-12));
    }
}

TEST_CASE("smallest game brute force equals the reported maximum") {
  const KVGame g = kv_game(2, 0.3);
  const int q = g.n_cosets();
  REQUIRE(q == 2);
  double best = -1;
  for (int a0 = 0; a0 < 2; ++a0)
    for (int a1 = 0; a1 < 2; ++a1)
      for (int b0 = 0; b0 < 2; ++b0)
        for (int b1 = 0; b1 < 2; ++b1) {
          const int ai[2] = {a0, a1}, bi[2] = {b0, b1};
          double val = 0;
          for (int x = 0; x < q; ++x)
            for (int y = 0; y < q; ++y) val += g.coeff(x, y, ai[x], bi[y]);
          best = std::max(best, val);
        }
  CHECK(kv_local_max(g).value == doctest::Approx(best).epsilon(1e-13));
  // and the generic maximizer agrees with the specialised one
  const StrategyMax sm = deterministic_max(kv_functional(g), PartitionMode::fully_local);
  CHECK(sm.value == doctest::Approx(best).epsilon(1e-13));
}

TEST_CASE("generic maximizer agrees at v = 4 as well") {
  const KVGame g = kv_game(4, 0.25);
  const double specialised = kv_local_max(g).value;
  const double generic = deterministic_max(kv_functional(g), PartitionMode::fully_local).value;
  CHECK(specialised == doctest::Approx(generic).epsilon(1e-12));
}

TEST_CASE("normalization is at most one and multiplies along the star") {
  for (int v : {2, 4})
    for (double eta : {0.0, 0.25, 0.4}) {
      const KVGame g = kv_game(v, eta);
      const double base = normalization_sum(kv_functional(g));
      CHECK(base <= 1.0 + 1e-12);
      if (v == 2) {
        const double star2 = normalization_sum(star_kv(g, 2));
        const double star3 = normalization_sum(star_kv(g, 3));
        CHECK(star2 == doctest::Approx(base * base).epsilon(1e-12));
        CHECK(star3 == doctest::Approx(base * base * base).epsilon(1e-12));
      }
    }
  // zero noise saturates the normalization exactly
  CHECK(normalization_sum(kv_functional(kv_game(4, 0.0))) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("star layout packs alice digits first edge slowest") {
  const KVGame g = kv_game(2, 0.3);
  const BellFunctional f = star_kv(g, 2);
  REQUIRE(f.shape.inputs == Dims{4, 2, 2});
  REQUIRE(f.shape.outputs == Dims{4, 2, 2});
  const int q = g.n_cosets();
  for (int x0 = 0; x0 < q; ++x0)
    for (int x1 = 0; x1 < q; ++x1)
      for (int y0 = 0; y0 < q; ++y0)
        for (int y1 = 0; y1 < q; ++y1)
          for (int a0 = 0; a0 < 2; ++a0)
            for (int a1 = 0; a1 < 2; ++a1)
              for (int b0 = 0; b0 < 2; ++b0)
                for (int b1 = 0; b1 < 2; ++b1) {
                  const double expect =
                      g.coeff(x0, y0, a0, b0) * g.coeff(x1, y1, a1, b1);
                  CHECK(f.at({a0 * 2 + a1, b0, b1}, {x0 * q + x1, y0, y1}) ==
                        doctest::Approx(expect).epsilon(1e-14));
                }
}

TEST_CASE("activation ratio carries the symbolic prefix honestly") {
  const ActivationRatio r = star_activation_ratio(0.8, 4, 10, 3);
  CHECK(r.symbolic_prefix == "D^3/C");
  const double expect = std::pow(0.8 * 4, 10.0) /
                        std::pow(100.0 * std::log(4.0) * std::log(4.0), 3.0);
  CHECK(r.numeric_factor == doctest::Approx(expect).epsilon(1e-12));
  CHECK(r.diverges);  // F d = 3.2 > 1

  const ActivationRatio flat = star_activation_ratio(0.2, 4, 10, 3);
  CHECK_FALSE(flat.diverges);  // F d = 0.8

  CHECK_THROWS_AS(star_activation_ratio(0.0, 4, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(star_activation_ratio(1.2, 4, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(star_activation_ratio(0.5, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("degenerate game parameters are rejected") {
  CHECK_THROWS_AS(kv_game(3, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(kv_game(1, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(kv_game(32, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(kv_game(4, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(kv_game(4, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(star_kv(kv_game(2, 0.2), 0), std::invalid_argument);
}

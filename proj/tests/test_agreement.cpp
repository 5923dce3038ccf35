#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "qnet/agreement.hpp"
#include "qnet/bell.hpp"
#include "qnet/epr2.hpp"
#include "support.hpp"

using namespace qnet;

namespace {

BoxShape scene() {
  BoxShape s;
  s.n_parties = 2;
  s.outputs = {2, 2};
  s.inputs = {2, 2};
  return s;
}

// local box whose x=1 and y=1 answers always agree: mix deterministic
// strategies that share the second-input response bit
BoxN random_correlated_local(std::mt19937_64& rng) {
  BoxN b = uniform_box(scene());
  for (double& t : b.table) t = 0.0;
  const int k = 2 + static_cast<int>(rng() % 4);
  std::vector<double> w(k);
  double tot = 0;
  for (double& x : w) tot += x = qtest::uniform(rng) + 1e-3;
  for (int i = 0; i < k; ++i) {
    const int a0 = static_cast<int>(rng() % 2), b0 = static_cast<int>(rng() % 2);
    const int shared = static_cast<int>(rng() % 2);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        b.at({x == 0 ? a0 : shared, y == 0 ? b0 : shared}, {x, y}) += w[i] / tot;
  }
  return b;
}

}  // namespace

TEST_CASE("derived fields match direct table arithmetic") {
  const BoxN b = nsccd_box(0.20, 0.10, 0.15, 0.05);
  REQUIRE(b.valid(1e-12));
  REQUIRE(b.nonsignalling(1e-9));
  const AgreementBox ab = AgreementBox::from_box(b);
  // q_A = P(b=1 | a=0, x=0, y=1), row xy=01
  const double pa0 = b.at({0, 0}, {0, 1}) + b.at({0, 1}, {0, 1});
  CHECK(ab.q_defined);
  CHECK(ab.q_A == doctest::Approx(b.at({0, 1}, {0, 1}) / pa0).epsilon(1e-12));
  const double pb0 = b.at({0, 0}, {1, 0}) + b.at({1, 0}, {1, 0});
  CHECK(ab.q_B == doctest::Approx(b.at({1, 0}, {1, 0}) / pb0).epsilon(1e-12));
  // this family is perfectly correlated at x=y=1
  CHECK(ab.perfectly_correlated);
  CHECK(b.at({0, 1}, {1, 1}) == 0.0);
  CHECK(b.at({1, 0}, {1, 1}) == 0.0);
}

TEST_CASE("certainty sets stabilize after at most one step on binary scenes") {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 50; ++rep) {
    // a dash of uniform noise keeps every conditioning event populated
    BoxN b = random_correlated_local(rng);
    const BoxN u = uniform_box(b.shape);
    for (long i = 0; i < b.shape.size(); ++i)
      b.table[i] = 0.85 * b.table[i] + 0.15 * u.table[i];
    const AgreementBox ab = AgreementBox::from_box(b);
    const CertaintySets cs = certainty_sets(ab);
    CHECK(cs.fixpoint_index <= 1);
    REQUIRE(!cs.alpha.empty());
    // monotone shrinking
    for (size_t i = 1; i < cs.alpha.size(); ++i) {
      CHECK(cs.alpha[i].size() <= cs.alpha[i - 1].size());
      CHECK(cs.beta[i].size() <= cs.beta[i - 1].size());
    }
  }
}

TEST_CASE("disagreement region of the nonsignalling family is exactly as advertised") {
  const double grid[] = {0.0, 0.0625, 0.125, 0.1875, 0.25, 0.3125, 0.375, 0.4375, 0.5};
  int live = 0, checked = 0;
  for (double r : grid)
    for (double s : grid)
      for (double t : grid)
        for (double u : grid) {
          if (!nsccd_params_valid(r, s, t, u)) continue;
          const BoxN b = nsccd_box(r, s, t, u);
          CHECK(b.valid(1e-12));
          CHECK(b.nonsignalling(1e-9));
          const AgreementBox ab = AgreementBox::from_box(b);
          const Verdict v = common_certainty_of_disagreement(ab);
          const bool expect = r > 0.0 && (s - u) != (r - t);  // exact dyadic grid
          CHECK((v.applicable && v.value) == expect);
          ++checked;
          if (expect) ++live;
        }
  CHECK(checked > 100);  // the family is not allowed to shrivel
  CHECK(live > 20);
}

TEST_CASE("singular disagreement region is exactly as advertised") {
  const double grid[] = {0.0, 0.125, 0.25, 0.5, 0.75, 1.0};
  int live = 0, checked = 0;
  for (double r : grid)
    for (double s : grid)
      for (double t : grid)
        for (double u : grid) {
          if (!nssd_params_valid(r, s, t, u)) continue;
          const BoxN b = nssd_box(r, s, t, u);
          CHECK(b.valid(1e-12));
          CHECK(b.nonsignalling(1e-9));
          const AgreementBox ab = AgreementBox::from_box(b);
          const Verdict v = singular_disagreement(ab);
          const bool expect = s > 0.0 && (s + t) != 0.0 && (u + t) != 1.0;
          CHECK((v.applicable && v.value) == expect);
          ++checked;
          if (expect) ++live;
        }
  CHECK(checked > 50);
  CHECK(live > 10);
}

TEST_CASE("local boxes with agreeing answers never reach certain disagreement") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 300; ++rep) {
    const BoxN b = random_correlated_local(rng);
    REQUIRE(b.valid(1e-9));
    const AgreementBox ab = AgreementBox::from_box(b);
    CHECK(ab.perfectly_correlated);
    const Verdict ccd = common_certainty_of_disagreement(ab);
    const Verdict sd = singular_disagreement(ab);
    CHECK_FALSE((ccd.applicable && ccd.value));
    CHECK_FALSE((sd.applicable && sd.value));
  }
}

TEST_CASE("the correlated pr box is the extreme case") {
  const BoxN pr = pr_box(PrConvention::correlated);
  REQUIRE(pr.valid(1e-12));
  REQUIRE(pr.nonsignalling(1e-12));
  const AgreementBox ab = AgreementBox::from_box(pr);
  CHECK(ab.perfectly_correlated);
  CHECK(ab.q_defined);
  CHECK(ab.q_A == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ab.q_B == doctest::Approx(0.0).epsilon(1e-12));

  const Verdict ccd = common_certainty_of_disagreement(ab);
  CHECK(ccd.applicable);
  CHECK(ccd.value);
  const Verdict sd = singular_disagreement(ab);
  CHECK(sd.applicable);
  CHECK(sd.value);
  const Verdict ts = tsirelson_reject(ab);
  CHECK(ts.applicable);
  CHECK(ts.value);

  // no local part at all, in either labeling convention
  CHECK(std::abs(epr2_local_weight(pr).local_weight) < 1e-9);
}

TEST_CASE("the xor-game pr box maxes out the seed inequality") {
  const BoxN pr = pr_box(PrConvention::xor_game);
  CHECK(chsh_equiv().evaluate(pr) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("tsirelson rejection needs perfect correlations and unequal cross terms") {
  // correlated pr: rejected (checked above). uniform box: nothing to reject.
  const AgreementBox u = AgreementBox::from_box(uniform_box(scene()));
  CHECK_FALSE(tsirelson_reject(u).value);
  // a deterministic all-equal box is perfectly correlated but has equal cross
  // correlations, so the contradiction never fires
  const BoxN det = strategy_box(scene(), {{0}, {1}}, {{0, 0}, {0, 0}});
  CHECK_FALSE(tsirelson_reject(AgreementBox::from_box(det)).value);
}

TEST_CASE("quantum void pattern flags the singular family, not noise") {
  const BoxN sd = nssd_box(0.6, 0.1, 0.3, 0.2);
  REQUIRE(sd.valid(1e-12));
  CHECK(quantum_void_pattern(AgreementBox::from_box(sd)).value);
  CHECK_FALSE(quantum_void_pattern(AgreementBox::from_box(uniform_box(scene()))).value);
}

TEST_CASE("instruction-set models reproduce nonsignalling boxes and refuse signalling ones") {
  std::mt19937_64 rng(6);
  const BoxN pr = pr_box(PrConvention::xor_game);
  for (int rep = 0; rep < 200; ++rep) {
    // random local mixture, optionally tilted towards pr: stays nonsignalling
    BoxN b = random_correlated_local(rng);
    const double lam = qtest::uniform(rng);
    for (long i = 0; i < b.shape.size(); ++i)
      b.table[i] = (1 - lam) * b.table[i] + lam * pr.table[i];
    const OntModel2x2 m = ont_model_from_box(b);
    REQUIRE(m.solved);
    CHECK(m.residual < 1e-10);
    double tot = 0;
    for (double q : m.quasi_prob) tot += q;
    CHECK(tot == doctest::Approx(1.0).epsilon(1e-9));
    const BoxN back = box_from_ont_model(m.quasi_prob);
    for (long i = 0; i < b.shape.size(); ++i) CHECK(std::abs(back.table[i] - b.table[i]) < 1e-8);
    // deterministic output: solving twice gives the same vector bit for bit
    const OntModel2x2 m2 = ont_model_from_box(b);
    for (int i = 0; i < 16; ++i) CHECK(m.quasi_prob[i] == m2.quasi_prob[i]);
  }
  for (int rep = 0; rep < 200; ++rep) {
    BoxN b = random_correlated_local(rng);
    // push probability between Bob outcomes on one Alice input only
    const double eps = 0.02 + 0.1 * qtest::uniform(rng);
    const double moved = std::min(eps, b.at({0, 1}, {0, 0}));
    if (moved < 1e-3) continue;
    b.at({0, 0}, {0, 0}) += moved;
    b.at({0, 1}, {0, 0}) -= moved;
    REQUIRE(b.valid(1e-9));
    REQUIRE(!b.nonsignalling(1e-9));
    CHECK_FALSE(ont_model_from_box(b).solved);
  }
}

TEST_CASE("a pure instruction set is a deterministic box") {
  std::vector<double> q(16, 0.0);
  // a0=1, a1=0, b0=1, b1=1, packed with a0 most significant
  q[(1 << 3) | (0 << 2) | (1 << 1) | 1] = 1.0;
  const BoxN b = box_from_ont_model(q);
  CHECK(b.at({1, 1}, {0, 0}) == 1.0);
  CHECK(b.at({1, 1}, {0, 1}) == 1.0);
  CHECK(b.at({0, 1}, {1, 0}) == 1.0);
  CHECK(b.at({0, 1}, {1, 1}) == 1.0);
  CHECK(b.valid(1e-12));
  CHECK(b.nonsignalling(1e-12));
}

TEST_CASE("output grouping reduces larger scenes faithfully") {
  // identity on an already-binary box
  const BoxN base = nsccd_box(0.25, 0.125, 0.125, 0.0);
  const BoxN same = reduce_box(base, {0}, {0});
  for (long i = 0; i < base.shape.size(); ++i)
    CHECK(same.table[i] == doctest::Approx(base.table[i]).epsilon(1e-12));

  // split output 0 of both sides into two labels, then group back
  BoxShape s3;
  s3.n_parties = 2;
  s3.outputs = {3, 3};
  s3.inputs = {2, 2};
  BoxN split = uniform_box(s3);
  for (double& t : split.table) t = 0.0;
  // each party independently relabels output 0 as 0 or 2 with equal odds
  const auto label = [](int out, int half) { return out == 0 ? (half ? 2 : 0) : 1; };
  const auto frac = [](int out) { return out == 0 ? 0.5 : 1.0; };
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const double v = base.at({a, b}, {x, y});
          for (int i = 0; i < (a == 0 ? 2 : 1); ++i)
            for (int j = 0; j < (b == 0 ? 2 : 1); ++j)
              split.at({label(a, i), label(b, j)}, {x, y}) += v * frac(a) * frac(b);
        }
  REQUIRE(split.valid(1e-9));
  REQUIRE(split.nonsignalling(1e-9));

  const BoxN back = reduce_box(split, {0, 2}, {0, 2});
  REQUIRE(back.shape == base.shape);
  for (long i = 0; i < base.shape.size(); ++i)
    CHECK(std::abs(back.table[i] - base.table[i]) < 1e-9);
  CHECK(back.nonsignalling(1e-9));

  // and the verdicts survive the round trip
  const Verdict v0 = common_certainty_of_disagreement(AgreementBox::from_box(base));
  const Verdict v1 = common_certainty_of_disagreement(AgreementBox::from_box(back));
  CHECK(v0.applicable == v1.applicable);
  CHECK(v0.value == v1.value);
}

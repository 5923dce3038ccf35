#include "qnet/agreement.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qnet {

namespace {

BoxShape scene_shape() {
  BoxShape s;
  s.n_parties = 2;
  s.outputs = {2, 2};
  s.inputs = {2, 2};
  return s;
}

double entry(const BoxN& b, int a0, int b0, int x, int y) {
  return b.at({a0, b0}, {x, y});
}

// update the smallest decisive margin seen so far
void track(double& margin, double m) { margin = std::min(margin, std::abs(m)); }

bool contains(const std::vector<int>& set, int v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

}  // namespace

AgreementBox AgreementBox::from_box(const BoxN& b, double tol) {
  if (!(b.shape == scene_shape()))
    throw std::invalid_argument("AgreementBox: expected a 2-input 2-output two-party box");
  if (!b.valid(1e-6))
    throw std::invalid_argument("AgreementBox: table is not a probability distribution");

  AgreementBox ab;
  ab.box = b;
  ab.perfectly_correlated =
      entry(b, 0, 1, 1, 1) <= tol && entry(b, 1, 0, 1, 1) <= tol;

  const double mass_a0 = entry(b, 0, 0, 0, 1) + entry(b, 0, 1, 0, 1);
  const double mass_b0 = entry(b, 0, 0, 1, 0) + entry(b, 1, 0, 1, 0);
  ab.q_defined = mass_a0 > tol && mass_b0 > tol;
  if (ab.q_defined) {
    ab.q_A = entry(b, 0, 1, 0, 1) / mass_a0;
    ab.q_B = entry(b, 1, 0, 1, 0) / mass_b0;
  }
  return ab;
}

CertaintySets certainty_sets(const AgreementBox& ab, double tol) {
  if (!ab.q_defined)
    throw std::invalid_argument("certainty_sets: conditioning event has zero probability");
  const BoxN& b = ab.box;

  // an output with no mass under the conditioning input certifies nothing
  std::vector<int> alpha, beta;
  for (int a = 0; a < 2; ++a) {
    const double mass = entry(b, a, 0, 0, 1) + entry(b, a, 1, 0, 1);
    if (mass > tol && std::abs(entry(b, a, 1, 0, 1) / mass - ab.q_A) <= tol)
      alpha.push_back(a);
  }
  for (int bo = 0; bo < 2; ++bo) {
    const double mass = entry(b, 0, bo, 1, 0) + entry(b, 1, bo, 1, 0);
    if (mass > tol && std::abs(entry(b, 1, bo, 1, 0) / mass - ab.q_B) <= tol)
      beta.push_back(bo);
  }

  CertaintySets cs;
  cs.alpha.push_back(alpha);
  cs.beta.push_back(beta);
  for (int n = 0;; ++n) {
    std::vector<int> na, nb;
    for (int a : cs.alpha[n]) {
      const double mass = entry(b, a, 0, 0, 0) + entry(b, a, 1, 0, 0);
      if (mass <= tol) continue;
      double inside = 0;
      for (int bo : cs.beta[n]) inside += entry(b, a, bo, 0, 0);
      if (inside / mass >= 1 - tol) na.push_back(a);
    }
    for (int bo : cs.beta[n]) {
      const double mass = entry(b, 0, bo, 0, 0) + entry(b, 1, bo, 0, 0);
      if (mass <= tol) continue;
      double inside = 0;
      for (int a : cs.alpha[n]) inside += entry(b, a, bo, 0, 0);
      if (inside / mass >= 1 - tol) nb.push_back(bo);
    }
    if (na == cs.alpha[n] && nb == cs.beta[n]) {
      cs.fixpoint_index = n;
      break;
    }
    cs.alpha.push_back(na);
    cs.beta.push_back(nb);
    if (n > 4)  // two outputs stabilize by n=2; anything later is a bug
      throw std::logic_error("certainty_sets: iteration failed to stabilize");
  }
  return cs;
}

Verdict common_certainty_of_disagreement(const AgreementBox& ab, double tol) {
  Verdict v;
  if (!ab.perfectly_correlated) {
    v.reason = "outputs at x=y=1 are not perfectly correlated";
    return v;
  }
  if (!ab.q_defined) {
    v.reason = "conditioning event for q_A or q_B has zero probability";
    return v;
  }
  if (entry(ab.box, 0, 0, 0, 0) <= tol) {
    v.reason = "the event a=b=0 at x=y=0 never obtains";
    return v;
  }
  v.applicable = true;

  double margin = std::numeric_limits<double>::infinity();
  track(margin, entry(ab.box, 0, 1, 1, 1));
  track(margin, entry(ab.box, 1, 0, 1, 1));
  track(margin, ab.q_A - ab.q_B);

  const CertaintySets cs = certainty_sets(ab, tol);
  const auto& alpha_fix = cs.alpha[cs.fixpoint_index];
  const auto& beta_fix = cs.beta[cs.fixpoint_index];

  v.value = std::abs(ab.q_A - ab.q_B) > tol && contains(alpha_fix, 0) &&
            contains(beta_fix, 0);
  v.boundary = margin > tol && margin <= 10 * tol;
  v.reason = v.value ? "q_A != q_B and (0,0,0,0) stays in both certainty sets"
                     : "no persistent disagreement at the all-zero event";
  return v;
}

Verdict singular_disagreement(const AgreementBox& ab, double tol) {
  Verdict v;
  if (!ab.perfectly_correlated) {
    v.reason = "outputs at x=y=1 are not perfectly correlated";
    return v;
  }
  if (!ab.q_defined) {
    v.reason = "conditioning event for q_A or q_B has zero probability";
    return v;
  }
  if (entry(ab.box, 0, 0, 0, 0) <= tol) {
    v.reason = "the event a=b=0 at x=y=0 never obtains";
    return v;
  }
  v.applicable = true;

  double margin = std::numeric_limits<double>::infinity();
  track(margin, 1 - ab.q_A);
  track(margin, ab.q_B);
  track(margin, entry(ab.box, 0, 0, 0, 0));

  v.value = std::abs(ab.q_A - 1) <= tol && std::abs(ab.q_B) <= tol;
  v.boundary = margin > tol && margin <= 10 * tol;
  v.reason = v.value ? "q_A = 1 and q_B = 0" : "assignments are not maximally opposed";
  return v;
}

Verdict tsirelson_reject(const AgreementBox& ab, double tol) {
  const BoxN& b = ab.box;
  const auto corr = [&](int x, int y) {
    return entry(b, 0, 0, x, y) + entry(b, 1, 1, x, y) - entry(b, 0, 1, x, y) -
           entry(b, 1, 0, x, y);
  };
  Verdict v;
  v.applicable = true;
  const double c00 = corr(0, 0), c01 = corr(0, 1), c10 = corr(1, 0), c11 = corr(1, 1);

  double margin = std::numeric_limits<double>::infinity();
  track(margin, 1 - c00);
  track(margin, 1 - c11);
  track(margin, c01 - c10);

  v.value = c00 >= 1 - tol && c11 >= 1 - tol && std::abs(c01 - c10) > tol;
  v.boundary = margin > tol && margin <= 10 * tol;
  v.reason = v.value
                 ? "perfect c00, c11 force c01 = c10, but the cross correlations differ"
                 : "inconclusive: the perfect-correlation obstruction does not trigger";
  return v;
}

Verdict quantum_void_pattern(const AgreementBox& ab, double tol) {
  const BoxN& b = ab.box;
  Verdict v;
  v.applicable = true;
  int zeros = 0;
  double margin = std::numeric_limits<double>::infinity();
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int bo = 0; bo < 2; ++bo) {
          if ((a ^ bo ^ 1) != (x & y)) continue;
          const double p = entry(b, a, bo, x ^ 1, y);  // relabeled input
          track(margin, p);
          if (p < tol) ++zeros;
        }
  v.value = zeros >= 4;
  v.boundary = margin > tol && margin <= 10 * tol;
  v.reason = v.value ? "four vanishing entries in the void pattern"
                     : "fewer than four vanishing entries in the void pattern";
  return v;
}

namespace {

BoxN box_from_rows(const double rows[4][4], const char* who) {
  BoxN b;
  b.shape = scene_shape();
  b.table.assign(16, 0.0);
  for (int xy = 0; xy < 4; ++xy)
    for (int ab = 0; ab < 4; ++ab) {
      double val = rows[xy][ab];
      if (val < -1e-12)
        throw std::invalid_argument(std::string(who) +
                                    ": parameters give a negative probability");
      b.table[xy * 4 + ab] = std::max(val, 0.0);
    }
  return b;
}

void fill_nsccd(double r, double s, double t, double u, double rows[4][4]) {
  const double init[4][4] = {
      {r, 0, 0, 1 - r},
      {r - s, s, -r + t + s, 1 - t - s},
      {t - u, u, r - t + u, 1 - r - u},
      {t, 0, 0, 1 - t},
  };
  std::copy(&init[0][0], &init[0][0] + 16, &rows[0][0]);
}

void fill_nssd(double r, double s, double t, double u, double rows[4][4]) {
  const double init[4][4] = {
      {s, t, 1 - s - u - t, u},
      {0, s + t, r, 1 - s - t - r},
      {1 - u - t, u + t + r - 1, 0, 1 - r},
      {r, 0, 0, 1 - r},
  };
  std::copy(&init[0][0], &init[0][0] + 16, &rows[0][0]);
}

bool rows_nonneg(const double rows[4][4]) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (rows[i][j] < -1e-12) return false;
  return true;
}

}  // namespace

BoxN nsccd_box(double r, double s, double t, double u) {
  double rows[4][4];
  fill_nsccd(r, s, t, u, rows);
  return box_from_rows(rows, "nsccd_box");
}

bool nsccd_params_valid(double r, double s, double t, double u) {
  double rows[4][4];
  fill_nsccd(r, s, t, u, rows);
  return rows_nonneg(rows);
}

BoxN nssd_box(double r, double s, double t, double u) {
  double rows[4][4];
  fill_nssd(r, s, t, u, rows);
  return box_from_rows(rows, "nssd_box");
}

bool nssd_params_valid(double r, double s, double t, double u) {
  double rows[4][4];
  fill_nssd(r, s, t, u, rows);
  return rows_nonneg(rows);
}

BoxN pr_box(PrConvention conv) {
  BoxN b;
  b.shape = scene_shape();
  b.table.assign(16, 0.0);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int bo = 0; bo < 2; ++bo) {
          const int target = conv == PrConvention::xor_game ? bo : (y == 1 ? bo ^ 1 : bo);
          if ((a ^ target) == (x & y)) b.at({a, bo}, {x, y}) = 0.5;
        }
  return b;
}

OntModel2x2 ont_model_from_box(const BoxN& b, double tol) {
  if (!(b.shape == scene_shape()))
    throw std::invalid_argument("ont_model_from_box: expected a 2x2-scene box");

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(16, 16);
  Eigen::VectorXd rhs(16);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int bo = 0; bo < 2; ++bo) {
          const long row = b.shape.index({a, bo}, {x, y});
          rhs(row) = b.table[row];
          for (int w = 0; w < 16; ++w) {
            const int a0 = (w >> 3) & 1, a1 = (w >> 2) & 1;
            const int b0 = (w >> 1) & 1, b1 = w & 1;
            if ((x == 0 ? a0 : a1) == a && (y == 0 ? b0 : b1) == bo) m(row, w) = 1;
          }
        }

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(m);
  const Eigen::VectorXd omega = cod.solve(rhs);  // minimum-norm solution

  OntModel2x2 model;
  model.residual = (m * omega - rhs).cwiseAbs().maxCoeff();
  model.solved = model.residual <= tol;
  if (model.solved)
    model.quasi_prob.assign(omega.data(), omega.data() + 16);
  return model;
}

BoxN box_from_ont_model(const std::vector<double>& quasi_prob) {
  if (quasi_prob.size() != 16)
    throw std::invalid_argument("box_from_ont_model: sixteen instruction weights required");
  BoxN b;
  b.shape = scene_shape();
  b.table.assign(16, 0.0);
  for (int w = 0; w < 16; ++w) {
    const int a0 = (w >> 3) & 1, a1 = (w >> 2) & 1;
    const int b0 = (w >> 1) & 1, b1 = w & 1;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        b.at({x == 0 ? a0 : a1, y == 0 ? b0 : b1}, {x, y}) += quasi_prob[w];
  }
  return b;
}

BoxN reduce_box(const BoxN& p, const std::vector<int>& alpha_set,
                const std::vector<int>& beta_set) {
  if (p.shape.n_parties != 2 || p.shape.inputs[0] != 2 || p.shape.inputs[1] != 2)
    throw std::invalid_argument("reduce_box: expected a two-party box with 2 inputs each");
  if (alpha_set.empty() || beta_set.empty())
    throw std::invalid_argument("reduce_box: grouping sets must be nonempty");

  const int na = p.shape.outputs[0], nb = p.shape.outputs[1];
  const auto chi_a = [&](int tilde, int x, int a) {
    const bool zero = x == 0 ? contains(alpha_set, a) : a != 1;
    return (tilde == 0) == zero;
  };
  const auto chi_b = [&](int tilde, int y, int b) {
    const bool zero = y == 0 ? contains(beta_set, b) : b != 1;
    return (tilde == 0) == zero;
  };

  BoxN out;
  out.shape = scene_shape();
  out.table.assign(16, 0.0);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int ta = 0; ta < 2; ++ta)
        for (int tb = 0; tb < 2; ++tb) {
          double sum = 0;
          for (int a = 0; a < na; ++a)
            for (int b = 0; b < nb; ++b)
              if (chi_a(ta, x, a) && chi_b(tb, y, b)) sum += p.at({a, b}, {x, y});
          out.at({ta, tb}, {x, y}) = sum;
        }
  return out;
}

}  // namespace qnet

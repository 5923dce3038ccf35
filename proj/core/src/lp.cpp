#include "qnet/lp.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qnet {

namespace {

constexpr double kPivTol = 1e-9;
constexpr double kCostTol = 1e-10;
constexpr long kMaxIter = 200000;

// One canonical-tableau phase. Dantzig pricing (most negative reduced cost)
// until the objective stops moving, then Bland's rule (smallest eligible
// index), which cannot cycle. Row 0 is the reduced-cost row of a
// minimization; rows 1..m the constraints.
bool run_phase(Eigen::MatrixXd& T, std::vector<int>& basis, long n_enterable, bool* unbounded) {
  const long m = T.rows() - 1;
  const long rhs = T.cols() - 1;
  *unbounded = false;
  double last_obj = T(0, rhs);
  long stalled = 0;
  bool bland = false;
  for (long it = 0; it < kMaxIter; ++it) {
    if (!bland) {
      // degenerate pivots leave the objective in place; a long run of them
      // risks cycling, so hand over to Bland for the rest of the phase
      if (T(0, rhs) > last_obj + kCostTol) {
        last_obj = T(0, rhs);
        stalled = 0;
      } else if (++stalled > 100) {
        bland = true;
      }
    }
    long enter = -1;
    if (bland) {
      for (long j = 0; j < n_enterable; ++j)
        if (T(0, j) < -kCostTol) {
          enter = j;
          break;
        }
    } else {
      double most = -kCostTol;
      for (long j = 0; j < n_enterable; ++j)
        if (T(0, j) < most) {
          most = T(0, j);
          enter = j;
        }
    }
    if (enter < 0) return true;
    long leave = -1;
    double best = 0.0;
    for (long i = 1; i <= m; ++i) {
      if (T(i, enter) <= kPivTol) continue;
      const double ratio = T(i, rhs) / T(i, enter);
      if (leave < 0 || ratio < best - 1e-12 ||
          (ratio < best + 1e-12 && basis[i - 1] < basis[leave - 1])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) {
      *unbounded = true;
      return true;
    }
    T.row(leave) /= T(leave, enter);
    for (long i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = T(i, enter);
      if (f != 0.0) T.row(i) -= f * T.row(leave);
    }
    basis[static_cast<size_t>(leave - 1)] = static_cast<int>(enter);
  }
  return false;
}

}  // namespace

LpResult simplex_max(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     const Eigen::VectorXd& c) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m || c.size() != n) throw std::invalid_argument("simplex_max: size mismatch");

  LpResult res;
  // objective row on top, artificial identity after the real columns
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  std::vector<int> basis(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double s = b(i) < 0 ? -1.0 : 1.0;
    T.block(i + 1, 0, 1, n) = s * A.row(i);
    T(i + 1, n + i) = 1.0;
    T(i + 1, n + m) = s * b(i);
    basis[static_cast<size_t>(i)] = n + i;
  }

  // phase 1: minimize the artificial sum; canonicalize by subtracting the rows
  T.row(0).setZero();
  T.block(0, n, 1, m).setOnes();
  for (int i = 1; i <= m; ++i) T.row(0) -= T.row(i);

  bool unbounded = false;
  if (!run_phase(T, basis, n + m, &unbounded)) {
    res.status = "stalled";
    return res;
  }
  if (T(0, n + m) < -1e-7) {
    res.status = "infeasible";
    return res;
  }

  // pivot leftover artificials onto real columns; an all-zero row is a
  // redundant constraint and can keep its artificial (real columns in that
  // row are zero, so phase-2 pivots never move it off zero)
  for (int i = 1; i <= m; ++i) {
    if (basis[static_cast<size_t>(i - 1)] < n) continue;
    int piv = -1;
    for (int j = 0; j < n; ++j)
      if (std::abs(T(i, j)) > kPivTol) {
        piv = j;
        break;
      }
    if (piv < 0) continue;
    T.row(i) /= T(i, piv);
    for (int r = 0; r <= m; ++r) {
      if (r == i) continue;
      const double f = T(r, piv);
      if (f != 0.0) T.row(r) -= f * T.row(i);
    }
    basis[static_cast<size_t>(i - 1)] = piv;
  }

  // phase 2: minimize -c'x over the real columns only
  T.row(0).setZero();
  T.block(0, 0, 1, n) = -c.transpose();
  for (int i = 1; i <= m; ++i) {
    const int bj = basis[static_cast<size_t>(i - 1)];
    const double cb = bj < n ? -c(bj) : 0.0;
    if (cb != 0.0) T.row(0) -= cb * T.row(i);
  }
  if (!run_phase(T, basis, n, &unbounded)) {
    res.status = "stalled";
    return res;
  }
  if (unbounded) {
    res.status = "unbounded";
    return res;
  }

  res.x = Eigen::VectorXd::Zero(n);
  for (int i = 1; i <= m; ++i)
    if (basis[static_cast<size_t>(i - 1)] < n)
      res.x(basis[static_cast<size_t>(i - 1)]) = T(i, n + m);
  res.value = c.dot(res.x);
  res.optimal = true;
  res.status = "optimal";
  return res;
}

}  // namespace qnet

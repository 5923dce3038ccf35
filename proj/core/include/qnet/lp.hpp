#pragma once

// Small dense linear programs in standard form. Sized for the polytopes this
// library touches (a few hundred variables); the pivot rule is deterministic
// (steepest cost, falling back to Bland when the objective stalls), so
// repeated runs give byte-identical results.

#include <Eigen/Dense>

#include <string>

namespace qnet {

struct LpResult {
  bool optimal = false;
  double value = 0.0;  // c'x at the optimum
  Eigen::VectorXd x;
  std::string status;  // optimal | infeasible | unbounded | stalled
};

// maximize c'x subject to A x = b, x >= 0
LpResult simplex_max(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     const Eigen::VectorXd& c);

}  // namespace qnet

#include "qnet/hardy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qnet/states.hpp"

namespace qnet {

namespace {

void check_params(double l0, double l1, double alpha) {
  if (!(l0 > 0) || !(l1 > 0))
    throw std::invalid_argument("hardy: both leading Schmidt coefficients must be positive");
  if (std::abs(l0 - l1) < 1e-12)
    throw std::invalid_argument("hardy: equal Schmidt coefficients admit no paradox");
  if (!(alpha > 0) || !(alpha < std::numbers::pi / 2))
    throw std::invalid_argument("hardy: alpha must lie strictly inside (0, pi/2)");
}

CVec qubit_ket(cxd c0, cxd c1, int d) {
  CVec v = CVec::Zero(d);
  v(0) = c0;
  v(1) = c1;
  return v.normalized();
}

}  // namespace

std::vector<std::vector<std::vector<CMat>>> hardy_povms(double l0, double l1, double alpha,
                                                        double delta, int d) {
  check_params(l0, l1, alpha);
  if (d < 2) throw std::invalid_argument("hardy: local dimension must be at least 2");

  const double c = std::cos(alpha), s = std::sin(alpha);
  const cxd ph = std::exp(cxd(0, -delta));  // kets conjugate the published bras
  const CMat id = CMat::Identity(d, d);

  // the four measurement directions; each pair's other effect is the
  // complement, which realizes the orthogonal-plus-identity form
  const CVec e00 = qubit_ket(c, ph * s, d);
  const CVec e11 = qubit_ket(l0 * c, l1 * ph * s, d);
  const CVec f00 = qubit_ket(std::pow(l1, 1.5) * ph * s, -std::pow(l0, 1.5) * c, d);
  const CVec f11 = qubit_ket(std::sqrt(l1) * ph * s, -std::sqrt(l0) * c, d);

  CMat rest = CMat::Zero(d, d);  // identity on levels 2..d-1
  for (int i = 2; i < d; ++i) rest(i, i) = 1;

  const CMat E00 = e00 * e00.adjoint();
  const CMat E11 = e11 * e11.adjoint() + rest;
  const CMat F00 = f00 * f00.adjoint();
  const CMat F11 = f11 * f11.adjoint();

  return {
      {{E00, id - E00}, {id - E11, E11}},  // Alice, inputs 0 and 1
      {{F00, id - F00}, {id - F11, F11}},  // Bob
  };
}

double hardy_p0000(double l0, double l1, double alpha) {
  check_params(l0, l1, alpha);
  const double c2 = std::cos(alpha) * std::cos(alpha);
  const double s2 = std::sin(alpha) * std::sin(alpha);
  const double num = s2 * c2 * l0 * l1 * (l1 - l0) * (l1 - l0);
  return num / (l1 * l1 * l1 * s2 + l0 * l0 * l0 * c2);
}

BoxN hardy_box(const RVec& schmidt, double alpha, double delta) {
  const int d = static_cast<int>(schmidt.size());
  if (d < 2) throw std::invalid_argument("hardy_box: need at least two Schmidt coefficients");
  if (std::abs(schmidt.sum() - 1.0) > 1e-9)
    throw std::invalid_argument("hardy_box: Schmidt coefficients must sum to 1");
  for (int i = 0; i < d; ++i)
    if (schmidt(i) < -1e-12) throw std::invalid_argument("hardy_box: negative coefficient");

  CVec psi = CVec::Zero(static_cast<long>(d) * d);
  for (int i = 0; i < d; ++i)
    psi(pack_index({i, i}, {d, d})) = std::sqrt(std::max(schmidt(i), 0.0));

  const CMat rho = psi * psi.adjoint();
  return born_box(rho, {d, d}, hardy_povms(schmidt(0), schmidt(1), alpha, delta, d));
}

}  // namespace qnet

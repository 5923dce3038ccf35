#include "qnet/measures.hpp"

#include "qnet/states.hpp"

#include <cmath>
#include <stdexcept>

namespace qnet {

double geometric_measure_bs(const CVec& psi, const Dims& party_dims) {
  const int n = static_cast<int>(party_dims.size());
  if (n < 2) throw std::invalid_argument("geometric_measure_bs: need at least two parties");
  if (n > 20) throw std::invalid_argument("geometric_measure_bs: too many parties");
  CVec normalized = psi / psi.norm();
  double max_l1 = 0.0;
  // half of the proper bipartitions is enough; fix party 0 on the left side
  for (unsigned rest = 0; rest + 1 < (1u << (n - 1)); ++rest) {
    unsigned mask = 1u | (rest << 1);
    std::vector<int> left;
    for (int k = 0; k < n; ++k)
      if (mask >> k & 1) left.push_back(k);
    Schmidt s = schmidt(normalized, party_dims, left);
    max_l1 = std::max(max_l1, s.coeffs(0));
  }
  return 1.0 - max_l1;
}

double robustness_pure_bipartite(const CVec& psi, int d_left, int d_right) {
  if (psi.size() != static_cast<long>(d_left) * d_right)
    throw std::invalid_argument("robustness_pure_bipartite: dimension mismatch");
  Schmidt s = schmidt(psi / psi.norm(), {d_left, d_right}, {0});
  double acc = s.coeffs.cwiseMax(0.0).cwiseSqrt().sum();
  return acc * acc - 1.0;
}

bool bsp_transform_feasible(double g, double r, double tol) {
  if (g < 0 || g >= 1) throw std::invalid_argument("bsp_transform_feasible: need 0 <= g < 1");
  return r <= g / (1.0 - g) + tol;
}

double ghz_sym_fs_witness(const GhzSymCoords& c) {
  return -c.x - std::sqrt(3.0) / 6.0 * c.y + 1.0 / 8.0;
}

double ghz_sym_bs_witness(const GhzSymCoords& c) {
  return -c.x - std::sqrt(3.0) / 2.0 * c.y + 3.0 / 8.0;
}

FspBspDemo fsp_not_bsp_demo() {
  // the map sends X to tr(W X) rho_hi + tr((1-W) X) rho_lo with the W-state
  // projector as the effect; its output only depends on the overlap
  const CMat rho_hi = ghz_symmetric_xy(5.0 / 16.0, std::sqrt(3.0) / 4.0).density();
  const CMat rho_lo = ghz_symmetric_xy(-1.0 / 8.0, 0.0).density();
  auto image = [&](double overlap) {
    CMat out = overlap * rho_hi + (1.0 - overlap) * rho_lo;
    return ghz_sym_coords(out);
  };

  FspBspDemo demo;
  demo.fs_overlap = 4.0 / 9.0;  // known maximum of the W overlap over product states
  CVec psi = (basis_ket(8, 1) + basis_ket(8, 2)) / std::sqrt(2.0);  // (|001>+|010>)/sqrt2
  CVec w = w_state();
  demo.bs_overlap = std::norm((w.adjoint() * psi)(0));
  demo.fs_image = image(demo.fs_overlap);
  demo.bs_image = image(demo.bs_overlap);
  demo.fs_witness_at_fs_image = ghz_sym_fs_witness(demo.fs_image);
  demo.bs_witness_at_bs_image = ghz_sym_bs_witness(demo.bs_image);
  demo.fs_witness_at_origin = ghz_sym_fs_witness({0.0, 0.0});
  return demo;
}

double threshold_entanglement(int d) {
  if (d < 2) throw std::invalid_argument("threshold_entanglement: need d >= 2");
  return 1.0 / (d + 1);
}

double threshold_lambda_bisep(int d) {
  if (d < 2) throw std::invalid_argument("threshold_lambda_bisep: need d >= 2");
  return ((1.0 + std::sqrt(2.0)) * d - 1.0) / (double(d) * d + 2.0 * d - 1.0);
}

double threshold_lambda_gme_uniform() { return 1.0 / std::sqrt(3.0); }

double threshold_triangle_bisep(int d) {
  if (d < 2) throw std::invalid_argument("threshold_triangle_bisep: need d >= 2");
  return 3.0 / (3.0 + 2.0 * d);
}

double threshold_triangle_gme() { return (2.0 * std::sqrt(5.0) - 3.0) / 3.0; }

double threshold_bisep_fidelity(int n) {
  if (n < 2) throw std::invalid_argument("threshold_bisep_fidelity: need n >= 2");
  return 0.5 * (n - 1.0) * (n - 1.0);
}

double threshold_complete_graph_gme(int n) {
  if (n < 2) throw std::invalid_argument("threshold_complete_graph_gme: need n >= 2");
  return 1.0 - 4.0 / (3.0 * n);
}

double threshold_steering_bilocal(int d) {
  if (d < 2) throw std::invalid_argument("threshold_steering_bilocal: need d >= 2");
  return (3.0 * d - 1.0) * std::pow(d - 1.0, d - 1) / ((d + 1.0) * std::pow(double(d), d));
}

int tree_min_edges(int d, double p) {
  if (p < 0 || p >= 1) throw std::invalid_argument("tree_min_edges: need 0 <= p < 1");
  double bound = d * p / (1.0 - p);
  int k = static_cast<int>(std::ceil(bound - 1e-12));
  return std::max(k, 1);
}

CompleteGraphCheck complete_graph_gme(int n, double p) {
  CompleteGraphCheck out;
  out.pair_fidelity = fidelity(isotropic(2, p), max_entangled_proj(2));
  out.protocol_sum = 0.5 * n * (n - 1.0) * out.pair_fidelity;
  out.bound = threshold_bisep_fidelity(n);
  out.gme = out.protocol_sum > out.bound;
  return out;
}

double star_filter_value_formula(int d, double p) {
  return (d - 1.0 - p * (double(d) * d - 1.0)) / (double(d) * d);
}

double star_filter_value(int n, int d, double p) {
  if (n < 3) throw std::invalid_argument("star_filter_value: need n >= 3");
  NetworkGraph g = NetworkGraph::star(n, EdgeState::isotropic_edge(d, p),
                                      EdgeState::isotropic_edge(d, 1.0));
  NetworkState ns = network_state(g);
  // Alice holds n-1 particles; project them onto the aligned subspace
  long da = ns.party_dims[0];
  CMat filter = CMat::Zero(da, da);
  Dims alice_dims(n - 1, d);
  for (int i = 0; i < d; ++i) {
    std::vector<int> digits(n - 1, i);
    long idx = pack_index(digits, alice_dims);
    filter(idx, idx) = 1.0;
  }
  std::vector<CMat> ops(n);
  ops[0] = filter;
  auto [tau, norm] = apply_local_filter(ns, ops);
  (void)norm;
  // the witness on the filtered state: I/d minus the projector onto the GHZ
  // state in which all 2(n-1) particles are aligned
  CVec aligned = ghz(2 * (n - 1), d);
  cxd overlap = (aligned.adjoint() * tau * aligned)(0);
  return 1.0 / d - overlap.real();
}

}  // namespace qnet
